"""Check records shared by every suite."""
from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Any


@dataclass
class CheckRecord:
    suite: str
    id: str
    params: dict
    status: str
    witness: str | None = None
    elapsed_ms: float | None = None
    note: str | None = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"


class Timer:
    def __init__(self):
        self.t0 = time.perf_counter()

    def ms(self) -> float:
        return round((time.perf_counter() - self.t0) * 1000, 3)


def record(suite: str, id: str, params: dict, diff: Any, timer: Timer | None = None,
           note: str | None = None) -> CheckRecord:
    """pass iff diff is falsy; a nonzero diff becomes the witness text."""
    ok = not diff
    witness = None if ok else (diff if isinstance(diff, str) else str(diff))
    return CheckRecord(suite, id, dict(params), "pass" if ok else "fail", witness,
                       timer.ms() if timer else None, note)


def jsonable(x: Any) -> Any:
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    return str(x)
