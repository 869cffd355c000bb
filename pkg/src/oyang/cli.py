"""Command-line driver: `oyang check --suite <name>`.

Each suite expands into a list of tasks, one per grid block. Tasks are plain
tuples so they can be shipped to worker processes; results come back in task
order, which keeps reports byte-identical for a fixed seed.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from fractions import Fraction
from importlib import resources
from typing import Any, Callable

import jsonschema

from .exact_core import rat
from .records import CheckRecord, jsonable

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    import tomli as tomllib

SUITES = ("base", "oy", "series", "omega", "pochhammer", "cd", "dickson-rtt", "dickson-comm", "phi",
          "eval-auto", "qdet", "ybe", "fusion", "fused-rtt", "hermite-ops", "polarized", "ternary",
          "ternary-table", "trace-epsilon", "yt", "sl2-span")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    """Run parameters. None means the suite's own default grid."""

    suite: str = "all"
    n: int | None = None
    rmax: int | None = None
    smax: int | None = None
    N: int | None = None
    alpha: Fraction | None = None
    beta: Fraction | None = None
    q: Fraction | None = None
    c: Fraction | None = None
    h: Fraction | None = None
    samples: int | None = None
    seed: int = 0
    jobs: int = 1
    out: str | None = None
    timings: bool = False
    negative_controls: bool = False

    def __post_init__(self):
        if self.suite != "all" and self.suite not in SUITES:
            raise ConfigError(f"unknown suite {self.suite!r}")
        for name in ("n", "rmax", "smax", "N", "samples", "seed", "jobs"):
            v = getattr(self, name)
            if v is None:
                continue
            if isinstance(v, bool) or not isinstance(v, int):
                raise ConfigError(f"{name} must be an integer")
            if v < (1 if name in ("n", "jobs", "samples") else 0):
                raise ConfigError(f"{name} out of range: {v}")
        for name in ("alpha", "beta", "q", "c", "h"):
            v = getattr(self, name)
            if v is None:
                continue
            if not isinstance(v, (str, int, Fraction)) or isinstance(v, bool):
                raise ConfigError(f"{name} must be a rational written as a string, got {v!r}")
            try:
                setattr(self, name, rat(v))
            except (ValueError, TypeError, ZeroDivisionError) as exc:
                raise ConfigError(f"{name}: {exc}") from exc

    def public(self) -> dict:
        skip = {"out", "jobs", "timings"}
        return {f.name: jsonable(getattr(self, f.name)) for f in fields(self) if f.name not in skip}


def _pick(value, default):
    return default if value is None else value


# --------------------------------------------------------------- tasks

def _fam(desc: dict):
    from .orthopoly import make_family
    desc = dict(desc)
    return make_family(desc.pop("kind"), **desc)


def _t_base(n, rmax, smax, perturb):
    from .relations import check_base_identity
    return check_base_identity(n, rmax, smax, perturb)


def _t_oy(fam, n, rmax, smax, perturb):
    from .relations import check_oy_relations
    return check_oy_relations(_fam(fam), n, rmax, smax, perturb)


def _t_w(fam, M, perturb):
    from .relations import check_w_machinery
    return check_w_machinery(_fam(fam), M, perturb=perturb)


def _t_series(fam, n, N, perturb):
    from .relations import check_series_relation
    return check_series_relation(_fam(fam), n, N, perturb)


def _t_omega(fam, n, N, perturb):
    from .relations import check_omega
    return check_omega(_fam(fam), n, N, perturb)


def _t_poch(q, n, rmax, smax, N, perturb):
    from .relations import check_pochhammer
    return check_pochhammer(q, n, rmax, smax, N, perturb=perturb)


def _t_qone(n, rmax, smax, perturb):
    from .relations import check_q_one_limit
    return check_q_one_limit(n, rmax, smax, perturb)


def _t_cd(fam, n, n_sum, smax, perturb):
    from .relations import check_cd
    return check_cd(_fam(fam), n, n_sum, smax, perturb)


def _t_drtt(beta, n, pairs, perturb):
    from .dickson import check_rtt_eval
    return check_rtt_eval(beta, n, pairs, perturb)


def _t_dcomm(alpha, beta, n, rmax, smax, perturb):
    from .dickson import check_commutation_formula
    return check_commutation_formula(alpha, beta, n, rmax, smax, perturb)


def _t_phi(beta, c, N, perturb):
    from .dickson import check_phi_coefficients, check_phi_equation
    return check_phi_coefficients(beta, c, N, perturb) + check_phi_equation(beta, c, N, perturb)


def _t_phi_group(beta, c, d, N, perturb):
    from .dickson import check_phi_group
    return check_phi_group(beta, c, d, N, perturb)


def _t_eval(beta, alpha, n, N, f, B, samples, perturb):
    from .dickson import check_eval_hom_and_autos
    return check_eval_hom_and_autos(beta, n, N, f, B, samples, alpha=alpha, perturb=perturb)


def _t_qdet(beta, n, s_samples, pairs, perturb):
    from .dickson import check_qdet_properties
    return check_qdet_properties(beta, n, s_samples, pairs, perturb)


def _t_ybe(kind, n, triples, perturb):
    from .rmatrix import check_ybe
    return check_ybe(kind, n, triples, perturb)


def _t_fusion(beta, n, m, s0, perturb):
    from .rmatrix import check_fusion
    return check_fusion(beta, n, m, s0, perturb)


def _t_fused_rtt(n, m, s_list, perturb):
    from .rmatrix import check_fused_rtt
    return check_fused_rtt(n, m, s_list, perturb)


def _t_hermite(n, perturb):
    from .rmatrix import check_hermite_ops
    return check_hermite_ops(n=n, perturb=perturb)


def _t_polarized(n, A, B, rmax, N, perturb):
    from .polarization import check_polarized_suite
    return check_polarized_suite(n, A, B, rmax, N, perturb=perturb)


def _alg(name):
    from .polarization import catalog_algebra, direct_sum
    if "+" in name:
        return direct_sum(*(catalog_algebra(x) for x in name.split("+")))
    return catalog_algebra(name)


def _t_ternary(names, perturb):
    from .polarization import check_ternary_builds
    return check_ternary_builds([_alg(x) for x in names], perturb)


def _t_table(perturb):
    from .polarization import check_ternary_table
    return check_ternary_table(perturb=perturb)


def _t_trace(name, perturb):
    from .polarization import check_trace_and_epsilon
    return check_trace_and_epsilon(_alg(name), perturb)


def _t_yt(name, rmax, hs, uv, perturb):
    from .polarization import check_yt_suite
    return check_yt_suite(_alg(name), rmax, hs, uv, perturb)


def _t_sl2(rmax, perturb):
    from .polarization import check_sl2_span
    return check_sl2_span(rmax, perturb)


TASKS: dict[str, Callable] = {fn.__name__: fn for fn in (
    _t_base, _t_oy, _t_w, _t_series, _t_omega, _t_poch, _t_qone, _t_cd, _t_drtt, _t_dcomm, _t_phi,
    _t_phi_group, _t_eval, _t_qdet, _t_ybe, _t_fusion, _t_fused_rtt, _t_hermite, _t_polarized,
    _t_ternary, _t_table, _t_trace, _t_yt, _t_sl2)}

THREE_TERM = ({"kind": "monomial"}, {"kind": "hermite"},
              *({"kind": "dickson", "alpha": a, "beta": b} for a in (0, 1, 2) for b in (1, 2)),
              {"kind": "nonorthogonal", "a": 2})


def _rand_points(rng: random.Random, count: int, avoid: set) -> list[Fraction]:
    out: list[Fraction] = []
    while len(out) < count:
        x = Fraction(rng.randint(-30, 30), rng.randint(1, 4))
        if x not in avoid and x not in out:
            out.append(x)
    return out


def _rand_pairs(rng: random.Random, count: int, bad: Callable[[Fraction, Fraction], bool]) -> list:
    out: list = []
    while len(out) < count:
        a, b = _rand_points(rng, 2, set())
        if not bad(a, b):
            out.append((a, b))
    return out


def suite_tasks(suite: str, cfg: RunConfig) -> list[tuple[str, dict]]:
    """Grid blocks for one suite; `perturb` is filled in by the runner."""
    rng = random.Random(f"{cfg.seed}:{suite}")
    T: list[tuple[str, dict]] = []
    if suite == "base":
        for n in range(1, _pick(cfg.n, 3) + 1):
            T.append(("_t_base", dict(n=n, rmax=_pick(cfg.rmax, 4), smax=_pick(cfg.smax, 4))))
    elif suite == "oy":
        fams = THREE_TERM
        if cfg.alpha is not None or cfg.beta is not None:
            fams = ({"kind": "dickson", "alpha": _pick(cfg.alpha, 0), "beta": _pick(cfg.beta, 1)},)
        for fam in fams:
            for n in range(1, _pick(cfg.n, 2) + 1):
                T.append(("_t_oy", dict(fam=fam, n=n, rmax=_pick(cfg.rmax, 4), smax=_pick(cfg.smax, 4))))
            T.append(("_t_w", dict(fam=fam, M=_pick(cfg.N, 12))))
    elif suite == "series":
        for fam in ({"kind": "hermite"}, {"kind": "dickson", "alpha": _pick(cfg.alpha, 1), "beta": _pick(cfg.beta, 2)},
                    {"kind": "nonorthogonal", "a": 2}):
            T.append(("_t_series", dict(fam=fam, n=_pick(cfg.n, 2), N=_pick(cfg.N, 4))))
    elif suite == "omega":
        for fam in ({"kind": "hermite"}, {"kind": "dickson", "alpha": _pick(cfg.alpha, 1), "beta": _pick(cfg.beta, 2)}):
            for n in range(1, _pick(cfg.n, 2) + 1):
                T.append(("_t_omega", dict(fam=fam, n=n, N=_pick(cfg.N, 4))))
    elif suite == "pochhammer":
        qs = (cfg.q,) if cfg.q is not None else (Fraction(2), Fraction(1, 2), Fraction(3))
        n, rmax, smax = _pick(cfg.n, 2), _pick(cfg.rmax, 3), _pick(cfg.smax, 3)
        for q in qs:
            T.append(("_t_poch", dict(q=q, n=n, rmax=rmax, smax=smax, N=_pick(cfg.N, 6))))
        T.append(("_t_qone", dict(n=n, rmax=rmax, smax=smax)))
    elif suite == "cd":
        for fam in ({"kind": "hermite"}, {"kind": "dickson", "alpha": _pick(cfg.alpha, 1), "beta": _pick(cfg.beta, 2)}):
            T.append(("_t_cd", dict(fam=fam, n=_pick(cfg.n, 2), n_sum=2, smax=_pick(cfg.smax, 2))))
    elif suite == "dickson-rtt":
        beta = _pick(cfg.beta, Fraction(1))
        pairs = _rand_pairs(rng, _pick(cfg.samples, 5), lambda a, b: a == b)
        for n in range(2, _pick(cfg.n, 3) + 1):
            T.append(("_t_drtt", dict(beta=beta, n=n, pairs=pairs)))
    elif suite == "dickson-comm":
        alphas = (cfg.alpha,) if cfg.alpha is not None else (Fraction(0), Fraction(1))
        for a in alphas:
            T.append(("_t_dcomm", dict(alpha=a, beta=_pick(cfg.beta, Fraction(2)), n=_pick(cfg.n, 2),
                                      rmax=_pick(cfg.rmax, 3), smax=_pick(cfg.smax, 3))))
    elif suite == "phi":
        beta, N = _pick(cfg.beta, Fraction(1)), _pick(cfg.N, 8)
        cs = (cfg.c,) if cfg.c is not None else (Fraction(1), Fraction(1, 3), Fraction(0), Fraction(-2))
        for c in cs:
            T.append(("_t_phi", dict(beta=beta, c=c, N=N)))
        for c, d in ((Fraction(1), Fraction(2)), (Fraction(1, 2), Fraction(-1)), (Fraction(0), Fraction(3))):
            T.append(("_t_phi_group", dict(beta=beta, c=c, d=d, N=N)))
    elif suite == "eval-auto":
        samples = _rand_pairs(rng, _pick(cfg.samples, 5), lambda a, b: a == b or a == 0 or b == 0)
        T.append(("_t_eval", dict(beta=_pick(cfg.beta, Fraction(1)), alpha=_pick(cfg.alpha, Fraction(0)),
                                  n=_pick(cfg.n, 2), N=_pick(cfg.N, 6), f=[1, 1], B=[[1, 1], [0, 1]],
                                  samples=samples)))
    elif suite == "qdet":
        beta = _pick(cfg.beta, Fraction(1))
        nmax = _pick(cfg.n, 3)
        s2 = _rand_points(rng, _pick(cfg.samples, 10), {Fraction(k) for k in range(-1, nmax + 1)})
        pairs = [(Fraction(5), Fraction(2)), (Fraction(1, 2), Fraction(7)), (Fraction(-3), Fraction(4)),
                 (Fraction(7, 3), Fraction(-5)), (Fraction(9), Fraction(11, 2))]
        for n in range(2, nmax + 1):
            if n == 2:
                T.append(("_t_qdet", dict(beta=beta, n=2, s_samples=s2, pairs=pairs)))
            else:
                T.append(("_t_qdet", dict(beta=beta, n=n, s_samples=s2[:1], pairs=[(Fraction(7), Fraction(4))])))
    elif suite == "ybe":
        from .rmatrix import sample_triples
        count = _pick(cfg.samples, 10)
        for kind in ("hom", "beta"):
            T.append(("_t_ybe", dict(kind=kind, n=_pick(cfg.n, 2), triples=sample_triples(rng.randint(0, 10 ** 6), count))))
    elif suite == "fusion":
        for m in (2, 3):
            T.append(("_t_fusion", dict(beta=_pick(cfg.beta, Fraction(1)), n=_pick(cfg.n, 2), m=m, s0=Fraction(5))))
    elif suite == "fused-rtt":
        T.append(("_t_fused_rtt", dict(n=_pick(cfg.n, 2), m=3, s_list=[Fraction(7), Fraction(3), Fraction(-2)])))
    elif suite == "hermite-ops":
        T.append(("_t_hermite", dict(n=_pick(cfg.n, 2))))
    elif suite == "polarized":
        mats = {2: ([[1, 2], [0, -1]], [[0, 1], [3, 2]]),
                3: ([[1, 2, 0], [0, -1, 1], [2, 0, 1]], [[0, 1, 1], [3, 2, 0], [1, 0, -2]])}
        for n in range(2, min(_pick(cfg.n, 3), 3) + 1):
            A, B = mats[n]
            T.append(("_t_polarized", dict(n=n, A=A, B=B, rmax=_pick(cfg.rmax, 3), N=_pick(cfg.N, 8))))
    elif suite == "ternary":
        T.append(("_t_ternary", dict(names=["A2.1", "A3.1", "A3.2", "A3.3", "A3.4", "A3.5", "sl2", "so3",
                                            "A4.1", "A4.2", "sl2+A1"])))
    elif suite == "ternary-table":
        T.append(("_t_table", {}))
    elif suite == "trace-epsilon":
        for name in ("sl2", "so3", "A3.2", "A4.1"):
            T.append(("_t_trace", dict(name=name)))
    elif suite == "yt":
        hs = [cfg.h] if cfg.h is not None else [Fraction(1), Fraction(1, 2), Fraction(1, 100)]
        uv = _rand_pairs(rng, _pick(cfg.samples, 5), lambda a, b: a == b or a == 0 or b == 0)
        T.append(("_t_yt", dict(name="sl2", rmax=_pick(cfg.rmax, 3), hs=hs, uv=uv)))
    elif suite == "sl2-span":
        T.append(("_t_sl2", dict(rmax=_pick(cfg.rmax, 3))))
    return [(suite, name, kw) for name, kw in T]


def _run_task(task) -> list[CheckRecord]:
    suite, name, kw = task
    return TASKS[name](**kw)


def control_delta(seed: int, suite: str) -> Fraction:
    rng = random.Random(f"negative:{seed}:{suite}")
    return Fraction(rng.randint(1, 97), rng.randint(98, 199))


def run(cfg: RunConfig) -> dict:
    suites = SUITES if cfg.suite == "all" else (cfg.suite,)
    tasks = []
    deltas = {}
    for s in suites:
        delta = control_delta(cfg.seed, s) if cfg.negative_controls else 0
        deltas[s] = delta
        for suite, name, kw in suite_tasks(s, cfg):
            tasks.append((suite, name, dict(kw, perturb=delta)))
    if cfg.jobs > 1 and len(tasks) > 1:
        # longest blocks first would be nicer, but task order is what fixes the report order
        with ProcessPoolExecutor(max_workers=cfg.jobs) as ex:
            results = list(ex.map(_run_task, tasks, chunksize=1))
    else:
        results = [_run_task(t) for t in tasks]
    records = [r for block in results for r in block]
    return emit_report(cfg, records, deltas if cfg.negative_controls else None)


def _check_json(r: CheckRecord, timings: bool) -> dict:
    d = {"suite": r.suite, "id": r.id, "params": jsonable(r.params), "status": r.status,
         "elapsed_ms": r.elapsed_ms if timings else None}
    if r.witness is not None:
        d["witness"] = r.witness
    if r.note:
        d["note"] = r.note
    return d


def emit_report(cfg: RunConfig, records: list[CheckRecord], deltas: dict | None = None) -> dict:
    by_suite: dict[str, dict[str, int]] = {}
    for r in records:
        slot = by_suite.setdefault(r.suite, {"pass": 0, "fail": 0})
        slot["pass" if r.passed else "fail"] += 1
    npass = sum(v["pass"] for v in by_suite.values())
    report: dict[str, Any] = {
        "suite": cfg.suite,
        "config": cfg.public(),
        "checks": [_check_json(r, cfg.timings) for r in records],
        "summary": {"pass": npass, "fail": len(records) - npass, "total": len(records), "by_suite": by_suite},
    }
    if deltas is not None:
        report["negative_controls"] = {s: {"delta": jsonable(d), "failed": by_suite.get(s, {}).get("fail", 0) > 0}
                                       for s, d in deltas.items()}
    jsonschema.validate(report, load_schema())
    return report


def load_schema() -> dict:
    return json.loads(resources.files("oyang").joinpath("data/report.schema.json").read_text())


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def exit_code(report: dict) -> int:
    if "negative_controls" in report:
        return 0 if all(v["failed"] for v in report["negative_controls"].values()) else 1
    return 0 if report["summary"]["fail"] == 0 else 1


# ------------------------------------------------------------------ CLI

def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="oyang", description="Exact checks of deformed Yangian identities.")
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("check", help="run a suite and write a JSON report")
    c.add_argument("--suite", choices=SUITES + ("all",))
    c.add_argument("--config", help="TOML file; command-line flags win")
    c.add_argument("--out", help="report path (default: stdout)")
    c.add_argument("--seed", type=int)
    c.add_argument("--jobs", type=int, help="worker processes (default: $OYANG_JOBS or 1)")
    for name in ("n", "rmax", "smax", "N", "samples"):
        c.add_argument(f"--{name}", type=int)
    for name in ("alpha", "beta", "q", "c", "h"):
        c.add_argument(f"--{name}", help="exact rational such as 3 or 1/2")
    c.add_argument("--timings", action="store_true", default=None, help="record elapsed_ms per check")
    c.add_argument("--negative-controls", action="store_true", default=None,
                   help="perturb every suite; exit 0 only if every suite then fails")
    c.add_argument("--list", action="store_true", help="list suites and exit")
    return p


def build_config(args: argparse.Namespace, environ=os.environ) -> RunConfig:
    values: dict[str, Any] = {}
    if args.config:
        try:
            with open(args.config, "rb") as fh:
                data = tomllib.load(fh)
        except (OSError, tomllib.TOMLDecodeError) as exc:
            raise ConfigError(f"cannot read config: {exc}") from exc
        data = {k.replace("-", "_"): v for k, v in data.get("check", data).items()}
        known = {f.name for f in fields(RunConfig)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        for k, v in data.items():
            if isinstance(v, float):
                raise ConfigError(f"{k}: floats are not accepted, write rationals as strings")
        values.update(data)
    if "jobs" not in values and environ.get("OYANG_JOBS"):
        try:
            values["jobs"] = int(environ["OYANG_JOBS"])
        except ValueError as exc:
            raise ConfigError("OYANG_JOBS must be an integer") from exc
    for f in fields(RunConfig):
        v = getattr(args, f.name, None)
        if v is not None:
            values[f.name] = v
    values.setdefault("suite", "all")
    return RunConfig(**values)


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    if args.list:
        print("\n".join(SUITES + ("all",)))
        return 0
    try:
        cfg = build_config(args)
    except (ConfigError, TypeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    report = run(cfg)
    text = dumps(report)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    s = report["summary"]
    print(f"{cfg.suite}: {s['pass']} pass, {s['fail']} fail, {s['total']} total", file=sys.stderr)
    return exit_code(report)


if __name__ == "__main__":
    sys.exit(main())
