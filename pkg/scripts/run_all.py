"""Run every suite at defaults and print a per-suite summary with wall times.

    python3 scripts/run_all.py [--seed K] [--out report.json]
"""
import argparse
import time

from oyang.cli import SUITES, RunConfig, dumps, run


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    args = p.parse_args()
    records, total = [], 0.0
    print(f"{'suite':<14} {'pass':>6} {'fail':>5} {'seconds':>8}")
    for suite in SUITES:
        t0 = time.perf_counter()
        rep = run(RunConfig(suite=suite, seed=args.seed))
        dt = time.perf_counter() - t0
        total += dt
        s = rep["summary"]
        print(f"{suite:<14} {s['pass']:>6} {s['fail']:>5} {dt:>8.1f}")
        for c in rep["checks"]:
            if c["status"] == "fail":
                print(f"    FAIL {c['id']}: {c.get('note') or c.get('witness', '')}")
        records.extend(rep["checks"])
    print(f"{'total':<14} {sum(c['status'] == 'pass' for c in records):>6} "
          f"{sum(c['status'] == 'fail' for c in records):>5} {total:>8.1f}")
    if args.out:
        # rerun as one report so the file matches `oyang check --suite all`
        with open(args.out, "w") as fh:
            fh.write(dumps(run(RunConfig(suite="all", seed=args.seed))))


if __name__ == "__main__":
    main()
