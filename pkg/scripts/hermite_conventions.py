"""Pass/fail of the two Hermite operator identities under each derivative convention."""
import argparse

from oyang.rmatrix import check_hermite_ops


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--degree", type=int, default=4, help="test monomials u^a v^b with a, b <= degree")
    args = p.parse_args()
    for r in check_hermite_ops(test_degree=args.degree):
        print(f"{r.status:<5} {r.id}")
        if r.note:
            print(f"      {r.note}")


if __name__ == "__main__":
    main()
