"""Signatures of each ternary algebra in the table next to both readings of its target.

A signature is (dim, derived series, lower central series, center dim, Killing rank).
"""
from oyang.polarization import build_ternary, ternary_table_lines


def main():
    for line in ternary_table_lines():
        print(f"line {line['line']}")
        for g in line["sources"]:
            T = build_ternary(g)
            print(f"  {g.name + '^tern':<22} {T.signature}")
        for key in ("direct", "levi", "alt_direct", "alt_levi"):
            if key in line:
                print(f"  target[{key}]{'':<{10 - len(key)}} {line[key].signature()}")


if __name__ == "__main__":
    main()
