"""Tabulate sharp and tau on every aperiodic multisegment up to a total degree.

    python3 scripts/dual_table.py --ring zmod:3 --max-degree 3
"""

import argparse

from msdual.core import VertexRing, format_multisegment, is_aperiodic, multisegments_of_size
from msdual.involution import sharp, tau


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--ring", default="zmod:3")
    parser.add_argument("--max-degree", type=int, default=3)
    args = parser.parse_args()
    ring = VertexRing.parse(args.ring)
    rows = []
    for total in range(args.max_degree + 1):
        for m in multisegments_of_size(ring, total):
            if ring.cyclic and not is_aperiodic(m):
                continue
            rows.append((format_multisegment(m), format_multisegment(sharp(m)), format_multisegment(tau(m))))
    width = max(len(r[0]) for r in rows)
    swidth = max(len(r[1]) for r in rows)
    print(f"{'m':<{width}}  {'sharp(m)':<{swidth}}  tau(m)")
    for m, s, t in rows:
        print(f"{m:<{width}}  {s:<{swidth}}  {t}")
    fixed = sum(1 for m, _, t in rows if m == t)
    print(f"\n{len(rows)} multisegments, {fixed} fixed by tau")


if __name__ == "__main__":
    main()
