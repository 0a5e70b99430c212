"""Print canonical basis tables for every degree vector up to a total degree.

    python3 scripts/canonical_table.py --ring zmod:2 --max-degree 4
"""

import argparse
import time

from msdual.canonical import canonical_basis, degrees_up_to, sharp_on_canonical
from msdual.core import VertexRing


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--ring", default="zmod:2")
    parser.add_argument("--max-degree", type=int, default=4)
    parser.add_argument("--rows", action="store_true", help="print every basis element")
    args = parser.parse_args()
    ring = VertexRing.parse(args.ring)
    for total in range(1, args.max_degree + 1):
        start = time.perf_counter()
        count = 0
        corrected = 0
        for d in degrees_up_to(ring, total):
            table = canonical_basis(ring, d)
            count += len(table.basis)
            corrected += sum(1 for combo in table.in_monomials.values() if len(combo) > 1)
            ok = sharp_on_canonical(table).ok
            if args.rows:
                print(f"-- degree {d} (sharp check {'ok' if ok else 'FAILED'})")
                for row in table.format_rows():
                    print(row)
        took = time.perf_counter() - start
        print(f"total {total}: {count} basis elements, {corrected} needed correction, {took:.2f}s")


if __name__ == "__main__":
    main()
