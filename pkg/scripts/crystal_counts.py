"""Vertex counts of the crystal component of the empty multisegment.

Compares three numbers per total degree: the breadth-first crystal graph, the
direct count of aperiodic multisegments, and the graded dimension of the
negative half of the affine quantum algebra read off from root multiplicities
(real roots have multiplicity 1, imaginary roots k*delta have n - 1).

    python3 scripts/crystal_counts.py --n 3 --max-degree 6
"""

import argparse

from msdual.core import aperiodic_of_size, zmod
from msdual.crystal import crystal_graph


def root_heights(n: int, max_height: int) -> list[int]:
    """Number of positive roots of each height for the affine algebra of type A_{n-1}^(1)."""
    counts = [0] * (max_height + 1)
    finite = [b - a for a in range(n) for b in range(a + 1, n)]
    for k in range(0, max_height // n + 2):
        for h in finite:
            if 0 < h + k * n <= max_height:
                counts[h + k * n] += 1
            if k >= 1 and 0 < k * n - h <= max_height:
                counts[k * n - h] += 1
        if k >= 1 and k * n <= max_height:
            counts[k * n] += n - 1
    return counts


def graded_dimension(n: int, max_degree: int) -> list[int]:
    """Coefficients of prod over positive roots of (1 - t^height)^(-multiplicity)."""
    series = [1] + [0] * max_degree
    for h, mult in enumerate(root_heights(n, max_degree)):
        for _ in range(mult if h else 0):
            for d in range(h, max_degree + 1):
                series[d] += series[d - h]
    return series


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=3)
    parser.add_argument("--max-degree", type=int, default=6)
    args = parser.parse_args()
    ring = zmod(args.n)
    graph = crystal_graph(ring, args.max_degree).counts_by_size()
    direct = [len(aperiodic_of_size(ring, d)) for d in range(args.max_degree + 1)]
    roots = graded_dimension(args.n, args.max_degree)
    print(f"n={args.n}")
    print(f"{'degree':>6} {'graph':>8} {'aperiodic':>10} {'roots':>8}")
    for d in range(args.max_degree + 1):
        flag = "" if graph[d] == direct[d] == roots[d] else "  MISMATCH"
        print(f"{d:>6} {graph[d]:>8} {direct[d]:>10} {roots[d]:>8}{flag}")


if __name__ == "__main__":
    main()
