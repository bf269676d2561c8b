"""Analytic parameter table for the (n, m, k) = (2, 3, 1) codebook family.

For each alphabet size q the table lists the codebook dimensions, the
closed-form peak correlation, the Welch bound, and their ratio; the ratio
tends to 1, which is the asymptotic-optimality statement for this family.
"""
from galois_sums import table2

rows = table2()
print(f"{'q':>4} {'N':>14} {'K':>12} {'peak':>14} {'Welch':>14} {'ratio':>12}")
for r in rows:
    print(
        f"{r.q:>4} {r.N:>14} {r.K:>12} {r.imax:>14.10g} {r.welch:>14.10g} {r.ratio:>12.9g}"
    )

gaps = [r.ratio - 1 for r in rows]
print()
print("ratio - 1 is decreasing:", all(a > b for a, b in zip(gaps, gaps[1:])))
