"""Index of the Eisenstein ideal against the order of the cuspidal divisor group."""

from drinfeldkit import GF, cuspidal_order_rank2, eisenstein_index
from drinfeldkit.polys import enumerate_monic_irreducibles

for q, d in ((2, 3), (2, 4), (3, 3)):
    F = GF(q)
    for p in enumerate_monic_irreducibles(F, d)[:2]:
        r = eisenstein_index(p)
        print(f"q={q} p={p}: index {r.index} = {r.index_factorization},"
              f" cuspidal order {cuspidal_order_rank2(p)}, B={r.B}, matches {r.matches},"
              f" unflagged {r.unflagged}")
