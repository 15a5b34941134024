"""The quotient graph for a degree-3 prime, its harmonic cochains and Eisenstein series."""

from fractions import Fraction

from drinfeldkit import GF, Poly, eisenstein_cochain, harmonic_basis, quotient_graph
from drinfeldkit.harmonic import fourier_constant, fourier_star, hecke_apply, hecke_matrix
from drinfeldkit.tree import EdgeNF

q = 2
F = GF(q)
p = Poly.parse(F, "T^3+T+1")
G = quotient_graph(p)
print(f"level {p}: {len(G.finite_vertices)} finite vertices, {len(G.finite_edges)} finite edges,"
      f" {G.cusps} cusps, genus {G.genus}")
print(G.to_dot())

cusp = harmonic_basis(G, cuspidal=True)
full = harmonic_basis(G, cuspidal=False)
print("ranks (cuspidal, full):", len(cusp), len(full))

# Hecke matrices on the cuspidal lattice.
for m in ("T", "T+1", "T^2+T+1"):
    print(f"T_({m}) =", hecke_matrix(Poly.parse(F, m), cusp).matrix)

# The Eisenstein cochain on the named edges of the finite part.
E = eisenstein_cochain(G)
named = {
    "s_inf": EdgeNF("+", 1, (), F),
    "s_1": EdgeNF("+", 3, (), F),
    "a_inf": EdgeNF("+", 2, ((1, 1),), F),
    "d_inf": EdgeNF("+", 2, (), F),
    "b_0": EdgeNF("+", 3, ((1, 1),), F),
    "b_1": EdgeNF("+", 3, ((1, 1), (2, 1)), F),
}
for name, e in named.items():
    print(f"E({name}) = {E(e)}")
print("E|U_p == E:", hecke_apply(E, p) == E)

# Fourier data: constant terms decay by 1/q per level; E*(1) = (q+1)(q-1)^2/q.
print("E0:", [str(fourier_constant(E, k)) for k in range(1, 5)])
print("E*(1) =", fourier_star(E, Poly.const(F, 1)), "expected", Fraction((q + 1) * (q - 1) ** 2, q))
