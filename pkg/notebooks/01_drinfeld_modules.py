"""Drinfeld modules by hand: the Carlitz module, torsion, heights and an isogeny.

Run with ``python3 notebooks/01_drinfeld_modules.py``.
"""

from drinfeldkit import GF, AField, DrinfeldModule, Poly, torsion_module
from drinfeldkit.drinfeld import factor_isogeny, rational_torsion_search, x0_T_module

F = GF(2)
T = Poly.T(F)

# The Carlitz module over F_2(T): C_T = T x + x^2.  Compose to get C_{T^2}.
C = DrinfeldModule.carlitz(AField.function_field(F))
print("C_T   =", C.phi(T))
print("C_T^2 =", C.phi(T * T))

# Its rational torsion is tiny; the T-torsion is {0, T} since C_T(x) = x(x + T).
rep = rational_torsion_search(C, restrict_to=T)
print("T-torsion points over F_2(T):", [repr(x) for x in rep.points])

# Over the finite A-field A/p the torsion is governed by the height.
p = Poly.parse(F, "T^3+T+1")
base = AField.residue(p)
phi = DrinfeldModule(base, [1, 3])
print(f"height of {phi.phi_T} over A/({p}):", phi.height())
for a in (T, T + 1, p):
    print(f"  phi[{a}] =", torsion_module(phi, a))

# A cyclic T-isogeny: the kernel x - x^q/alpha is stable under phi_T for
# phi_T = t x + x^q + x^(q^2)/j with j = -alpha^(q+1)/(alpha + t).
alpha = base.const(3)
phi, kernel, j = x0_T_module(base, alpha)
psi, witness = factor_isogeny(phi, kernel)
print("j =", j, " quotient module psi_T =", psi.phi_T, " verified:", witness.verify())
