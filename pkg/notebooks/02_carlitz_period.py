"""The Carlitz exponential two ways, and the (q-1)-th power of its period."""

from drinfeldkit import GF, AField, DrinfeldModule
from drinfeldkit.analytic import (
    LatticeRank1,
    carlitz_period_power,
    exp_coeffs_from_eisenstein,
    exp_coeffs_from_phi,
    functional_equation_check,
)
from drinfeldkit.laurent import expand_at_infinity

F = GF(3)
C = DrinfeldModule.carlitz(AField.function_field(F))

# Algebraic side: solve (T^(q^n) - T) e_n = e_(n-1)^q exactly in F_q(T).
e = exp_coeffs_from_phi(C, 3)
for n, c in enumerate(e.coeffs):
    print(f"e_{n} =", c)
print("e(Tx) = C_T(e(x)) through n = 3:", bool(functional_equation_check(C, e, 3)))

# Analytic side: pi_C^(q-1) from a truncated monic sum; more terms, more digits.
for D in (4, 6, 8):
    s = carlitz_period_power(D, F)
    print(f"D={D}: valuation {s.valuation()}, certified below pi^{s.prec}")
print(carlitz_period_power(6, F))

# The lattice sums over pi_C A reproduce the same coefficients at infinity.
lattice = LatticeRank1.carlitz(F, 8)
e_an = exp_coeffs_from_eisenstein(lattice, 2, 8)
for n in range(3):
    exact = expand_at_infinity(e[n], e_an[n].prec or 20)
    print(f"e_{n}: lattice sum agrees with recursion:", e_an[n].agrees_with(exact))
