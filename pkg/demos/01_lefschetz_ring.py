"""Exact class arithmetic: the Lefschetz polynomial ring and its realizations.

Classes of the spaces this package tracks are integer polynomials in L, the
class of the affine line.  This script walks through the arithmetic, the two
realizations (Euler characteristic at L = 1, E-polynomial at L = u*v), and
the zeta-factorization normal form.
"""

from ncmilnor import (
    L,
    LefschetzPoly,
    ZetaFactorization,
    e_polynomial,
    euler_realization,
    zeta_equal,
)
from ncmilnor.ring import ONE

print("== familiar classes ==")
affine_line = L
projective_line = L + ONE
punctured_line = L - ONE
projective_plane = L**2 + L + ONE
for name, cls in [("affine line", affine_line),
                  ("projective line", projective_line),
                  ("punctured line", punctured_line),
                  ("projective plane", projective_plane)]:
    print(f"  {name:17s} class {str(cls):18s} euler {euler_realization(cls):2d}"
          f"   E(u,v) = {e_polynomial(cls)}")

print()
print("== arithmetic is exact ==")
torus_square = punctured_line**2
print(f"  (L-1)^2            = {torus_square}")
print(f"  [P^1] * [P^1]      = {projective_line * projective_line}")
print(f"  euler of the torus = {euler_realization(punctured_line)} (circle times ray)")

print()
print("== zeta factorizations ==")
cusp_zeta = ZetaFactorization([(6, -1), (2, 1), (3, 1)])
print(f"  normal form sorts and merges: {cusp_zeta}")
square = ZetaFactorization([(1, 2)])
double = ZetaFactorization([(2, 1)])
print(f"  (1-t)^2 vs (1-t^2): equal as rational functions? "
      f"{zeta_equal(square, double)}")
cancel = ZetaFactorization([(4, 3), (4, -3)])
print(f"  (1-t^4)^3 (1-t^4)^-3 normalizes to: {cancel}")
assert zeta_equal(cancel, ZetaFactorization())

print()
print("== why no negative powers of L ==")
try:
    LefschetzPoly.monomial(-1)
except ValueError as exc:
    print(f"  LefschetzPoly.monomial(-1) -> ValueError: {exc}")
print("  every invariant here is certified without inverting L")
