"""The cusp, resolved: motivic terms and their realizations.

The resolution of x^2 + y^3 by three point blow-ups has exceptional curves
of multiplicity 2, 3, 6 and a multiplicity-1 strict transform, with the
third curve meeting each of the others once.  From that combinatorial data
the package computes the Milnor-fibre invariants of the cusp exactly.
"""

from ncmilnor import (
    acampo_zeta,
    builtin_example,
    keyed_class,
    milnor_fibre_euler,
    motivic_terms,
    naive_absolute_class,
    psi_data,
)
from ncmilnor.ring import euler_realization

cusp = builtin_example("cusp_resolved")

print("== stratum-by-stratum terms ==")
print("  stratum        sign  order  class        torus exponent")
for term in motivic_terms(cusp):
    label = "{" + ", ".join(term.subset) + "}"
    print(f"  {label:13s}  {term.sign:+d}    {term.gcd_key}      "
          f"{str(term.stratum_cls):11s}  {term.torus_exponent}")

print()
print("== realizations ==")
zeta = acampo_zeta(cusp)
print(f"  monodromy zeta factorization: {zeta}")
chi = milnor_fibre_euler(cusp)
print(f"  euler characteristic of the fibre: {chi}")
print(f"  consistency: 1 - chi = milnor number = {1 - chi}")
absolute = naive_absolute_class(cusp)
print(f"  absolute class: {absolute} (euler realization {euler_realization(absolute)})")
print(f"  keyed class (diagnostic): {keyed_class(cusp)}")

print()
print("== the Bezout certificate behind the corner orders ==")
for subset in (("e2", "e6"), ("e3", "e6"), ("e6", "st")):
    data = psi_data(cusp, subset)
    mults = [cusp.multiplicity(c) for c in data.subset]
    terms = " + ".join(f"({a})*{n}" for a, n in zip(data.bezout, mults))
    print(f"  {{{', '.join(data.subset)}}}: gcd {data.order} = {terms}")

print()
print("== the same numbers for a plain power ==")
for n in (1, 2, 5):
    model = builtin_example(f"power_{n}")
    print(f"  x^{n}: zeta {acampo_zeta(model)}, euler {milnor_fibre_euler(model)}")
