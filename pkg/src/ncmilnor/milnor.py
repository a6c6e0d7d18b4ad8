"""Milnor-fibre invariants of a normal-crossing model.

Over each nonempty stratum the punctured normal directions form a torus
bundle, and the signed sum of these bundles over all strata is the motivic
incarnation of the Milnor fibre.  This module computes that sum and the
realizations of it that the package can compare exactly:

* ``motivic_terms``: the raw term list, one per present stratum, carrying
  the sign (-1)^(|J|+1), the monodromy order gcd(N_i, i in J), the stratum
  class, and the torus exponent |J| - 1.

* ``naive_absolute_class``: the equivariance-forgetting realization
  sum (-1)^(|J|+1) * [stratum] * (L-1)^|J| in Z[L].  Blow-up invariant.

* ``keyed_class``: terms grouped by monodromy order, each contributing
  (-1)^(|J|+1) * [stratum] * (L-1)^(|J|-1).  NOT blow-up invariant: the
  key records covering data that a blow-up reshuffles, and only the ring
  relations (which this representation deliberately does not implement)
  would identify the results.  Treat it as a diagnostic.

* ``acampo_zeta`` / ``milnor_fibre_euler``: the monodromy zeta factorization
  prod_i (1 - t^(N_i))^(chi_i) over components, with chi_i the Euler number
  of the open stratum of component i, and the matching Euler characteristic
  sum_i N_i * chi_i.  The exponent-sign convention (+chi_i) is fixed here
  once and used everywhere.

``psi_data`` provides the Bezout certificate behind the key: integers
alpha_i with sum alpha_i * N_i = gcd, chosen deterministically.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from .model import NCModel, UnknownStratumError, require_valid
from .ring import KeyedClass, LefschetzPoly, ZetaFactorization, euler_realization

_L_MINUS_ONE = LefschetzPoly((-1, 1))


@dataclass(frozen=True)
class MotivicTerm:
    """One stratum's contribution to the motivic Milnor fibre."""

    subset: tuple[str, ...]
    sign: int
    gcd_key: int
    stratum_cls: LefschetzPoly
    torus_exponent: int


@dataclass(frozen=True)
class PsiData:
    """Bezout data trivializing the torus bundle over a stratum:
    sum over i of bezout[i] * N_i equals the gcd ``order``."""

    subset: tuple[str, ...]
    order: int
    bezout: tuple[int, ...]


def _sorted_subsets(model: NCModel) -> list[tuple[str, ...]]:
    return sorted(tuple(sorted(s.components)) for s in model.strata)


def motivic_terms(model: NCModel) -> list[MotivicTerm]:
    """One term per present stratum, in sorted subset order."""
    require_valid(model)
    terms = []
    for subset in _sorted_subsets(model):
        size = len(subset)
        terms.append(MotivicTerm(
            subset=subset,
            sign=-1 if size % 2 == 0 else 1,
            gcd_key=gcd(*(model.multiplicity(cid) for cid in subset)),
            stratum_cls=model.stratum_class(subset),
            torus_exponent=size - 1,
        ))
    return terms


def naive_absolute_class(model: NCModel) -> LefschetzPoly:
    """sum (-1)^(|J|+1) [stratum_J] (L-1)^|J|, the class of the motivic part
    with the torus action forgotten.  Invariant under valid blow-ups."""
    total = LefschetzPoly.zero()
    for term in motivic_terms(model):
        total = total + term.sign * term.stratum_cls * _L_MINUS_ONE ** (term.torus_exponent + 1)
    return total


def keyed_class(model: NCModel) -> KeyedClass:
    """Group terms by monodromy order; see the module note on non-invariance."""
    entries: dict[int, LefschetzPoly] = {}
    for term in motivic_terms(model):
        piece = term.sign * term.stratum_cls * _L_MINUS_ONE**term.torus_exponent
        entries[term.gcd_key] = entries.get(term.gcd_key, LefschetzPoly.zero()) + piece
    return KeyedClass(entries)


def acampo_zeta(model: NCModel) -> ZetaFactorization:
    """Monodromy zeta factorization prod (1 - t^(N_i))^(chi_i) over components,
    chi_i the Euler number of the open stratum of component i.  Components
    whose open stratum has Euler number zero contribute no factor."""
    require_valid(model)
    return ZetaFactorization(
        (comp.multiplicity, euler_realization(model.stratum_class({comp.id})))
        for comp in model.components
    )


def milnor_fibre_euler(model: NCModel) -> int:
    """Euler characteristic of the Milnor fibre, sum_i N_i * chi_i.

    Matches the zeta convention above; meaningful for local-mode models,
    where the stratum classes sit over the tracked point.
    """
    require_valid(model)
    return sum(
        comp.multiplicity * euler_realization(model.stratum_class({comp.id}))
        for comp in model.components
    )


def bezout_chain(values: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """gcd of positive integers together with deterministic Bezout
    coefficients, folding extended Euclid left to right.

    Each two-term step uses the textbook extended Euclid output, whose
    coefficients are the smallest in absolute value, so the fold is a normal
    form for the input order.
    """
    if not values:
        raise ValueError("bezout_chain needs at least one value")
    if any(v < 1 for v in values):
        raise ValueError(f"values must be positive, got {list(values)}")
    g = values[0]
    coeffs = [1]
    for v in values[1:]:
        g, s, t = _extended_gcd(g, v)
        coeffs = [c * s for c in coeffs]
        coeffs.append(t)
    return g, tuple(coeffs)


def _extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def psi_data(model: NCModel, subset: Iterable[str]) -> PsiData:
    """Bezout trivialization data for a present stratum, in sorted id order."""
    require_valid(model)
    key = frozenset(subset)
    if key not in model.present_subsets():
        raise UnknownStratumError(
            f"no stratum on {{{', '.join(sorted(key))}}} in the model")
    ordered = tuple(sorted(key))
    order, coeffs = bezout_chain([model.multiplicity(cid) for cid in ordered])
    return PsiData(subset=ordered, order=order, bezout=coeffs)
