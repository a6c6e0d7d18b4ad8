"""Numeric points of the complete log space of a chart, and the maps on them.

A point stores chart coordinates together with, for every divisor coordinate
where the base vanishes, a polar pair (radius, unit phase).  The radius lives
in (0, +inf]; ``math.inf`` is the explicit mark for the boundary circle, and
``math.isinf`` is the membership test, so the boundary is represented
exactly rather than by a large float.  Points with all radii finite form the
algebraic part (tag "mot"), points with all radii infinite the boundary part
(tag "top"), everything in between is mixed.

The maps implemented here:

* ``sign_f``: the phase of the function at the point, the product of the
  unit's phase with the divisor phases raised to their multiplicities.
* ``f_mot``: the actual complex value on the algebraic part.
* ``quotient_to_top``: push all radii to the boundary, phases untouched.
* ``xi`` / ``in_simplex`` / ``simplex_representative``: the clock speeds
  xi_i = 1/(r_i N_i) (zero at the boundary), the unit-sum locus, and the
  unique representative of a scaling orbit on that locus.
* ``monodromy``: the flow multiplying each phase by exp(2*pi*i*lam*xi_i/N_i),
  which on the unit-sum locus rotates sign_f by exactly exp(2*pi*i*lam).
  Note the division by N_i in the exponent: multiplying phase i by
  exp(2*pi*i*lam*xi_i) instead would rotate sign_f by the sum of 1/r_i,
  which is 1 only when every multiplicity is 1.
* ``recover_multiplicities``: read the multiplicities back off any phase
  oracle by winding-number counting, and the unit's phase as the value at
  the identity phases.
* ``psi_map`` / ``psi_inverse``: the Bezout change of coordinates isolating
  one copy of C* on which the function is a pure power.
* ``sigma_alog_chart``: the chart-level effect of blowing up a coordinate
  subspace, mapping an upstairs point to the downstairs point under it.

Tolerances: unit modulus and unit-vanishing cutoffs are 1e-12; the phase
identities are certified to 1e-9 by the test suite.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .milnor import bezout_chain
from .model import Chart, NCModel, UnitPoly

PHASE_TOL = 1e-12
UNIT_CUTOFF = 1e-12
SIMPLEX_TOL = 1e-9


class LogspaceError(ValueError):
    pass


class NonMotivicPointError(LogspaceError):
    pass


class TopPointError(LogspaceError):
    pass


class UnitVanishingError(LogspaceError):
    pass


class UnwrapError(LogspaceError):
    pass


@dataclass(frozen=True)
class PolarCoord:
    """Radius in (0, +inf] (math.inf marks the boundary) and a unit phase."""

    radius: float
    phase: complex

    @property
    def finite(self) -> bool:
        return not math.isinf(self.radius)

    def value(self) -> complex:
        if not self.finite:
            raise TopPointError("no complex value at the boundary circle")
        return self.radius * self.phase


@dataclass(frozen=True)
class ChartContext:
    """A chart bundled with the multiplicities of its divisor coordinates."""

    chart: Chart
    multiplicities: tuple[tuple[int, int], ...]

    def __init__(self, chart: Chart, multiplicities: Mapping[int, int]):
        object.__setattr__(self, "chart", chart)
        object.__setattr__(self, "multiplicities",
                           tuple(sorted((int(k), int(v)) for k, v in dict(multiplicities).items())))
        coords = chart.coords()
        for coord, mult in self.multiplicities:
            if coord not in coords:
                raise LogspaceError(f"coordinate {coord} is not a divisor coordinate")
            if mult < 1:
                raise LogspaceError(f"multiplicity at coordinate {coord} must be >= 1")
        if set(coords) != {c for c, _ in self.multiplicities}:
            raise LogspaceError("every divisor coordinate needs a multiplicity")

    def multiplicity(self, coord: int) -> int:
        for c, m in self.multiplicities:
            if c == coord:
                return m
        raise LogspaceError(f"coordinate {coord} is not a divisor coordinate")

    def divisor_coords(self) -> dict[int, str]:
        return self.chart.coords()


def chart_context(model: NCModel, chart_index: int = 0) -> ChartContext:
    """Bundle chart ``chart_index`` of a model with its multiplicities."""
    try:
        chart = model.charts[chart_index]
    except IndexError:
        raise LogspaceError(f"model has no chart {chart_index}") from None
    return ChartContext(
        chart, {coord: model.multiplicity(cid) for coord, cid in chart.divisor_coords})


@dataclass(frozen=True)
class CplPoint:
    """A point of the complete log space of a chart.

    ``base`` gives the chart coordinates; it vanishes exactly on the divisor
    coordinates listed in ``polar``, each of which carries its polar pair.
    """

    chart: ChartContext
    base: tuple[complex, ...]
    polar: tuple[tuple[int, PolarCoord], ...]

    def __init__(self, chart: ChartContext, base: Sequence[complex],
                 polar: Mapping[int, PolarCoord] | Mapping[int, tuple]):
        entries = []
        for coord, item in sorted(dict(polar).items()):
            if not isinstance(item, PolarCoord):
                item = PolarCoord(float(item[0]), complex(item[1]))
            entries.append((int(coord), item))
        object.__setattr__(self, "chart", chart)
        object.__setattr__(self, "base", tuple(complex(z) for z in base))
        object.__setattr__(self, "polar", tuple(entries))
        self._check()

    def _check(self) -> None:
        divisor = self.chart.divisor_coords()
        if len(self.base) != self.chart.chart.dim:
            raise LogspaceError(
                f"base has {len(self.base)} coordinates, chart dim is {self.chart.chart.dim}")
        if not self.polar:
            raise LogspaceError("a log point must sit on at least one divisor coordinate")
        seen = set()
        for coord, pc in self.polar:
            if coord not in divisor:
                raise LogspaceError(f"coordinate {coord} is not a divisor coordinate")
            seen.add(coord)
            if self.base[coord] != 0:
                raise LogspaceError(f"base coordinate {coord} must be exactly zero")
            if not pc.radius > 0:
                raise LogspaceError(f"radius at coordinate {coord} must be positive")
            if abs(abs(pc.phase) - 1.0) > PHASE_TOL:
                raise LogspaceError(f"phase at coordinate {coord} is not unit modulus")
        for coord in divisor:
            if coord not in seen and self.base[coord] == 0:
                raise LogspaceError(
                    f"divisor coordinate {coord} vanishes but has no polar data")

    def polar_map(self) -> dict[int, PolarCoord]:
        return dict(self.polar)

    def vanishing(self) -> tuple[int, ...]:
        return tuple(coord for coord, _ in self.polar)

    def replace_polar(self, polar: Mapping[int, PolarCoord]) -> "CplPoint":
        return CplPoint(self.chart, self.base, polar)


@dataclass(frozen=True)
class Classification:
    tag: str
    finite: frozenset[int]


def classify(p: CplPoint) -> Classification:
    """Tag by the set of coordinates held at finite radius."""
    finite = frozenset(coord for coord, pc in p.polar if pc.finite)
    if len(finite) == len(p.polar):
        tag = "mot"
    elif not finite:
        tag = "top"
    else:
        tag = "mixed"
    return Classification(tag, finite)


def effective_unit(p: CplPoint) -> complex:
    """The effective unit at the point: the chart unit times the nonvanishing
    divisor coordinates raised to their multiplicities."""
    vanishing = set(p.vanishing())
    value = p.chart.chart.unit(p.base)
    for coord, _ in p.chart.multiplicities:
        if coord not in vanishing:
            value *= p.base[coord] ** p.chart.multiplicity(coord)
    return value


def sign_f(p: CplPoint) -> complex:
    """Phase of the function at the point: sign of the effective unit times
    the product of divisor phases to their multiplicities.  Radii are never
    read, so the value is constant along scaling orbits."""
    unit = effective_unit(p)
    if abs(unit) <= UNIT_CUTOFF:
        raise UnitVanishingError("unit vanishes at the base point")
    value = unit / abs(unit)
    for coord, pc in p.polar:
        value *= pc.phase ** p.chart.multiplicity(coord)
    return value


def f_mot(p: CplPoint) -> complex:
    """Value of the function on the algebraic part of the log space."""
    if classify(p).tag != "mot":
        raise NonMotivicPointError("point has a coordinate at the boundary circle")
    unit = effective_unit(p)
    if abs(unit) <= UNIT_CUTOFF:
        raise UnitVanishingError("unit vanishes at the base point")
    value = unit
    for coord, pc in p.polar:
        value *= pc.value() ** p.chart.multiplicity(coord)
    return value


def quotient_to_top(p: CplPoint) -> CplPoint:
    """Send every radius to the boundary; phases are untouched, so sign_f is
    preserved exactly."""
    return p.replace_polar(
        {coord: PolarCoord(math.inf, pc.phase) for coord, pc in p.polar})


def xi(p: CplPoint) -> dict[int, float]:
    """Clock speeds xi_i = 1/(r_i N_i), zero exactly at infinite radius."""
    out = {}
    for coord, pc in p.polar:
        out[coord] = 0.0 if not pc.finite else 1.0 / (pc.radius * p.chart.multiplicity(coord))
    return out


def in_simplex(p: CplPoint, tol: float = SIMPLEX_TOL) -> bool:
    """True when the clock speeds sum to 1 within ``tol``."""
    return abs(sum(xi(p).values()) - 1.0) <= tol


def simplex_representative(p: CplPoint) -> CplPoint:
    """The unique point of the scaling orbit with clock speeds summing to 1.

    Scaling every finite radius by t divides each finite clock speed by t,
    so the orbit of any point with a finite coordinate crosses the unit-sum
    locus once, at t = current sum.  Boundary points never reach it.
    """
    total = sum(xi(p).values())
    if total == 0.0:
        raise TopPointError("a boundary point's orbit misses the unit-sum locus")
    return p.replace_polar({
        coord: PolarCoord(total * pc.radius, pc.phase) if pc.finite else pc
        for coord, pc in p.polar})


def monodromy(p: CplPoint, lam: float) -> CplPoint:
    """Rotate each phase by exp(2*pi*i*lam*xi_i/N_i); radii unchanged.

    On the unit-sum locus the phase of the function then advances by
    exactly exp(2*pi*i*lam), because coordinate i contributes its phase to
    sign_f with exponent N_i and N_i * (xi_i / N_i) sums to 1.
    """
    speeds = xi(p)
    new_polar = {}
    for coord, pc in p.polar:
        factor = cmath.exp(2j * math.pi * lam * speeds[coord] / p.chart.multiplicity(coord))
        new_polar[coord] = PolarCoord(pc.radius, pc.phase * factor) if speeds[coord] else pc
    return p.replace_polar(new_polar)


# ---------------------------------------------------------------------------
# winding recovery

def recover_multiplicities(
    oracle: Callable[[Sequence[complex]], complex],
    arity: int,
    samples_per_loop: int = 16,
) -> tuple[tuple[int, ...], complex]:
    """Read exponents off a torus-to-circle map by winding numbers.

    For each slot, drive that slot once around the circle (others held at 1)
    and accumulate the unwrapped phase of the oracle output; each step must
    stay below pi or the sampling is too coarse to unwrap.  Returns the
    winding numbers and the oracle value at the identity phases, which for
    an oracle of the form sign(u) * prod theta_i^(N_i) are exactly the
    multiplicities and the unit's phase.
    """
    if samples_per_loop < 8:
        raise ValueError("samples_per_loop must be at least 8")
    windings = []
    for slot in range(arity):
        total = 0.0
        previous = oracle(_phase_tuple(arity, slot, 0, samples_per_loop))
        for step in range(1, samples_per_loop + 1):
            current = oracle(_phase_tuple(arity, slot, step, samples_per_loop))
            delta = cmath.phase(current / previous)
            if abs(delta) >= math.pi - 1e-9:
                raise UnwrapError(
                    f"unwrapping step of {delta:.6f} rad at slot {slot}; "
                    f"raise samples_per_loop")
            total += delta
            previous = current
        turns = total / (2 * math.pi)
        if abs(turns - round(turns)) > 1e-6:
            raise UnwrapError(f"net winding {turns} is not an integer at slot {slot}")
        windings.append(round(turns))
    phase = oracle((1.0 + 0.0j,) * arity)
    return tuple(windings), phase


def _phase_tuple(arity: int, slot: int, step: int, per_loop: int) -> tuple[complex, ...]:
    phases = [1.0 + 0.0j] * arity
    phases[slot] = cmath.exp(2j * math.pi * step / per_loop)
    return tuple(phases)


def sign_oracle(ctx: ChartContext, base: Sequence[complex]) -> Callable[[Sequence[complex]], complex]:
    """The phase oracle of a chart at a base point: slot order is the sorted
    list of vanishing divisor coordinates."""
    if len(base) != ctx.chart.dim:
        raise LogspaceError(
            f"base has {len(base)} coordinates, chart dim is {ctx.chart.dim}")
    coords = [c for c in sorted(ctx.divisor_coords()) if complex(base[c]) == 0]
    if not coords:
        raise LogspaceError("base point lies on no divisor coordinate")

    def oracle(phases: Sequence[complex]) -> complex:
        polar = {c: PolarCoord(1.0, complex(t)) for c, t in zip(coords, phases)}
        return sign_f(CplPoint(ctx, base, polar))

    return oracle


# ---------------------------------------------------------------------------
# Bezout trivialization

@dataclass(frozen=True)
class PsiImage:
    """Image of a point under the Bezout change of coordinates: the base,
    the isolated scale r with f = unit * r^order, and the residual tuple w
    constrained by prod w_i^(N_i/order) = 1."""

    base: tuple[complex, ...]
    scale: complex
    residual: tuple[tuple[int, complex], ...]
    order: int

    def residual_map(self) -> dict[int, complex]:
        return dict(self.residual)


def _bezout_for(p_or_ctx, coords: Sequence[int]) -> tuple[int, dict[int, int]]:
    ctx = p_or_ctx if isinstance(p_or_ctx, ChartContext) else p_or_ctx.chart
    order, coeffs = bezout_chain([ctx.multiplicity(c) for c in coords])
    return order, dict(zip(coords, coeffs))


def psi_map(p: CplPoint) -> PsiImage:
    """Split the torus of divisor values into a scale times a constrained
    residual torus, using Bezout coefficients for the multiplicities."""
    if classify(p).tag != "mot":
        raise NonMotivicPointError("the Bezout splitting lives on the algebraic part")
    coords = list(p.vanishing())
    order, alpha = _bezout_for(p, coords)
    values = {coord: pc.value() for coord, pc in p.polar}
    scale = 1.0 + 0.0j
    for coord in coords:
        scale *= values[coord] ** (p.chart.multiplicity(coord) // order)
    residual = tuple(
        (coord, scale ** (-alpha[coord]) * values[coord]) for coord in coords)
    return PsiImage(p.base, scale, residual, order)


def psi_inverse(ctx: ChartContext, base: Sequence[complex], scale: complex,
                residual: Mapping[int, complex]) -> CplPoint:
    """Rebuild the point from its Bezout splitting: value_i = r^alpha_i w_i."""
    coords = sorted(residual)
    _, alpha = _bezout_for(ctx, coords)
    polar = {}
    for coord in coords:
        value = scale ** alpha[coord] * residual[coord]
        polar[coord] = PolarCoord(abs(value), value / abs(value))
    return CplPoint(ctx, base, polar)


# ---------------------------------------------------------------------------
# chart-level blow-up of a coordinate subspace

def _check_blowup_inputs(codim: int, multiplicities: Mapping[int, int], pivot: int,
                         up_base: Sequence[complex],
                         up_polar: Mapping[int, PolarCoord]) -> tuple[set, set]:
    contained = set(multiplicities)
    if not contained or not all(0 <= k < codim for k in contained):
        raise LogspaceError("divisor coordinates must be centre coordinates")
    if codim > len(up_base):
        raise LogspaceError("codim exceeds the chart dimension")
    if not 0 <= pivot < codim:
        raise LogspaceError(f"pivot {pivot} is not a centre coordinate")
    if pivot not in up_polar:
        raise LogspaceError("pivot coordinate zero: the exceptional direction needs "
                            "a polar pair at the pivot")
    strict = set(up_polar) - {pivot}
    if not strict <= contained:
        raise LogspaceError("polar data on a coordinate that is not a divisor")
    if complex(up_base[pivot]) != 0:
        raise LogspaceError("base must lie on the exceptional divisor (pivot entry zero)")
    for q in strict:
        if complex(up_base[q]) != 0:
            raise LogspaceError(f"base coordinate {q} must be zero on its strict transform")
    for coord, pc in up_polar.items():
        if not pc.finite:
            raise LogspaceError(f"finite radius required at coordinate {coord}")
    for k in contained - strict - {pivot}:
        if complex(up_base[k]) == 0:
            raise LogspaceError(
                f"coordinate {k} vanishes but carries no polar data; "
                f"the point is not on the claimed stratum")
    return contained, strict


def _downstairs_base(codim: int, pivot: int, up_base: Sequence[complex]) -> tuple[complex, ...]:
    down = []
    for j, z in enumerate(up_base):
        if j == pivot:
            down.append(complex(up_base[pivot]))
        elif j < codim:
            down.append(complex(up_base[pivot]) * complex(z))
        else:
            down.append(complex(z))
    return tuple(down)


def sigma_alog_chart(codim: int, multiplicities: Mapping[int, int], unit: UnitPoly,
                     pivot: int, up_base: Sequence[complex],
                     up_polar: Mapping[int, PolarCoord]) -> CplPoint:
    """Push an upstairs algebraic log point through the blow-down map.

    The centre is the coordinate subspace spanned by the first ``codim``
    coordinates' vanishing; ``multiplicities`` names the divisor coordinates
    among them.  The upstairs point lives in the exceptional chart with unit
    entry at ``pivot``: its base has a zero pivot entry (it is on the
    exceptional divisor) and zeros at the strict-transform coordinates that
    carry polar data.  Downstairs, divisor coordinate k receives the value

        exceptional value * base_k        for k not under a strict transform
        exceptional value                  for the pivot itself
        exceptional value * polar value k  for strict-transform coordinates

    which is the normal-vector description of the blow-down.
    """
    up_polar = {int(k): v for k, v in dict(up_polar).items()}
    contained, strict = _check_blowup_inputs(codim, multiplicities, pivot, up_base, up_polar)
    exceptional = up_polar[pivot].value()
    down_values: dict[int, complex] = {}
    for k in contained:
        if k in strict:
            down_values[k] = exceptional * up_polar[k].value()
        elif k == pivot:
            down_values[k] = exceptional
        else:
            down_values[k] = exceptional * complex(up_base[k])
    down_chart = Chart(len(up_base), {k: f"d{k}" for k in sorted(contained)}, unit)
    ctx = ChartContext(down_chart, multiplicities)
    polar = {k: PolarCoord(abs(v), v / abs(v)) for k, v in down_values.items()}
    return CplPoint(ctx, _downstairs_base(codim, pivot, up_base), polar)


def pullback_motivic_value(codim: int, multiplicities: Mapping[int, int], unit: UnitPoly,
                           pivot: int, up_base: Sequence[complex],
                           up_polar: Mapping[int, PolarCoord]) -> complex:
    """Value of the composed function at the upstairs point.

    The exceptional direction carries the sum of the divisor multiplicities;
    strict-transform coordinates keep their own.  Equality with ``f_mot`` of
    the ``sigma_alog_chart`` image is the commutativity of the blow-down
    diagram, and pins the exceptional multiplicity.
    """
    up_polar = {int(k): v for k, v in dict(up_polar).items()}
    contained, strict = _check_blowup_inputs(codim, multiplicities, pivot, up_base, up_polar)
    down_base = _downstairs_base(codim, pivot, up_base)
    effective_unit = unit(down_base)
    for k in contained - strict - {pivot}:
        effective_unit *= complex(up_base[k]) ** multiplicities[k]
    if abs(effective_unit) <= UNIT_CUTOFF:
        raise UnitVanishingError("unit vanishes at the base point")
    total_multiplicity = sum(multiplicities.values())
    value = effective_unit * up_polar[pivot].value() ** total_multiplicity
    for q in strict:
        value *= up_polar[q].value() ** multiplicities[q]
    return value


# ---------------------------------------------------------------------------
# fibre parametrization of the blow-down over a boundary point
# (plane geometry: one divisor through the origin, centre the origin)

@dataclass(frozen=True)
class FibreSample:
    """One point of the blow-down fibre over a boundary log point, together
    with its coordinate on the half-sphere {(w, rho): |w|^2 + rho^2 = 1,
    rho >= 0}: interior points (rho > 0) sit over the open exceptional line,
    boundary points (rho = 0) on the corner circle."""

    stratum: str
    position: complex | None
    phases: tuple[complex, ...]
    downstairs_phase: complex


def sigma_log_fibre_point(downstairs_phase: complex, w: complex, rho: float) -> FibreSample:
    """Decode a half-sphere coordinate into the fibre point over the given
    boundary phase."""
    if abs(abs(downstairs_phase) - 1.0) > PHASE_TOL:
        raise LogspaceError("downstairs phase must be unit modulus")
    if rho < 0 or abs(abs(w) ** 2 + rho**2 - 1.0) > 1e-9:
        raise LogspaceError("(w, rho) must lie on the unit half-sphere")
    theta = downstairs_phase
    if rho > 0:
        position = (w / rho) * theta.conjugate()
        return FibreSample("interior", position, (theta,), theta)
    exceptional_phase = w
    strict_phase = theta * w.conjugate()
    return FibreSample("boundary", None, (exceptional_phase, strict_phase),
                       exceptional_phase * strict_phase)


def sigma_log_fibre_coordinate(sample: FibreSample) -> tuple[complex, float]:
    """Encode a fibre point back into its half-sphere coordinate."""
    if sample.stratum == "interior":
        norm = math.hypot(abs(sample.position), 1.0)
        return sample.phases[0] * sample.position / norm, 1.0 / norm
    return sample.phases[0], 0.0


# ---------------------------------------------------------------------------
# point (de)serialization, used by the command line front end

def point_to_json(p: CplPoint) -> dict:
    return {
        "base": [[z.real, z.imag] for z in p.base],
        "polar": [
            {"i": coord, "r": "inf" if not pc.finite else pc.radius,
             "theta": [pc.phase.real, pc.phase.imag]}
            for coord, pc in p.polar
        ],
    }


def point_from_json(ctx: ChartContext, doc: dict) -> CplPoint:
    try:
        base = [complex(re, im) for re, im in doc["base"]]
        polar = {}
        for item in doc["polar"]:
            radius = math.inf if item["r"] == "inf" else float(item["r"])
            theta = complex(item["theta"][0], item["theta"][1])
            polar[int(item["i"])] = PolarCoord(radius, theta)
    except (KeyError, TypeError, ValueError) as exc:
        raise LogspaceError(f"bad point document: {exc}") from None
    return CplPoint(ctx, base, polar)
