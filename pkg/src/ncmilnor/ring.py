"""Exact arithmetic for Grothendieck-ring bookkeeping.

Three value types live here, all with exact integer coefficients:

* ``LefschetzPoly``, a polynomial in the Lefschetz class L (the class of the
  affine line).  Coefficients are arbitrary-precision integers indexed by the
  power of L, stored with no trailing zeros.  Only nonnegative powers exist:
  classes are kept in Z[L], never in a localisation, so inverting L is
  impossible by construction.

* ``KeyedClass``, a finite map from a positive integer key (a monodromy
  order, the gcd of the multiplicities along a stratum) to a LefschetzPoly.
  Equality is plain keywise equality.  This is a diagnostic representation:
  the underlying equivariant ring identifies some keyed elements that this
  type keeps distinct, and no decision procedure for that finer equality is
  known.  Zero entries are dropped.

* ``ZetaFactorization``, a finite product of factors (1 - t^N)^e with
  integer exponents, in normal form (orders strictly increasing, exponents
  nonzero).  Equality of the rational functions they represent is decided
  exactly by clearing negative exponents and comparing polynomial products.

Realizations of LefschetzPoly: ``euler_realization`` evaluates at L = 1
(compactly supported Euler characteristic) and ``e_polynomial`` substitutes
L -> u*v (the Hodge-Deligne E-polynomial of a mixed-Tate class), landing in
``UVPoly``, a small exact bivariate polynomial type.

Everything is immutable and side-effect free.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping, Sequence, Tuple


# ---------------------------------------------------------------------------
# low-level coefficient-list arithmetic (shared by LefschetzPoly and the
# zeta-factorization comparison, both of which are Z[x] under the hood)

def _trim(coeffs: list[int]) -> tuple[int, ...]:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


def _add(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def _mul(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return _trim(out)


def _pow(a: Sequence[int], n: int) -> tuple[int, ...]:
    result: tuple[int, ...] = (1,)
    base = _trim(list(a))
    while n:
        if n & 1:
            result = _mul(result, base)
        base = _mul(base, base)
        n >>= 1
    return result


class LefschetzPoly:
    """A polynomial in the Lefschetz class L, with exact integer coefficients.

    ``coeffs[k]`` is the coefficient of L^k.  The stored tuple never has a
    trailing zero; the zero polynomial stores the empty tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        values = list(coeffs)
        for c in values:
            if not isinstance(c, int):
                raise TypeError(f"coefficients must be exact integers, got {c!r}")
        object.__setattr__(self, "coeffs", _trim(values))

    def __setattr__(self, name, value):
        raise AttributeError("LefschetzPoly is immutable")

    # -- constructors

    @staticmethod
    def zero() -> "LefschetzPoly":
        return LefschetzPoly()

    @staticmethod
    def one() -> "LefschetzPoly":
        return LefschetzPoly((1,))

    @staticmethod
    def monomial(power: int, coeff: int = 1) -> "LefschetzPoly":
        """coeff * L^power.  Negative powers are rejected: the ring is Z[L]."""
        if power < 0:
            raise ValueError(f"negative power of L rejected: {power}")
        return LefschetzPoly((0,) * power + (coeff,))

    # -- structure

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree in L; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def leading_coefficient(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def coefficient(self, power: int) -> int:
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return 0

    # -- ring operations

    def __add__(self, other: "LefschetzPoly") -> "LefschetzPoly":
        return _wrap(_add(self.coeffs, other.coeffs))

    def __neg__(self) -> "LefschetzPoly":
        return _wrap(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "LefschetzPoly") -> "LefschetzPoly":
        return _wrap(_add(self.coeffs, tuple(-c for c in other.coeffs)))

    def __mul__(self, other) -> "LefschetzPoly":
        if isinstance(other, int):
            return _wrap(_trim([other * c for c in self.coeffs]))
        return _wrap(_mul(self.coeffs, other.coeffs))

    def __rmul__(self, other: int) -> "LefschetzPoly":
        return self.__mul__(other)

    def __pow__(self, n: int) -> "LefschetzPoly":
        if n < 0:
            raise ValueError("negative powers are not defined in Z[L]")
        return _wrap(_pow(self.coeffs, n))

    def __eq__(self, other) -> bool:
        return isinstance(other, LefschetzPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("LefschetzPoly", self.coeffs))

    def __bool__(self) -> bool:
        return not self.is_zero

    def evaluate(self, value: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    # -- textual form: `c0 + c1*L + c2*L^2 + ...`, zero terms skipped

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            elif k == 1:
                parts.append(f"{c}*L")
            else:
                parts.append(f"{c}*L^{k}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"LefschetzPoly({self.coeffs!r})"


def _wrap(coeffs: tuple[int, ...]) -> LefschetzPoly:
    p = LefschetzPoly.__new__(LefschetzPoly)
    object.__setattr__(p, "coeffs", coeffs)
    return p


#: The Lefschetz class itself.
L = LefschetzPoly.monomial(1)
ZERO = LefschetzPoly.zero()
ONE = LefschetzPoly.one()


def lefschetz_arith(a: LefschetzPoly, b: LefschetzPoly, op: str) -> LefschetzPoly:
    """Apply ``op`` in {"add", "sub", "mul"} to two polynomials, exactly."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def euler_realization(p: LefschetzPoly) -> int:
    """Evaluate at L = 1, the compactly supported Euler characteristic."""
    return p.evaluate(1)


class UVPoly:
    """Exact bivariate integer polynomial in (u, v), as a term map."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Tuple[int, int], int] = ()):
        cleaned = {}
        for (i, j), c in dict(terms).items():
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent in UVPoly term ({i},{j})")
            if not isinstance(c, int):
                raise TypeError("UVPoly coefficients must be integers")
            if c != 0:
                cleaned[(i, j)] = c
        object.__setattr__(self, "terms", dict(cleaned))

    def __setattr__(self, name, value):
        raise AttributeError("UVPoly is immutable")

    def __add__(self, other: "UVPoly") -> "UVPoly":
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) + c
        return UVPoly(out)

    def __sub__(self, other: "UVPoly") -> "UVPoly":
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) - c
        return UVPoly(out)

    def __mul__(self, other: "UVPoly") -> "UVPoly":
        out: dict[tuple[int, int], int] = {}
        for (i, j), c in self.terms.items():
            for (k, l), d in other.terms.items():
                key = (i + k, j + l)
                out[key] = out.get(key, 0) + c * d
        return UVPoly(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, UVPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(("UVPoly", tuple(sorted(self.terms.items()))))

    def evaluate(self, u: int, v: int) -> int:
        return sum(c * u**i * v**j for (i, j), c in self.terms.items())

    def is_symmetric(self) -> bool:
        return all(self.terms.get((j, i), 0) == c for (i, j), c in self.terms.items())

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (i, j), c in sorted(self.terms.items()):
            mon = "".join(
                [f"u^{i}" if i > 1 else "u" if i == 1 else "",
                 f"v^{j}" if j > 1 else "v" if j == 1 else ""])
            parts.append(f"{c}*{mon}" if mon else str(c))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"UVPoly({self.terms!r})"


def e_polynomial(p: LefschetzPoly) -> UVPoly:
    """Substitute L -> u*v.  Symmetric in (u, v) by construction."""
    return UVPoly({(k, k): c for k, c in enumerate(p.coeffs) if c != 0})


class KeyedClass:
    """A finite family of LefschetzPoly values indexed by monodromy order.

    Keys are positive integers; entries holding the zero polynomial are
    dropped on construction.  Equality is keywise.  Note that this is a
    non-canonical diagnostic: keyed values that the equivariant ring
    identifies can compare unequal here, and in particular the keyed data of
    a model is NOT invariant under blow-ups (only its realizations are).
    """

    __slots__ = ("entries",)

    def __init__(self, entries: Mapping[int, LefschetzPoly] = ()):
        cleaned = {}
        for key, poly in dict(entries).items():
            if not isinstance(key, int) or key < 1:
                raise ValueError(f"keys must be positive integers, got {key!r}")
            if not isinstance(poly, LefschetzPoly):
                raise TypeError("entries must be LefschetzPoly values")
            if not poly.is_zero:
                cleaned[key] = poly
        object.__setattr__(self, "entries", dict(cleaned))

    def __setattr__(self, name, value):
        raise AttributeError("KeyedClass is immutable")

    def __eq__(self, other) -> bool:
        return isinstance(other, KeyedClass) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(("KeyedClass", tuple(sorted((k, p.coeffs) for k, p in self.entries.items()))))

    def __bool__(self) -> bool:
        return bool(self.entries)

    def __iter__(self) -> Iterator[tuple[int, LefschetzPoly]]:
        return iter(sorted(self.entries.items()))

    def get(self, key: int) -> LefschetzPoly:
        return self.entries.get(key, ZERO)

    def __str__(self) -> str:
        if not self.entries:
            return "{}"
        inner = ", ".join(f"{k}: {p}" for k, p in self)
        return "{" + inner + "}"

    def __repr__(self) -> str:
        return f"KeyedClass({self.entries!r})"


def keyed_combine(a: KeyedClass, b: KeyedClass, op: str) -> KeyedClass:
    """Keywise add or sub; entries that cancel to zero are dropped."""
    if op not in ("add", "sub"):
        raise ValueError(f"unknown operation {op!r}")
    out = dict(a.entries)
    for key, poly in b.entries.items():
        current = out.get(key, ZERO)
        out[key] = current + poly if op == "add" else current - poly
    return KeyedClass(out)


class ZetaFactorization:
    """A product of factors (1 - t^N)^e, kept in normal form.

    Orders N are positive integers, exponents e are nonzero integers, and
    factors are sorted by strictly increasing order.  Construction normalizes
    an arbitrary multiset of (order, exponent) pairs.
    """

    __slots__ = ("factors",)

    def __init__(self, factors: Iterable[tuple[int, int]] = ()):
        merged: dict[int, int] = {}
        for order, exponent in factors:
            if not isinstance(order, int) or order < 1:
                raise ValueError(f"orders must be positive integers, got {order!r}")
            if not isinstance(exponent, int):
                raise TypeError("exponents must be integers")
            merged[order] = merged.get(order, 0) + exponent
        normal = tuple((n, e) for n, e in sorted(merged.items()) if e != 0)
        object.__setattr__(self, "factors", normal)

    def __setattr__(self, name, value):
        raise AttributeError("ZetaFactorization is immutable")

    def __eq__(self, other) -> bool:
        """Normal-form equality; coincides with rational-function equality."""
        return isinstance(other, ZetaFactorization) and self.factors == other.factors

    def __hash__(self) -> int:
        return hash(("ZetaFactorization", self.factors))

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.factors)

    def __bool__(self) -> bool:
        return bool(self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " ".join(f"(1-t^{n})^{e}" for n, e in self.factors)

    def __repr__(self) -> str:
        return f"ZetaFactorization({list(self.factors)!r})"


def zeta_normalize(z: ZetaFactorization) -> ZetaFactorization:
    """Merge equal orders, drop zero exponents, sort by order.

    Construction already normalizes, so this is the identity on the type;
    it exists so that callers holding raw factor lists have a named entry
    point: ``zeta_normalize(ZetaFactorization(pairs))``.
    """
    return ZetaFactorization(z.factors)


def _one_minus_t_power(order: int) -> tuple[int, ...]:
    return _trim([1] + [0] * (order - 1) + [-1])


def zeta_equal(a: ZetaFactorization, b: ZetaFactorization) -> bool:
    """Exact equality of the rational functions prod (1 - t^N)^e.

    Negative-exponent factors are moved across the equality and the two
    resulting polynomial products are compared coefficientwise.
    """
    lhs: tuple[int, ...] = (1,)
    rhs: tuple[int, ...] = (1,)
    for order, exponent in a:
        if exponent > 0:
            lhs = _mul(lhs, _pow(_one_minus_t_power(order), exponent))
        else:
            rhs = _mul(rhs, _pow(_one_minus_t_power(order), -exponent))
    for order, exponent in b:
        if exponent > 0:
            rhs = _mul(rhs, _pow(_one_minus_t_power(order), exponent))
        else:
            lhs = _mul(lhs, _pow(_one_minus_t_power(order), -exponent))
    return lhs == rhs
