"""Truncated power-series jets over exact coefficient fields.

A jet of level m holds e coordinate series, each as the m+1 coefficients of
1, t, ..., t^m.  Coefficients are exact rationals or prime-field integers;
products are truncated convolutions computed on the sparse support, which
makes monomial arcs (single-term coordinates) cheap to test for membership.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .equations import BinomialEquation, generators
from .errors import InputRangeError, NonMemberError
from .lattice import ToricSurface, cone_contains


class _AboveM:
    """Order marker for a series that vanishes identically mod t^(m+1)."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "ABOVE_M"


ABOVE_M = _AboveM()


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class CoefficientField:
    """Exact rationals (characteristic 0) or the prime field F_p.

    Coefficient arithmetic everywhere in this module is plain Python + and *;
    prime-field values are ints that are only interpreted through is_zero and
    normalize.  Deferring the reduction keeps enumeration loops free of
    per-operation modular arithmetic without changing any answer.
    """

    characteristic: int

    def __post_init__(self) -> None:
        if self.characteristic != 0 and not _is_prime(self.characteristic):
            raise InputRangeError(
                f"characteristic must be 0 or a prime, got {self.characteristic}"
            )

    @property
    def zero(self):
        return 0 if self.characteristic else Fraction(0)

    @property
    def one(self):
        return 1 if self.characteristic else Fraction(1)

    def is_zero(self, x) -> bool:
        if self.characteristic:
            return x % self.characteristic == 0
        return x == 0

    def normalize(self, x):
        """Canonical representative: a reduced Fraction, or an int in 0..p-1."""
        if self.characteristic:
            return int(x) % self.characteristic
        return Fraction(x)

    def elements(self):
        """All field elements, finite characteristic only."""
        if not self.characteristic:
            raise InputRangeError("cannot enumerate a characteristic 0 field")
        return range(self.characteristic)


RATIONALS = CoefficientField(0)


def prime_field(p: int) -> CoefficientField:
    """The field F_p; rejects a composite or unit characteristic."""
    if not _is_prime(p):
        raise InputRangeError(f"field characteristic must be prime, got {p}")
    return CoefficientField(p)


@dataclass(frozen=True)
class TruncatedJet:
    """e coordinate series, each stored as m+1 coefficients.

    The direct constructor accepts any ring representatives of the intended
    field elements (ints stand in for both rationals and residues); build()
    normalizes into the field first.  Orders and membership go through
    field.is_zero, so unreduced residues are interpreted correctly.
    """

    field: CoefficientField
    m: int
    coords: tuple[tuple, ...]

    def __post_init__(self) -> None:
        if self.m < 0:
            raise InputRangeError(f"jet level must be >= 0, got {self.m}")
        coords = tuple(tuple(row) for row in self.coords)
        object.__setattr__(self, "coords", coords)
        for row in coords:
            if len(row) != self.m + 1:
                raise InputRangeError(
                    f"every coordinate needs m+1 = {self.m + 1} coefficients, got {len(row)}"
                )

    @classmethod
    def build(cls, field: CoefficientField, m: int, coords) -> "TruncatedJet":
        rows = tuple(tuple(field.normalize(c) for c in row) for row in coords)
        return cls(field, m, rows)

    @property
    def e(self) -> int:
        return len(self.coords)


def coordinate_order(jet: TruncatedJet, j: int):
    """Least b with a nonzero t^b coefficient in coordinate j (1-based), else ABOVE_M."""
    if not 1 <= j <= jet.e:
        raise InputRangeError(f"coordinate index must be in 1..{jet.e}, got {j}")
    is_zero = jet.field.is_zero
    for b, c in enumerate(jet.coords[j - 1]):
        if not is_zero(c):
            return b
    return ABOVE_M


def _sparse_rows(jet: TruncatedJet) -> list[tuple]:
    """Each coordinate as its nonzero (degree, coefficient) pairs, degree ascending."""
    return [tuple((d, c) for d, c in enumerate(row) if c) for row in jet.coords]


def _mono_sparse(exponents, rows, m: int, one=1):
    """Sparse terms of prod_k x_k^{a_k} on the given rows, truncated past t^m.

    The seed 1 is a valid representative in every characteristic; reduction
    is deferred to the caller's is_zero.
    """
    acc = ((0, one),)
    for idx, a in enumerate(exponents):
        if not a:
            continue
        row = rows[idx]
        if not row:
            return ()
        if len(row) == 1:
            d2, c2 = row[0]
            shift = d2 * a
            scale = c2 ** a
            acc = tuple(
                (d1 + shift, c1 * scale) for d1, c1 in acc if d1 + shift <= m
            )
            if not acc:
                return ()
            continue
        for _ in range(a):
            merged: dict = {}
            for d1, c1 in acc:
                for d2, c2 in row:
                    d = d1 + d2
                    if d > m:
                        break  # row degrees ascend
                    merged[d] = merged.get(d, 0) + c1 * c2
            if not merged:
                return ()
            acc = tuple(merged.items())
    return acc


def evaluate(eq: BinomialEquation, jet: TruncatedJet) -> tuple:
    """The series of eq along the jet: plus monomial minus minus monomial.

    Returned coefficients are unreduced; test them with jet.field.is_zero.
    """
    if len(eq.plus_exponents) != jet.e:
        raise InputRangeError(
            f"equation has {len(eq.plus_exponents)} variables, jet has {jet.e}"
        )
    m = jet.m
    rows = _sparse_rows(jet)
    out = [0] * (m + 1)
    for d, c in _mono_sparse(eq.plus_exponents, rows, m):
        out[d] = out[d] + c
    for d, c in _mono_sparse(eq.minus_exponents, rows, m):
        out[d] = out[d] - c
    return tuple(out)


def is_member(jet: TruncatedJet, surface: ToricSurface) -> bool:
    """True iff every defining binomial vanishes along the jet mod t^(m+1)."""
    rows = _sparse_rows(jet)
    m = jet.m
    is_zero = jet.field.is_zero
    for eq in generators(surface):
        diff: dict = {}
        for d, c in _mono_sparse(eq.plus_exponents, rows, m):
            diff[d] = diff.get(d, 0) + c
        for d, c in _mono_sparse(eq.minus_exponents, rows, m):
            diff[d] = diff.get(d, 0) - c
        for c in diff.values():
            if not is_zero(c):
                return False
    return True


def truncate(jet: TruncatedJet, m_target: int) -> TruncatedJet:
    """Drop all coefficients above t^m_target; membership survives truncation."""
    if m_target > jet.m:
        raise InputRangeError(
            f"cannot truncate a level {jet.m} jet up to level {m_target}"
        )
    if m_target < 0:
        raise InputRangeError(f"target level must be >= 0, got {m_target}")
    rows = tuple(row[: m_target + 1] for row in jet.coords)
    return TruncatedJet(jet.field, m_target, rows)


def monomial_arc(
    surface: ToricSurface, v, m: int, field: CoefficientField = RATIONALS
) -> TruncatedJet:
    """The jet whose coordinate j is t^{<u_j, v>}, truncated at level m.

    Requires v in sigma, which makes every pairing non-negative; a pairing
    above m leaves that coordinate identically zero.  The result satisfies
    every defining binomial because the two monomials of a binomial share
    the same dual-lattice degree, hence the same t-order along the arc.
    """
    if m < 0:
        raise InputRangeError(f"jet level must be >= 0, got {m}")
    v = (int(v[0]), int(v[1]))
    if not cone_contains(surface.cone, v):
        raise InputRangeError(
            f"v={v} is outside the cone of (p, q) = ({surface.p}, {surface.q})"
        )
    rows = []
    for j in range(1, surface.e + 1):
        d = surface.pairing(j, v)
        # int 0/1 are valid representatives in every characteristic and keep
        # the witness suite on native integer arithmetic
        row = [0] * (m + 1)
        if d <= m:
            row[d] = 1
        rows.append(tuple(row))
    return TruncatedJet(field, m, tuple(rows))


def contact_profile(jet: TruncatedJet, surface: ToricSurface):
    """Orders of all e coordinates, plus the fiber flag.

    Returns (profile, over_singular_point): the tuple of coordinate orders
    and True iff no order is 0, i.e. the jet starts at the singular point.
    Raises NonMemberError when the jet fails the surface equations: contact
    loci only make sense inside the jet scheme.
    """
    if not is_member(jet, surface):
        raise NonMemberError("jet does not satisfy the surface equations")
    profile = tuple(coordinate_order(jet, j) for j in range(1, jet.e + 1))
    over = all(o is ABOVE_M or o >= 1 for o in profile)
    return profile, over
