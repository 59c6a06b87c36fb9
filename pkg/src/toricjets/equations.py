"""Binomial generators of the surface ideal, held as exponent vectors.

The surface in affine e-space is cut out by the binomials
x_i x_j - x_{i+1}^{c_{i+1}-1} (prod_{k=i+2}^{j-2} x_k^{c_k-2}) x_{j-1}^{c_{j-1}-1}
over all pairs 1 <= i < j-1 <= e-1.  Keeping them as exponent vectors makes
evaluation on truncated jets plain integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import InputRangeError
from .lattice import ToricSurface


@dataclass(frozen=True)
class BinomialEquation:
    """The binomial x_i x_j minus the monomial given by minus_exponents.

    Indices are 1-based.  plus_exponents is forced to be exactly the
    exponent vector of x_i x_j, and the minus monomial may only involve
    the variables strictly between i and j.
    """

    i: int
    j: int
    plus_exponents: tuple[int, ...]
    minus_exponents: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "plus_exponents", tuple(self.plus_exponents))
        object.__setattr__(self, "minus_exponents", tuple(self.minus_exponents))
        e = len(self.plus_exponents)
        if len(self.minus_exponents) != e:
            raise InputRangeError("exponent vectors must have equal length")
        if not (1 <= self.i and self.i < self.j - 1 and self.j <= e):
            raise InputRangeError(
                f"need 1 <= i < j-1 <= {e - 1}, got i={self.i} j={self.j}"
            )
        expected = [0] * e
        expected[self.i - 1] = 1
        expected[self.j - 1] = 1
        if list(self.plus_exponents) != expected:
            raise InputRangeError("plus monomial must be exactly x_i * x_j")
        for k, a in enumerate(self.minus_exponents, start=1):
            if a < 0:
                raise InputRangeError(f"negative exponent {a} at position {k}")
            if a and not self.i < k < self.j:
                raise InputRangeError(
                    f"minus monomial may only use x_{self.i + 1}..x_{self.j - 1}"
                )


@lru_cache(maxsize=None)
def generators(surface: ToricSurface) -> tuple[BinomialEquation, ...]:
    """All (e-1)(e-2)/2 defining binomials, ordered by (i, j).

    For j = i + 2 the two end factors of the minus monomial land on the same
    variable, collapsing the product to the single factor x_{i+1}^{c_{i+1}}.
    """
    e = surface.e
    eqs = []
    for i in range(1, e - 1):
        for j in range(i + 2, e + 1):
            plus = [0] * e
            plus[i - 1] = 1
            plus[j - 1] = 1
            minus = [0] * e
            if j == i + 2:
                minus[i] = surface.c(i + 1)
            else:
                minus[i] = surface.c(i + 1) - 1
                minus[j - 2] = surface.c(j - 1) - 1
                for k in range(i + 2, j - 1):
                    minus[k - 1] = surface.c(k) - 2
            eqs.append(BinomialEquation(i, j, tuple(plus), tuple(minus)))
    return tuple(eqs)


def grading_check(surface: ToricSurface, eq: BinomialEquation) -> bool:
    """True iff both monomials of eq have the same degree in the dual lattice.

    The common degree of x_i x_j is u_i + u_j; equality with the minus
    monomial's degree is what makes every monomial arc satisfy the equation.
    """
    lhs = [0, 0]
    rhs = [0, 0]
    for k in range(1, surface.e + 1):
        ux, uy = surface.u(k)
        a = eq.plus_exponents[k - 1]
        b = eq.minus_exponents[k - 1]
        lhs[0] += a * ux
        lhs[1] += a * uy
        rhs[0] += b * ux
        rhs[1] += b * uy
    return lhs == rhs
