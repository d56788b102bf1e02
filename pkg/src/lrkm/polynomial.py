"""Polynomials on [0, 1] in the shifted Legendre basis.

A :class:`Polynomial` stores coefficients ``a_0 .. a_d`` with

.. math:: p(x) = \\sum_n a_n P_n(x),

where ``P_n`` is the shifted Legendre polynomial of degree ``n`` on [0, 1].
Inner products are the exact diagonal sums implied by orthogonality of the
family, so no quadrature is ever involved.  The monomial form is only a
derived view; it is badly conditioned (coefficients of ``P_n`` grow roughly
like ``5.8**n``) and is therefore offered in exact rational arithmetic.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np
from numpy.polynomial import legendre as npleg

__all__ = [
    "Polynomial",
    "shifted_legendre",
    "shifted_legendre_monomial",
    "inner_product",
    "norm",
    "evaluate",
    "to_monomial",
    "from_monomial",
    "derivative",
    "multiply",
    "monomial_to_legendre_matrix",
]


def _as_coeffs(coeffs) -> np.ndarray:
    arr = np.array(coeffs, dtype=float).reshape(-1)
    if arr.size == 0:
        arr = np.zeros(1)
    arr.setflags(write=False)
    return arr


class Polynomial:
    """Immutable polynomial on [0, 1] in shifted Legendre coefficients.

    Parameters
    ----------
    coeffs : array_like
        Legendre coefficients ``a_0 .. a_d``.  Trailing zeros are kept, so
        ``degree_bound`` is ``len(coeffs) - 1`` rather than the true degree.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[float]):
        self._coeffs = _as_coeffs(coeffs)

    @property
    def coeffs(self) -> np.ndarray:
        return self._coeffs

    @property
    def degree_bound(self) -> int:
        return self._coeffs.size - 1

    @classmethod
    def zero(cls, degree_bound: int = 0) -> "Polynomial":
        return cls(np.zeros(degree_bound + 1))

    @classmethod
    def constant(cls, value: float) -> "Polynomial":
        return cls([value])

    @classmethod
    def affine(cls, at0: float, at1: float) -> "Polynomial":
        """The straight line through ``(0, at0)`` and ``(1, at1)``."""
        # a0 + a1 (2x - 1): a0 - a1 = at0, a0 + a1 = at1
        return cls([(at0 + at1) / 2.0, (at1 - at0) / 2.0])

    def __call__(self, x):
        return evaluate(self, x)

    def __repr__(self) -> str:
        return f"Polynomial({np.array2string(self._coeffs, precision=6)})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = _pad(self._coeffs, other._coeffs)
        return bool(np.array_equal(a, b))

    __hash__ = None  # type: ignore[assignment]

    def __neg__(self) -> "Polynomial":
        return Polynomial(-self._coeffs)

    def __add__(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            a, b = _pad(self._coeffs, other._coeffs)
            return Polynomial(a + b)
        if np.isscalar(other):
            c = self._coeffs.copy()
            c[0] += other
            return Polynomial(c)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other) -> "Polynomial":
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return multiply(self, other)
        if np.isscalar(other):
            return Polynomial(self._coeffs * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Polynomial":
        if np.isscalar(other):
            return Polynomial(self._coeffs / other)
        return NotImplemented

    def derivative(self, r: int = 1) -> "Polynomial":
        return derivative(self, r)

    def inner(self, other: "Polynomial") -> float:
        return inner_product(self, other)

    def norm(self) -> float:
        return norm(self)

    def to_monomial(self, exact: bool = True):
        return to_monomial(self, exact=exact)


def _pad(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = max(a.size, b.size)
    if a.size < n:
        a = np.concatenate([a, np.zeros(n - a.size)])
    if b.size < n:
        b = np.concatenate([b, np.zeros(n - b.size)])
    return a, b


@lru_cache(maxsize=None)
def shifted_legendre_monomial(n: int) -> tuple[int, ...]:
    """Integer monomial coefficients of ``P_n`` built from the three-term recurrence.

    ``(n+1) P_{n+1} = (2n+1)(2x-1) P_n - n P_{n-1}`` with ``P_0 = 1`` and
    ``P_1 = 2x - 1``.  The division by ``n + 1`` is exact over the integers.
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    if n == 0:
        return (1,)
    if n == 1:
        return (-1, 2)
    prev = list(shifted_legendre_monomial(n - 2))
    cur = list(shifted_legendre_monomial(n - 1))
    k = n - 1
    # (2x - 1) * cur
    shifted = [0] * (n + 1)
    for i, c in enumerate(cur):
        shifted[i] -= c
        shifted[i + 1] += 2 * c
    out = []
    for i in range(n + 1):
        num = (2 * k + 1) * shifted[i] - k * (prev[i] if i < len(prev) else 0)
        q, rem = divmod(num, n)
        assert rem == 0
        out.append(q)
    return tuple(out)


def shifted_legendre(n: int) -> Polynomial:
    """Return ``P_n`` as a Polynomial (the ``n``-th unit coefficient vector)."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    c = np.zeros(n + 1)
    c[n] = 1.0
    return Polynomial(c)


def _weights(n: int) -> np.ndarray:
    return 1.0 / (2.0 * np.arange(n) + 1.0)


def inner_product(p: Polynomial, q: Polynomial) -> float:
    """Exact L2(0, 1) inner product ``sum a_n b_n / (2n + 1)``."""
    a, b = _pad(p.coeffs, q.coeffs)
    return math.fsum(a * b * _weights(a.size))


def norm(p: Polynomial) -> float:
    return math.sqrt(inner_product(p, p))


def evaluate(p: Polynomial, x):
    """Evaluate ``p`` at ``x`` (scalar or array) by Clenshaw recurrence."""
    t = 2.0 * np.asarray(x, dtype=float) - 1.0
    out = npleg.legval(t, p.coeffs)
    if np.ndim(out) == 0:
        return float(out)
    return out


def derivative(p: Polynomial, r: int = 1) -> Polynomial:
    """r-th classical derivative; the degree bound drops by ``r`` (never below 0)."""
    if r < 0:
        raise ValueError("derivative order must be non-negative")
    if r == 0:
        return p
    if r > p.degree_bound:
        return Polynomial.zero()
    # d/dx = 2 d/dt under t = 2x - 1
    return Polynomial(npleg.legder(p.coeffs, r, scl=2.0))


def multiply(p: Polynomial, q: Polynomial) -> Polynomial:
    """Product of two polynomials, linearised directly in the Legendre basis."""
    return Polynomial(npleg.legmul(p.coeffs, q.coeffs))


def to_monomial(p: Polynomial, exact: bool = True) -> list:
    """Monomial coefficients ``c_0 .. c_d`` with ``p(x) = sum c_k x^k``.

    By default the coefficients are :class:`Fraction` values computed without
    rounding from the (binary) Legendre coefficients, so a round trip through
    :func:`from_monomial` is exact up to the final rounding.  With
    ``exact=False`` each coefficient is that value correctly rounded to a
    float; note that evaluating the rounded form loses about ``0.75 * degree``
    digits (5e-6 absolute at degree 16).
    """
    d = p.degree_bound
    acc = [Fraction(0)] * (d + 1)
    for n, a in enumerate(p.coeffs):
        if a == 0.0:
            continue
        fa = Fraction(float(a))
        for k, c in enumerate(shifted_legendre_monomial(n)):
            acc[k] += fa * c
    if exact:
        return acc
    return [float(c) for c in acc]


@lru_cache(maxsize=None)
def _monomial_in_legendre(k: int) -> tuple[Fraction, ...]:
    # x^k = sum_n (2n+1) (k!)^2 / ((k-n)! (k+n+1)!) P_n(x)
    fk = math.factorial(k)
    return tuple(
        Fraction((2 * n + 1) * fk * fk, math.factorial(k - n) * math.factorial(k + n + 1))
        for n in range(k + 1)
    )


def monomial_to_legendre_matrix(d: int) -> np.ndarray:
    """Matrix ``T`` with ``T[n, k]`` the ``P_n`` coefficient of ``x^k`` (float view)."""
    T = np.zeros((d + 1, d + 1))
    for k in range(d + 1):
        for n, v in enumerate(_monomial_in_legendre(k)):
            T[n, k] = float(v)
    return T


def from_monomial(coeffs: Sequence) -> Polynomial:
    """Inverse of :func:`to_monomial`.

    The change of basis uses the closed-form (positive, rational) expansion
    of ``x^k`` and is accumulated exactly, so only the final rounding of each
    Legendre coefficient is inexact.
    """
    d = len(coeffs) - 1
    acc = [Fraction(0)] * (d + 1)
    for k, c in enumerate(coeffs):
        fc = c if isinstance(c, Fraction) else Fraction(float(c))
        if fc == 0:
            continue
        for n, t in enumerate(_monomial_in_legendre(k)):
            acc[n] += fc * t
    return Polynomial([float(a) for a in acc])
