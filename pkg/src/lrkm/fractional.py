"""Caputo derivatives of polynomials and the Riemann-Liouville power rule.

The Caputo derivative of order ``alpha`` (``n - 1 < alpha <= n``) is

.. math:: {}^cD^\\alpha y(x) = \\frac{1}{\\Gamma(n-\\alpha)}
          \\int_0^x (x-r)^{n-\\alpha-1} y^{(n)}(r)\\,dr .

On monomials it acts as ``x^k -> Gamma(k+1)/Gamma(k+1-alpha) x^(k-alpha)`` for
``k >= n`` and annihilates ``x^k`` with ``k < n``.

Three evaluation routes are provided for non-integer orders:

``"jacobi"``
    Gauss-Jacobi quadrature of the integral above applied to the classical
    ``n``-th derivative.  The rule is exact for polynomials, and the
    integrand is evaluated in the Legendre basis, so no cancellation occurs.
    Default in standard precision.
``"exact"``
    Termwise power rule on the monomial expansion, accumulated in rational
    arithmetic; only the final scaling by ``x^-alpha / Gamma(n+1-alpha)`` is
    rounded.  Default in extended precision.
``"monomial"``
    Termwise power rule in floating point with compensated summation.  Loses
    roughly ``0.75 * degree`` digits to cancellation; kept for comparison.

Integer orders always use the classical derivative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.special import roots_jacobi

from . import precision as _precision
from .errors import DomainError
from .polynomial import Polynomial, derivative, evaluate, to_monomial

__all__ = [
    "FractionalOrder",
    "log_gamma",
    "gamma_ratio",
    "caputo_monomial",
    "caputo_polynomial_at",
    "rl_integral_monomial",
    "METHODS",
]

METHODS = ("jacobi", "exact", "monomial")


@dataclass(frozen=True)
class FractionalOrder:
    """Derivative order ``alpha > 0`` together with ``n = ceil(alpha)``."""

    alpha: float

    def __post_init__(self):
        a = float(self.alpha)
        if not math.isfinite(a) or a <= 0.0:
            raise DomainError(f"fractional order must be positive, got {self.alpha!r}")
        object.__setattr__(self, "alpha", a)

    @property
    def ceil_n(self) -> int:
        return math.ceil(self.alpha)

    @property
    def is_integer(self) -> bool:
        return self.alpha == self.ceil_n

    @classmethod
    def coerce(cls, alpha) -> "FractionalOrder":
        return alpha if isinstance(alpha, cls) else cls(alpha)

    def __float__(self) -> float:
        return self.alpha


def log_gamma(z: float) -> float:
    """Natural logarithm of the Gamma function for ``z > 0``."""
    z = float(z)
    if not z > 0.0:
        raise DomainError(f"log_gamma requires z > 0, got {z!r}")
    return math.lgamma(z)


def gamma_ratio(num: float, den: float) -> float:
    """``Gamma(num) / Gamma(den)`` computed through log-Gamma (no overflow)."""
    return math.exp(log_gamma(num) - log_gamma(den))


def caputo_monomial(k: int, alpha, x: float) -> float:
    """Caputo derivative of ``x**k`` evaluated at ``x``."""
    order = FractionalOrder.coerce(alpha)
    a = order.alpha
    if k < 0:
        raise DomainError("monomial degree must be non-negative")
    if k < order.ceil_n:
        return 0.0
    if order.is_integer:
        n = order.ceil_n
        return float(math.perm(k, n)) * x ** (k - n)
    if x < 0.0:
        raise DomainError("fractional power of a negative argument")
    if x == 0.0:
        return 0.0  # k - alpha > 0 here
    return gamma_ratio(k + 1, k - a + 1) * x ** (k - a)


def rl_integral_monomial(gamma: float, alpha: float, x: float) -> float:
    """Riemann-Liouville integral ``J^alpha x^gamma`` evaluated at ``x``."""
    if not gamma > -1.0:
        raise DomainError("power must satisfy gamma > -1")
    if alpha < 0.0:
        raise DomainError("integration order must be non-negative")
    if not x > 0.0:
        raise DomainError("x must be positive")
    if alpha == 0.0:
        return x**gamma
    return gamma_ratio(gamma + 1, alpha + gamma + 1) * x ** (alpha + gamma)


@lru_cache(maxsize=64)
def _jacobi_rule(npts: int, a: float) -> tuple[np.ndarray, np.ndarray]:
    s, w = roots_jacobi(npts, a, 0.0)
    return s, w


def _caputo_jacobi(p: Polynomial, order: FractionalOrder, x: np.ndarray) -> np.ndarray:
    n = order.ceil_n
    dp = derivative(p, n)
    npts = max(1, (dp.degree_bound + 2) // 2)
    a = n - order.alpha
    s, w = _jacobi_rule(npts, a - 1.0)
    nodes = x[:, None] * (1.0 + s[None, :]) / 2.0
    vals = evaluate(dp, nodes)
    integral = vals @ w
    return (x / 2.0) ** a * integral / math.gamma(a)


@lru_cache(maxsize=64)
def _exact_factors(alpha: float, n: int, d: int) -> tuple[Fraction, ...]:
    # f_k = k! / prod_{j=n+1}^{k} (j - alpha), so that
    # Gamma(k+1)/Gamma(k+1-alpha) = f_k / Gamma(n+1-alpha)
    fa = Fraction(alpha)
    out = [Fraction(math.factorial(n))]
    for k in range(n + 1, d + 1):
        out.append(out[-1] * k / (k - fa))
    return tuple(out)


def _caputo_exact_scalar(cm: list[Fraction], order: FractionalOrder, x: float) -> float:
    n = order.ceil_n
    d = len(cm) - 1
    if d < n:
        return 0.0
    factors = _exact_factors(order.alpha, n, d)
    fx = Fraction(x)
    xp = fx**n
    acc = Fraction(0)
    for k in range(n, d + 1):
        if cm[k]:
            acc += cm[k] * factors[k - n] * xp
        xp *= fx
    return float(acc) * x ** (-order.alpha) / math.gamma(n + 1 - order.alpha)


def _caputo_monomial_scalar(cm: list[float], order: FractionalOrder, x: float) -> float:
    return math.fsum(
        c * caputo_monomial(k, order, x) for k, c in enumerate(cm) if k >= order.ceil_n
    )


def caputo_polynomial_at(p: Polynomial, alpha, x, method: str | None = None,
                         precision: str | None = None):
    """Caputo derivative of ``p`` of order ``alpha`` evaluated at ``x``.

    Parameters
    ----------
    p : Polynomial
        Polynomial in shifted Legendre form.
    alpha : float or FractionalOrder
        Derivative order, ``alpha > 0``.
    x : float or array_like
        Evaluation point(s) in [0, 1].  At ``x = 0`` a non-integer order
        returns the limit, which is zero for every polynomial.
    method : {"jacobi", "exact", "monomial"}, optional
        Evaluation route for non-integer orders.  Defaults to ``"jacobi"`` in
        standard precision and ``"exact"`` in extended precision.
    precision : str, optional
        Precision mode used to pick the default method.

    Returns
    -------
    float or ndarray
    """
    order = FractionalOrder.coerce(alpha)
    xs = np.asarray(x, dtype=float)
    scalar = xs.ndim == 0
    xs = np.atleast_1d(xs)
    if np.any(xs < 0.0):
        raise DomainError("Caputo derivative requested at negative x")

    if order.is_integer:
        out = np.atleast_1d(evaluate(derivative(p, order.ceil_n), xs))
        return float(out[0]) if scalar else out

    if method is None:
        method = "exact" if _precision.resolve(precision) == _precision.EXTENDED else "jacobi"
    if method not in METHODS:
        raise ValueError(f"unknown Caputo method {method!r}")

    out = np.zeros(xs.shape)
    pos = xs > 0.0
    if method == "jacobi":
        if np.any(pos):
            out[pos] = _caputo_jacobi(p, order, xs[pos])
    elif method == "exact":
        cm = to_monomial(p, exact=True)
        for i in np.flatnonzero(pos):
            out[i] = _caputo_exact_scalar(cm, order, float(xs[i]))
    else:
        cm = to_monomial(p, exact=False)
        for i in np.flatnonzero(pos):
            out[i] = _caputo_monomial_scalar(cm, order, float(xs[i]))
    return float(out[0]) if scalar else out
