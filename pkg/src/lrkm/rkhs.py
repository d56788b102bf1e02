"""The boundary-adapted polynomial space and its collocation functionals.

The space of polynomials of degree ``<= m`` on [0, 1] that vanish at both
endpoints has dimension ``m - 1``.  It is spanned by

    phi_i = P_i - P_0  (i even),    phi_i = P_i - P_1  (i odd),    i = 2..m,

and Gram-Schmidt in the L2 inner product turns these into an orthonormal
system ``h_2 .. h_m``.  The reproducing kernel is then
``K_t(x) = sum_i h_i(t) h_i(x)``.

For a derivative order ``alpha`` and points ``x_0 .. x_{m-2}`` the functional
``y -> D^alpha y(x_i)`` is represented in the space by

    psi_i(x) = sum_j h_j(x) * D^alpha h_j(x_i),

and orthonormalising ``psi_i`` gives ``psibar_i = sum_{k<=i} beta_ik psi_k``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Sequence

import mpmath
import numpy as np
from scipy.linalg import solve_triangular

from . import precision as _precision
from .errors import CompletenessError, DomainError, NumericalRankError
from .fractional import FractionalOrder, caputo_polynomial_at
from .polynomial import Polynomial, derivative, evaluate

__all__ = [
    "KernelSpace",
    "CollocationSystem",
    "boundary_basis",
    "build_kernel_space",
    "kernel_at",
    "default_points",
    "build_collocation",
    "derivative_bound_constant",
    "modified_gram_schmidt",
    "dump_json",
]

KERNEL_PIVOT_TOL = 1e-13
COLLOCATION_PIVOT_TOL = 1e-12


def boundary_basis(i: int) -> Polynomial:
    """Basis function ``phi_i`` (``i >= 2``) vanishing at 0 and 1."""
    if i < 2:
        raise DomainError(f"boundary basis index must be >= 2, got {i}")
    c = np.zeros(i + 1)
    c[i] = 1.0
    c[0 if i % 2 == 0 else 1] -= 1.0
    return Polynomial(c)


def modified_gram_schmidt(vectors, dot: Callable[[Any, Any], Any],
                          sqrt: Callable[[Any], Any] = math.sqrt,
                          pivot_tol: float = 0.0,
                          error: type[NumericalRankError] = NumericalRankError):
    """Row-wise modified Gram-Schmidt with one full reorthogonalisation pass.

    Works on float arrays and on object arrays of multiprecision numbers alike;
    only ``dot`` and ``sqrt`` have to match the scalar type.

    Parameters
    ----------
    vectors : ndarray, shape (k, N)
        Rows are the vectors to orthonormalise, in order.
    dot : callable
        Inner product of two rows.
    pivot_tol : float
        Raise ``error`` when a row's remaining norm relative to its original
        norm falls below this value.

    Returns
    -------
    Q : ndarray, shape (k, N)
        Orthonormal rows.
    L : ndarray, shape (k, k)
        Lower-triangular factor with positive diagonal, ``vectors = L @ Q``.
    pivots : list of float
        Relative pivots ``L[i, i] / ||vectors[i]||``.
    """
    k = len(vectors)
    zero = vectors[0][0] * 0
    Q = [None] * k
    L = np.full((k, k), zero, dtype=np.asarray(vectors).dtype)
    pivots = []
    for i in range(k):
        v = vectors[i].copy()
        start = sqrt(dot(v, v))
        for _ in range(2):
            for j in range(i):
                c = dot(v, Q[j])
                L[i, j] += c
                v = v - c * Q[j]
        r = sqrt(dot(v, v))
        rel = float(r / start) if start else 0.0
        pivots.append(rel)
        if not rel > pivot_tol:
            raise error(
                f"Gram-Schmidt pivot {rel:.3e} at row {i} is below {pivot_tol:.0e}"
            )
        L[i, i] = r
        Q[i] = v / r
    return np.array(Q), L, pivots


def _legendre_dot(u: np.ndarray, v: np.ndarray) -> float:
    w = 1.0 / (2.0 * np.arange(u.size) + 1.0)
    return math.fsum(u * v * w)


def _fsum_dot(u: np.ndarray, v: np.ndarray) -> float:
    return math.fsum(u * v)


def _mp_dot(u, v):
    return mpmath.fsum(a * b for a, b in zip(u, v))


@dataclass(frozen=True)
class KernelSpace:
    """Polynomials of degree ``<= m`` on [0, 1] vanishing at both ends.

    ``h[0]`` is ``h_2`` and ``h[-1]`` is ``h_m``.
    """

    m: int
    h: tuple[Polynomial, ...]
    coeffs: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.m - 1

    def values(self, x) -> np.ndarray:
        """Matrix ``V[k, j] = h_j(x_k)``."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        return np.stack([evaluate(hj, x) for hj in self.h], axis=1)

    def coordinates(self, p: Polynomial) -> np.ndarray:
        """Coordinates of ``p`` with respect to ``h`` (its orthogonal projection)."""
        return np.array([hj.inner(p) for hj in self.h])

    def from_coordinates(self, coords) -> Polynomial:
        return Polynomial(np.asarray(coords, dtype=float) @ self.coeffs)


@lru_cache(maxsize=32)
def build_kernel_space(m: int) -> KernelSpace:
    """Orthonormalise ``phi_2 .. phi_m`` in the exact Legendre inner product."""
    if m < 2:
        raise DomainError(f"degree bound m must be >= 2, got {m}")
    phi = np.zeros((m - 1, m + 1))
    for row, i in enumerate(range(2, m + 1)):
        phi[row, : i + 1] = boundary_basis(i).coeffs
    Q, _, _ = modified_gram_schmidt(phi, _legendre_dot, pivot_tol=KERNEL_PIVOT_TOL)
    Q.setflags(write=False)
    return KernelSpace(m=m, h=tuple(Polynomial(q) for q in Q), coeffs=Q)


def kernel_at(space: KernelSpace, t: float) -> Polynomial:
    """The kernel section ``x -> K_t(x) = sum_i h_i(t) h_i(x)``."""
    if not 0.0 <= t <= 1.0:
        raise DomainError("kernel parameter t must lie in [0, 1]")
    ht = space.values(t)[0]
    return space.from_coordinates(ht)


def default_points(m: int) -> tuple[float, ...]:
    """Collocation points ``(i + 0.3) / m`` for ``i = 0 .. m - 2``."""
    if m < 2:
        raise DomainError(f"degree bound m must be >= 2, got {m}")
    return tuple((i + 0.3) / m for i in range(m - 1))


def derivative_bound_constant(space: KernelSpace, r: int, grid=None) -> float:
    """``max_x || d^r/dx^r K_x ||`` over a grid.

    Since the ``h_i`` are orthonormal the norm at a fixed ``x`` is simply
    ``sqrt(sum_i h_i^(r)(x)^2)``; it bounds ``|y^(r)(x)| / ||y||`` for every
    ``y`` in the space.
    """
    if grid is None:
        grid = np.linspace(0.0, 1.0, 401)
    grid = np.asarray(grid, dtype=float)
    vals = np.stack([evaluate(derivative(hj, r), grid) for hj in space.h], axis=1)
    return float(np.max(np.sqrt(np.sum(vals**2, axis=1))))


@dataclass(frozen=True)
class CollocationSystem:
    """Collocation functionals ``psi_i`` and their orthonormalisation.

    Attributes
    ----------
    points : tuple of float
        Collocation points ``x_0 < ... < x_{m-2}`` in (0, 1).
    operator_matrix : ndarray
        ``A[i, j] = D^alpha h_j(x_i)``; row ``i`` holds the coordinates of
        ``psi_i`` with respect to ``h``.
    beta : ndarray
        Lower-triangular coefficients with ``psibar_i = sum_k beta[i, k] psi_k``.
    psi_bar_coords : ndarray
        Coordinates of ``psibar_i`` with respect to ``h``.
    psi_bar_at_points : ndarray
        ``V[i, k] = psibar_i(x_k)``.
    """

    space: KernelSpace
    alpha: FractionalOrder
    points: tuple[float, ...]
    precision: str
    operator_matrix: np.ndarray = field(repr=False)
    psi: tuple[Polynomial, ...] = field(repr=False)
    psi_bar: tuple[Polynomial, ...] = field(repr=False)
    beta: np.ndarray = field(repr=False)
    psi_bar_coords: np.ndarray = field(repr=False)
    psi_bar_at_points: np.ndarray = field(repr=False)
    pivots: tuple[float, ...] = field(repr=False)
    _hp: dict | None = field(default=None, repr=False, compare=False)

    @property
    def m(self) -> int:
        return self.space.m

    def expansion(self, values) -> np.ndarray:
        """Expansion coefficients ``c_i = sum_{k<=i} beta_ik values_k``.

        In extended precision ``values`` may hold mpf numbers and the result
        is an object array of mpf numbers.
        """
        if self._hp is None:
            return self.beta @ np.asarray(values, dtype=float)
        with mpmath.workdps(_precision.EXTENDED_DPS):
            B = self._hp["beta"]
            v = [mpmath.mpf(g) for g in values]
            n = len(v)
            return np.array(
                [mpmath.fsum(B[i][k] * v[k] for k in range(i + 1)) for i in range(n)],
                dtype=object,
            )

    def values_at_points(self, c) -> np.ndarray:
        """``sum_i c_i psibar_i(x_k)`` for every collocation point ``x_k``.

        Returns mpf numbers (object array) in extended precision.
        """
        if self._hp is None:
            return self.psi_bar_at_points.T @ c
        with mpmath.workdps(_precision.EXTENDED_DPS):
            V = self._hp["V"]
            n = len(c)
            return np.array(
                [mpmath.fsum(V[i][k] * c[i] for i in range(n)) for k in range(n)],
                dtype=object,
            )

    def polynomial(self, c) -> Polynomial:
        """The polynomial ``sum_i c_i psibar_i``."""
        if self._hp is None:
            coords = self.psi_bar_coords.T @ c
        else:
            with mpmath.workdps(_precision.EXTENDED_DPS):
                Q = self._hp["Q"]
                n = len(c)
                coords = np.array(
                    [float(mpmath.fsum(Q[i][j] * c[i] for i in range(n))) for j in range(n)]
                )
        return self.space.from_coordinates(coords)


def _check_points(points: Sequence[float], m: int) -> tuple[float, ...]:
    pts = tuple(float(x) for x in points)
    if len(pts) != m - 1:
        raise DomainError(f"need exactly m - 1 = {m - 1} collocation points, got {len(pts)}")
    for x in pts:
        if not 0.0 < x < 1.0:
            raise DomainError(f"collocation point {x!r} is not in the open interval (0, 1)")
    if any(b <= a for a, b in zip(pts, pts[1:])):
        raise DomainError("collocation points must be distinct and strictly increasing")
    return pts


def _lower_inverse_mp(L):
    n = len(L)
    inv = [[mpmath.mpf(0)] * n for _ in range(n)]
    for col in range(n):
        inv[col][col] = 1 / L[col][col]
        for i in range(col + 1, n):
            s = mpmath.fsum(L[i][k] * inv[k][col] for k in range(col, i))
            inv[i][col] = -s / L[i][i]
    return inv


def build_collocation(space: KernelSpace, alpha, points: Sequence[float] | None = None,
                      precision: str | None = None) -> CollocationSystem:
    """Build ``psi_i``, orthonormalise them and extract ``beta``.

    The Gram-Schmidt runs on the coordinates of ``psi_i`` with respect to the
    orthonormal ``h`` basis, where the L2 inner product is the Euclidean one.

    Raises
    ------
    CompletenessError
        If a Gram-Schmidt pivot drops below ``COLLOCATION_PIVOT_TOL`` relative
        to the row norm (duplicate points or a too large ``m``).
    """
    order = FractionalOrder.coerce(alpha)
    mode = _precision.resolve(precision)
    m = space.m
    pts = _check_points(default_points(m) if points is None else points, m)
    xs = np.array(pts)

    A = np.stack(
        [np.atleast_1d(caputo_polynomial_at(hj, order, xs, precision=mode)) for hj in space.h],
        axis=1,
    )
    A.setflags(write=False)
    H = space.coeffs
    Hv = space.values(xs)  # Hv[k, j] = h_j(x_k)

    hp = None
    if mode == _precision.STANDARD:
        Q, L, pivots = modified_gram_schmidt(
            A, _fsum_dot, pivot_tol=COLLOCATION_PIVOT_TOL, error=CompletenessError
        )
        beta = solve_triangular(L, np.eye(m - 1), lower=True)
        V = Q @ Hv.T
    else:
        with mpmath.workdps(_precision.EXTENDED_DPS):
            Amp = np.array([[mpmath.mpf(float(a)) for a in row] for row in A], dtype=object)
            Qmp, Lmp, pivots = modified_gram_schmidt(
                Amp, _mp_dot, sqrt=mpmath.sqrt,
                pivot_tol=COLLOCATION_PIVOT_TOL, error=CompletenessError,
            )
            Bmp = _lower_inverse_mp(Lmp.tolist())
            Qrows = Qmp.tolist()
            n = m - 1
            Vmp = [
                [mpmath.fsum(Qrows[i][j] * Hv[k, j] for j in range(n)) for k in range(n)]
                for i in range(n)
            ]
            hp = {"beta": Bmp, "Q": Qrows, "V": Vmp}
            Q = np.array([[float(v) for v in row] for row in Qrows])
            beta = np.array([[float(v) for v in row] for row in Bmp])
            V = np.array([[float(v) for v in row] for row in Vmp])

    for arr in (Q, beta, V):
        arr.setflags(write=False)
    return CollocationSystem(
        space=space,
        alpha=order,
        points=pts,
        precision=mode,
        operator_matrix=A,
        psi=tuple(Polynomial(row @ H) for row in A),
        psi_bar=tuple(Polynomial(row @ H) for row in Q),
        beta=beta,
        psi_bar_coords=Q,
        psi_bar_at_points=V,
        pivots=tuple(pivots),
        _hp=hp,
    )


def dump_json(system: CollocationSystem, fp=None) -> str:
    """Serialise ``h``, ``psi``, ``psibar`` and ``beta`` (row-major) as JSON."""
    doc = {
        "m": system.m,
        "alpha": system.alpha.alpha,
        "precision": system.precision,
        "points": list(system.points),
        "h": [p.coeffs.tolist() for p in system.space.h],
        "psi": [p.coeffs.tolist() for p in system.psi],
        "psi_bar": [p.coeffs.tolist() for p in system.psi_bar],
        "beta": system.beta.tolist(),
    }
    text = json.dumps(doc, indent=1)
    if fp is not None:
        fp.write(text)
    return text
