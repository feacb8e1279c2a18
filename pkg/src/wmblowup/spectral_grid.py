"""Chebyshev-Gauss-Lobatto collocation on an interval.

Nodes are stored in ascending order, so ``nodes[0] == a``. All matrices act
on vectors of nodal values.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from numpy.polynomial import chebyshev as cheb


def _frozen(a):
    a = np.asarray(a)
    a.setflags(write=False)
    return a


def _lobatto_points(n):
    # ascending: x_0 = -1, x_{n-1} = 1; sin form keeps the nodes symmetric
    k = np.arange(n)
    x = np.sin(np.pi * (2 * k - (n - 1)) / (2 * (n - 1)))
    return x


def _barycentric_weights(n):
    w = (-1.0) ** np.arange(n)
    w[0] *= 0.5
    w[-1] *= 0.5
    return w


def _diff_matrix(x):
    n = len(x)
    c = np.ones(n)
    c[0] = c[-1] = 2.0
    c *= (-1.0) ** np.arange(n)
    dx = x[:, None] - x[None, :]
    D = np.outer(c, 1.0 / c) / (dx + np.eye(n))
    # negative-sum trick: rows annihilate constants exactly
    D -= np.diag(D.sum(axis=1))
    return D


def _values_to_coeffs(n):
    """Matrix taking values at ascending Lobatto points to Chebyshev coefficients."""
    N = n - 1
    j = np.arange(n)
    # ascending node j sits at angle pi*(N - j)/N
    theta = np.pi * (N - j) / N
    k = np.arange(n)
    C = np.cos(np.outer(k, theta))
    cj = np.ones(n)
    cj[0] = cj[-1] = 2.0
    C = C / cj[None, :]
    C *= (2.0 / N)
    C[0] *= 0.5
    C[-1] *= 0.5
    return C


def _antiderivative_matrix(x):
    n = len(x)
    C = _values_to_coeffs(n)
    # integrate each basis polynomial T_k from -1 and evaluate at the nodes
    ints = np.zeros((n + 1, n))
    for k in range(n):
        e = np.zeros(n)
        e[k] = 1.0
        ints[:, k] = cheb.chebint(e, lbnd=-1.0)
    V = cheb.chebvander(x, n)
    return V @ ints @ C


def clenshaw_curtis_weights(n):
    """Clenshaw-Curtis weights for ``n`` Lobatto points on [-1, 1] (ascending)."""
    N = n - 1
    theta = np.pi * np.arange(n) / N
    w = np.zeros(n)
    v = np.ones(n - 2)
    inner = slice(1, n - 1)
    if N % 2 == 0:
        w[0] = w[-1] = 1.0 / (N**2 - 1)
        for k in range(1, N // 2):
            v -= 2.0 * np.cos(2 * k * theta[inner]) / (4 * k**2 - 1)
        v -= np.cos(N * theta[inner]) / (N**2 - 1)
    else:
        w[0] = w[-1] = 1.0 / N**2
        for k in range(1, (N - 1) // 2 + 1):
            v -= 2.0 * np.cos(2 * k * theta[inner]) / (4 * k**2 - 1)
    w[inner] = 2.0 * v / N
    return w[::-1]


@dataclass(frozen=True, eq=False)
class Grid:
    """Lobatto grid on ``[a, b]`` with its collocation matrices.

    Grids compare and hash by identity so they can key operator caches.
    """

    nodes: np.ndarray
    a: float
    b: float
    D: np.ndarray
    Antider: np.ndarray
    w: np.ndarray

    @property
    def n(self):
        return len(self.nodes)

    @cached_property
    def D2(self):
        return _frozen(self.D @ self.D)

    @cached_property
    def bary_weights(self):
        return _barycentric_weights(self.n)

    def same_as(self, other):
        return (
            other is self
            or (self.n == other.n and self.a == other.a and self.b == other.b)
        )

    def integrate(self, values):
        return self.w @ np.asarray(values)

    def __repr__(self):
        return f"Grid(n={self.n}, a={self.a}, b={self.b})"


def make_grid(n, a, b):
    """Build a Chebyshev-Gauss-Lobatto grid with ``n`` nodes on ``[a, b]``."""
    if int(n) != n or n < 8:
        raise ValueError(f"need at least 8 nodes, got {n}")
    if not b > a:
        raise ValueError(f"empty interval [{a}, {b}]")
    n = int(n)
    a, b = float(a), float(b)
    x = _lobatto_points(n)
    half = 0.5 * (b - a)
    nodes = a + half * (x + 1.0)
    nodes[0], nodes[-1] = a, b
    D = _diff_matrix(x) / half
    Q = _antiderivative_matrix(x) * half
    w = clenshaw_curtis_weights(n) * half
    return Grid(_frozen(nodes), a, b, _frozen(D), _frozen(Q), _frozen(w))


@dataclass(frozen=True)
class Profile:
    """Samples of a radial function on a grid.

    ``origin_order = k`` declares the function to vanish like ``rho**k``
    at ``rho = 0``; for ``k >= 1`` the sample at a zero left endpoint must
    vanish.
    """

    grid: Grid
    values: np.ndarray
    origin_order: int = 0

    def __post_init__(self):
        vals = np.array(self.values, dtype=np.result_type(self.values, float))
        if vals.shape != (self.grid.n,):
            raise ValueError(
                f"expected {self.grid.n} samples, got shape {vals.shape}"
            )
        if self.origin_order < 0:
            raise ValueError("origin_order must be non-negative")
        if self.origin_order >= 1 and self.grid.a == 0.0:
            scale = max(1.0, float(np.max(np.abs(vals))))
            if abs(vals[0]) > 1e-12 * scale:
                raise ValueError(
                    f"profile declared O(rho^{self.origin_order}) but "
                    f"value at rho=0 is {vals[0]!r}"
                )
            vals[0] = 0.0
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_function(cls, grid, fn, origin_order=0):
        return cls(grid, fn(grid.nodes), origin_order)

    @property
    def nodes(self):
        return self.grid.nodes

    def derivative(self, order=1):
        vals = self.values
        for _ in range(order):
            vals = self.grid.D @ vals
        return vals

    def __call__(self, x):
        return interpolate(self, x)


def interpolate(p, x):
    """Evaluate the polynomial interpolant of ``p`` at arbitrary points.

    Uses the second barycentric formula for Lobatto points; points outside
    the grid interval are rejected.
    """
    g = p.grid
    x = np.asarray(x, dtype=float)
    span = g.b - g.a
    if np.any(x < g.a - 1e-14 * span) or np.any(x > g.b + 1e-14 * span):
        raise ValueError(f"interpolation points leave [{g.a}, {g.b}]")
    xs = np.atleast_1d(x).ravel()
    diff = xs[:, None] - g.nodes[None, :]
    exact = diff == 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        K = g.bary_weights[None, :] / diff
    hit = exact.any(axis=1)
    K[hit] = 0.0
    K[exact] = 1.0
    out = (K @ p.values) / K.sum(axis=1)
    return out.reshape(x.shape)


def resample(p, target):
    """Interpolate a profile onto ``target``, which must lie inside ``p``'s interval."""
    src = p.grid
    span = src.b - src.a
    if target.a < src.a - 1e-14 * span or target.b > src.b + 1e-14 * span:
        raise ValueError(
            f"target [{target.a}, {target.b}] exceeds source [{src.a}, {src.b}]"
        )
    if target.same_as(src):
        return Profile(target, p.values, p.origin_order)
    return Profile(target, interpolate(p, target.nodes), p.origin_order)


def averaging_matrix(grid):
    """Matrix of ``u -> rho^{-2} int_0^rho s u(s) ds`` on a grid starting at 0.

    Near the origin the result behaves like ``u'(0) rho / 3``, so the
    origin row is zero.
    """
    if grid.a != 0.0:
        raise ValueError("the averaging operator needs a grid starting at rho=0")
    r = grid.nodes
    M = np.empty((grid.n, grid.n))
    M[1:] = grid.Antider[1:] * r[None, :] / r[1:, None] ** 2
    M[0] = 0.0
    return M


def apply_A(phi2):
    """Apply ``(A u)(rho) = rho^{-2} int_0^rho s u(s) ds`` to a profile."""
    if phi2.origin_order < 1:
        raise ValueError("apply_A needs a profile vanishing at the origin")
    vals = averaging_matrix(phi2.grid) @ phi2.values
    return Profile(phi2.grid, vals, origin_order=1)
