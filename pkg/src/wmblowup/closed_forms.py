"""Closed-form ingredients of the co-rotational wave-map model.

Everything here is a pure, vectorised function of its arguments. Radial
arguments may be scalars or numpy arrays; the formulas are valid on
``[0, 3/2]``, which covers the samples at ``T*rho`` needed for blow-up
times ``T < 3/2``.
"""

from typing import NamedTuple

import numpy as np


class Jet2(NamedTuple):
    """Value and first two derivatives of a radial function."""

    value: np.ndarray
    d1: np.ndarray
    d2: np.ndarray


class GaugeVector(NamedTuple):
    """The two components of the gauge mode."""

    g1: np.ndarray
    g2: np.ndarray


def f0_jet(rho):
    """Ground-state profile ``2 arctan(rho)`` with two derivatives."""
    rho = np.asarray(rho, dtype=float)
    q = 1.0 + rho**2
    return Jet2(2.0 * np.arctan(rho), 2.0 / q, -4.0 * rho / q**2)


def f0_d3(rho):
    """Third derivative of the ground state, ``(12 rho^2 - 4) / (1 + rho^2)^3``."""
    rho = np.asarray(rho, dtype=float)
    return (12.0 * rho**2 - 4.0) / (1.0 + rho**2) ** 3


def potential_V(rho):
    rho = np.asarray(rho, dtype=float)
    r2 = rho**2
    return 2.0 * (1.0 - 6.0 * r2 + r2**2) / (1.0 + r2) ** 2


def potential_V1(rho):
    """Regularised potential ``(V - 2) / rho^2``, finite at the origin."""
    rho = np.asarray(rho, dtype=float)
    return -16.0 / (1.0 + rho**2) ** 2


def gauge_mode(rho):
    """Eigenfunction of the linearised generator at eigenvalue 1.

    It comes from time-translation symmetry and is not a genuine
    instability of the self-similar solution.
    """
    rho = np.asarray(rho, dtype=float)
    q2 = (1.0 + rho**2) ** 2
    return GaugeVector(2.0 * rho**3 / q2, rho * (3.0 + rho**2) / q2)


def gauge_mode_scalar(rho):
    """Second-order form of the gauge eigenfunction, ``rho / (1 + rho^2)``."""
    rho = np.asarray(rho, dtype=float)
    return rho / (1.0 + rho**2)


def nonlinearity_N(x, rho):
    """Quadratic remainder ``sin(2 f0 + 2x) - sin(2 f0) - 2 cos(2 f0) x``."""
    x = np.asarray(x, dtype=float)
    a = 2.0 * f0_jet(rho).value
    s, c = np.sin(a), np.cos(a)
    # expanded form avoids the O(1) cancellation in sin(a + 2x) - sin(a)
    return -2.0 * s * np.sin(x) ** 2 + c * (np.sin(2.0 * x) - 2.0 * x)


def nonlinearity_dN(x, rho):
    """Partial derivative of :func:`nonlinearity_N` in its first argument."""
    x = np.asarray(x, dtype=float)
    a = 2.0 * f0_jet(rho).value
    return 2.0 * np.cos(a + 2.0 * x) - 2.0 * np.cos(a)


def psiT_jet(t, r, T):
    """Self-similar solution ``psi^T`` and its first derivatives.

    Returns
    -------
    value, dt, dr : ndarray
        ``f0(rho)``, ``rho f0'(rho) / (T - t)`` and ``f0'(rho) / (T - t)``
        with ``rho = r / (T - t)``.

    Raises
    ------
    ValueError
        If ``t >= T``; the solution does not exist past its blow-up time.
    """
    if not t < T:
        raise ValueError(f"psi^T is only defined for t < T (got t={t}, T={T})")
    s = T - t
    rho = np.asarray(r, dtype=float) / s
    j = f0_jet(rho)
    return j.value, rho * j.d1 / s, j.d1 / s
