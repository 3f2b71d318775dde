"""Triple-Bessel kernel R_{mu,nu}(x, y, z) and its region geometry.

For positive x, y the semi-infinite integral of J_nu(xt) J_nu(yt) J_mu(zt)
t^(1-mu) takes one of three closed forms depending on where z sits relative
to |x-y| and x+y: zero inside, a first-kind-Legendre expression on the band,
a second-kind-Legendre expression (with the sin((nu-mu) pi) factor) outside.
The outer branch is real: the two unimodular phases carried by the printed
formulas cancel exactly, and the cancellation is hard-coded here.

Points on a region boundary are errors, not limits: the value may diverge
there for mu < 1/2, and the quadrature layers only ever evaluate interior
nodes.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from ._backend import core
from .errors import BoundaryTripleError, DomainError

__all__ = [
    "Region", "TripleGeometry", "MacdonaldOrders",
    "classify", "r_kernel", "r_kernel_gegenbauer",
    "DEFAULT_BOUNDARY_EPS",
]

DEFAULT_BOUNDARY_EPS = 1e-13
_CLAMP_TOL = 1e-12


class Region(enum.Enum):
    INNER = "inner"
    BAND = "band"
    OUTER = "outer"
    BOUNDARY = "boundary"


@dataclass(frozen=True)
class TripleGeometry:
    """A positive triple with its region and angle value.

    cos_theta solves x^2 + y^2 - z^2 = 2 x y cos(theta) on the band;
    cosh_theta solves z^2 - x^2 - y^2 = 2 x y cosh(theta) outside.
    """

    x: float
    y: float
    z: float
    region: Region
    cos_theta: float | None = None
    cosh_theta: float | None = None


@dataclass(frozen=True)
class MacdonaldOrders:
    """Order pair of the kernel; both must exceed -1/2."""

    mu: float
    nu: float

    def __post_init__(self):
        if not (self.mu > -0.5 and self.nu > -0.5):
            raise DomainError(
                f"Macdonald orders must exceed -1/2, got mu={self.mu!r}, nu={self.nu!r}")


def classify(x: float, y: float, z: float,
             boundary_eps: float = DEFAULT_BOUNDARY_EPS) -> TripleGeometry:
    """Region of (x, y, z) with the strict inequalities of the kernel.

    A triple within boundary_eps*(x+y) of z = |x-y| or z = x+y is Boundary,
    as is one whose cos(theta) needs clamping by more than 1e-12.
    """
    if not (x > 0.0 and y > 0.0 and z > 0.0):
        raise DomainError(f"classify needs positive x, y, z, got ({x!r}, {y!r}, {z!r})")
    s = x + y
    d = abs(x - y)
    tol = boundary_eps * s
    if abs(z - d) <= tol or abs(z - s) <= tol:
        return TripleGeometry(x, y, z, Region.BOUNDARY)
    if z < d:
        return TripleGeometry(x, y, z, Region.INNER)
    if z > s:
        ch = (z * z - x * x - y * y) / (2.0 * x * y)
        if ch < 1.0:
            if ch < 1.0 - _CLAMP_TOL:
                return TripleGeometry(x, y, z, Region.BOUNDARY)
            ch = 1.0
        return TripleGeometry(x, y, z, Region.OUTER, cosh_theta=ch)
    ct = (x * x + y * y - z * z) / (2.0 * x * y)
    if abs(ct) > 1.0:
        if abs(ct) > 1.0 + _CLAMP_TOL:
            return TripleGeometry(x, y, z, Region.BOUNDARY)
        ct = math.copysign(1.0, ct)
    return TripleGeometry(x, y, z, Region.BAND, cos_theta=ct)


def r_kernel(orders: MacdonaldOrders, x: float, y: float, z: float,
             boundary_eps: float = DEFAULT_BOUNDARY_EPS) -> float:
    """R_{mu,nu}(x, y, z): 0 inside, Legendre-P band value, Legendre-Q outer
    value (identically 0 when nu - mu is an integer)."""
    geo = classify(x, y, z, boundary_eps)
    if geo.region is Region.BOUNDARY:
        raise BoundaryTripleError(
            f"triple ({x!r}, {y!r}, {z!r}) lies on a region boundary; "
            "the kernel may diverge there")
    if geo.region is Region.INNER:
        return 0.0
    if geo.region is Region.OUTER:
        return core.r_outer(orders.mu, orders.nu, x, y, z)
    return core.r_band(orders.mu, orders.nu, x, y, z)


def r_kernel_gegenbauer(mu: float, n: int, x: float, y: float, z: float,
                        boundary_eps: float = DEFAULT_BOUNDARY_EPS) -> float:
    """The nu = mu + n special case through the Gegenbauer polynomial.

    Needs mu > -1/2 and mu != 0 so Gamma(2 mu) and C_n^mu are well defined;
    vanishes off the band (the outer sine factor is exactly zero here).
    """
    if not mu > -0.5 or mu == 0.0:
        raise DomainError(f"gegenbauer-case mu={mu!r} must exceed -1/2 and be nonzero")
    if n < 0 or n != int(n):
        raise DomainError(f"gegenbauer-case offset n={n!r} must be a nonnegative integer")
    geo = classify(x, y, z, boundary_eps)
    if geo.region is Region.BOUNDARY:
        raise BoundaryTripleError(
            f"triple ({x!r}, {y!r}, {z!r}) lies on a region boundary; "
            "the kernel may diverge there")
    if geo.region is not Region.BAND:
        return 0.0
    return core.r_gegenbauer_band(mu, int(n), x, y, z)
