"""The deformed one-dimensional kernel, its product-formula density, and the
two measures built from it.

Parameter conventions: multiplicity k >= 0 and deformation a > 0, with the
derived quantities

    mu_m = (2k-1)/a,   nu_m = (2k+1)/a,   w = 2k + a - 2.

Two validity levels coexist.  The kernel B alone only needs both Bessel
orders above -1, which is exactly w > -1 and is enforced at construction.
Everything built on the triple-Bessel density additionally needs the
Macdonald admissibility mu_m > -1/2 (equivalently 2k > 1 - a/2); operations
on the density call :meth:`Params.require_macdonald`.  The literature also
quotes the stronger condition 2k > a - 1; it is surfaced in diagnostics but
is not used as the gate because no in-scope formula needs it.

Complex values are carried in rectangular form end to end; the phases
e^(-i pi / a) and e^(-2 i pi / a) are materialized once per parameter set
as (cos, -sin) pairs and no polar decomposition ever happens.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable

from ._backend import core
from .errors import BoundaryTripleError, DomainError
from .macdonald import DEFAULT_BOUNDARY_EPS, MacdonaldOrders, Region, classify

__all__ = [
    "Params", "MeasureKind", "MeasureDescriptor",
    "m_const", "b_kernel", "delta_density", "gamma_measure", "sigma_measure",
]


@dataclass(frozen=True)
class Params:
    """The (k, a) parameter pair with its derived orders and weight exponent."""

    k: float
    a: float
    mu_m: float = field(init=False)
    nu_m: float = field(init=False)
    w: float = field(init=False)

    def __post_init__(self):
        if not (math.isfinite(self.k) and math.isfinite(self.a)):
            raise DomainError("k and a must be finite")
        if self.k < 0.0:
            raise DomainError(f"multiplicity k={self.k!r} must be >= 0")
        if self.a <= 0.0:
            raise DomainError(f"deformation a={self.a!r} must be > 0")
        object.__setattr__(self, "mu_m", (2.0 * self.k - 1.0) / self.a)
        object.__setattr__(self, "nu_m", (2.0 * self.k + 1.0) / self.a)
        object.__setattr__(self, "w", 2.0 * self.k + self.a - 2.0)
        if not self.w > -1.0:
            raise DomainError(
                f"weight exponent w=2k+a-2={self.w!r} must exceed -1 "
                "(Bessel orders (2k+-1)/a must exceed -1)")

    @property
    def macdonald_admissible(self) -> bool:
        """mu_m > -1/2, the validity domain of the triple-Bessel formulas."""
        return self.mu_m > -0.5

    @property
    def abstract_condition_2k_gt_am1(self) -> bool:
        """The quoted-but-unused stronger condition 2k > a-1 (diagnostic only)."""
        return 2.0 * self.k > self.a - 1.0

    def require_macdonald(self) -> None:
        if not self.macdonald_admissible:
            raise DomainError(
                f"mu=(2k-1)/a must exceed -1/2 for the product-formula density; "
                f"got mu={self.mu_m!r} (k={self.k!r}, a={self.a!r}); "
                f"diagnostic 2k>a-1 holds: {self.abstract_condition_2k_gt_am1}")

    def orders(self) -> MacdonaldOrders:
        self.require_macdonald()
        return MacdonaldOrders(self.mu_m, self.nu_m)

    @property
    def band_offset_integer(self) -> bool:
        """True when nu_m - mu_m = 2/a is an integer: compact support case."""
        d = 2.0 / self.a
        return abs(d - round(d)) <= 1e-12


def m_const(p: Params) -> complex:
    """e^(-i pi/a) Gamma((2k+a-1)/a) / (a^(2/a) Gamma((2k+a+1)/a)).

    The gamma arguments are mu_m + 1 and nu_m + 1; both exceed 0 whenever
    the Params invariant w > -1 holds, so no pole can occur here.
    """
    mod = math.exp(math.lgamma(p.mu_m + 1.0) - math.lgamma(p.nu_m + 1.0)
                   - (2.0 / p.a) * math.log(p.a))
    ph = math.pi / p.a
    return complex(mod * math.cos(ph), -mod * math.sin(ph))


def b_kernel(p: Params, lam: float, x: float) -> complex:
    """B(lambda, x): the even normalized-Bessel term plus m * lambda x times
    the odd one, both at argument (2/a)|lambda x|^(a/2).  Equals 1 at
    lambda x = 0 and depends on (lambda, x) only through their product."""
    lx = lam * x
    if lx == 0.0:
        return complex(1.0, 0.0)
    arg = (2.0 / p.a) * math.pow(abs(lx), 0.5 * p.a)
    even = core.normalized_bessel_j(p.mu_m, arg)
    odd = core.normalized_bessel_j(p.nu_m, arg)
    return even + m_const(p) * lx * odd


def _delta_prefactor(p: Params) -> float:
    """a 2^(mu_m - 2) Gamma(mu_m + 1), the overall density constant."""
    return p.a * math.pow(2.0, p.mu_m - 2.0) * math.exp(math.lgamma(p.mu_m + 1.0))


def _phase_e2a(p: Params) -> complex:
    ph = 2.0 * math.pi / p.a
    return complex(math.cos(ph), -math.sin(ph))


def _r_dispatch(mu: float, nu: float, xa: float, ya: float, za: float,
                boundary_eps: float) -> float:
    geo = classify(xa, ya, za, boundary_eps)
    if geo.region is Region.BOUNDARY:
        raise BoundaryTripleError(
            f"density evaluated on a Macdonald region boundary: "
            f"triple ({xa!r}, {ya!r}, {za!r})")
    if geo.region is Region.INNER:
        return 0.0
    if geo.region is Region.OUTER:
        return core.r_outer(mu, nu, xa, ya, za)
    return core.r_band(mu, nu, xa, ya, za)


def delta_density(p: Params, x: float, y: float, z: float,
                  boundary_eps: float = DEFAULT_BOUNDARY_EPS) -> complex:
    """The four-term product-formula density Delta(x, y, z) (without the
    weight |z|^w).

    Prefactor a 2^(mu-2) Gamma(mu+1) times, with X = |x|^(a/2) etc.,

        [ R_{mu,mu}(X,Y,Z) + e^(-2 i pi/a) sgn(xy) R_{mu,nu}(X,Y,Z)
          + sgn(xz) R_{mu,nu}(X,Z,Y) + sgn(yz) R_{mu,nu}(Y,Z,X) ] / |xyz|^(k-1/2)
    """
    p.require_macdonald()
    if x == 0.0 or y == 0.0 or z == 0.0:
        raise DomainError("delta_density requires nonzero x, y, z "
                          "(degenerate base points carry Dirac measures)")
    mu, nu = p.mu_m, p.nu_m
    ha = 0.5 * p.a
    xa, ya, za = math.pow(abs(x), ha), math.pow(abs(y), ha), math.pow(abs(z), ha)
    t1 = _r_dispatch(mu, mu, xa, ya, za, boundary_eps)
    t2 = _r_dispatch(mu, nu, xa, ya, za, boundary_eps)
    t3 = _r_dispatch(mu, nu, xa, za, ya, boundary_eps)
    t4 = _r_dispatch(mu, nu, ya, za, xa, boundary_eps)
    sxy = math.copysign(1.0, x) * math.copysign(1.0, y)
    sxz = math.copysign(1.0, x) * math.copysign(1.0, z)
    syz = math.copysign(1.0, y) * math.copysign(1.0, z)
    total = (t1 + _phase_e2a(p) * (sxy * t2)) + complex(sxz * t3 + syz * t4)
    scale = _delta_prefactor(p) * math.pow(abs(x * y * z), 0.5 - p.k)
    return scale * total


class MeasureKind(enum.Enum):
    DENSITY = "density"
    DIRAC_AT_X = "dirac-at-x"
    DIRAC_AT_Y = "dirac-at-y"


@dataclass(frozen=True)
class MeasureDescriptor:
    """Either a density against |z|^w dz or a Dirac mass at a base point."""

    kind: MeasureKind
    params: Params
    x: float
    y: float
    density: Callable[[float], complex] | None = None

    @property
    def dirac_point(self) -> float:
        if self.kind is MeasureKind.DIRAC_AT_X:
            return self.x
        if self.kind is MeasureKind.DIRAC_AT_Y:
            return self.y
        raise DomainError("density measure has no Dirac point")


def gamma_measure(p: Params, x: float, y: float) -> MeasureDescriptor:
    """Product-formula measure: Delta(x, y, z)|z|^w dz for xy != 0, the
    Dirac mass at x when y = 0, at y when x = 0."""
    if y == 0.0:
        return MeasureDescriptor(MeasureKind.DIRAC_AT_X, p, x, y)
    if x == 0.0:
        return MeasureDescriptor(MeasureKind.DIRAC_AT_Y, p, x, y)
    p.require_macdonald()

    def dens(z: float) -> complex:
        return delta_density(p, x, y, z) * math.pow(abs(z), p.w)

    return MeasureDescriptor(MeasureKind.DENSITY, p, x, y, dens)


def sigma_measure(p: Params, x: float, y: float) -> MeasureDescriptor:
    """Translation-side measure: density z -> Delta(x, z, y)|z|^w, same
    Dirac degenerate cases as the product-formula measure."""
    if y == 0.0:
        return MeasureDescriptor(MeasureKind.DIRAC_AT_X, p, x, y)
    if x == 0.0:
        return MeasureDescriptor(MeasureKind.DIRAC_AT_Y, p, x, y)
    p.require_macdonald()

    def dens(z: float) -> complex:
        return delta_density(p, x, z, y) * math.pow(abs(z), p.w)

    return MeasureDescriptor(MeasureKind.DENSITY, p, x, y, dens)
