"""Coordinate actions of the symmetry groups on (t, x).

Every map here is written generically over its scalar type: plain complex
numbers, numpy arrays, or jets all work, so the same code path feeds both
the numeric checks and the chain-rule machinery of the residual verifier.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import jets
from .errors import (
    BranchError,
    DomainError,
    ShapeError,
    SingularTime,
    ZeroK,
    ZeroOmega,
)
from .group import GroupElement, Mat2

SINGULAR_TOL = 1e-14

FREE = "free"
INVERSE_QUADRATIC = "inverse_quadratic"
LINEAR = "linear"
QUADRATIC = "quadratic"
NDIM_LINEAR = "ndim_linear"
NLS2D = "nls2d"

FAMILIES = (FREE, INVERSE_QUADRATIC, LINEAR, QUADRATIC, NDIM_LINEAR, NLS2D)


def _real_or_imaginary(v, name):
    if v != 0 and min(abs(np.real(v)), abs(np.imag(v))) > 1e-12 * abs(v):
        raise DomainError(f"{name} must be real or purely imaginary, got {v}")


@dataclass(frozen=True)
class FamilySpec:
    """Potential family tag plus the parameters selecting its formulas."""

    family: str
    k: complex
    alpha: float = 0.0
    beta: float = 0.0
    omega: complex = 0.0
    n: int = 1
    ajk: tuple = None
    coupling: float = 1.0  # cubic coupling, 2-d NLS family only

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DomainError(f"unknown family {self.family!r}")
        if self.k == 0:
            raise ZeroK("k must be nonzero")
        _real_or_imaginary(self.k, "k")
        if self.family == QUADRATIC:
            if self.omega == 0:
                raise ZeroOmega("quadratic family needs a nonzero omega")
            _real_or_imaginary(self.omega, "omega")
        if self.n < 1:
            raise DomainError("dimension must be >= 1")
        if self.ajk is not None:
            m = np.asarray(self.ajk)
            if m.shape != (self.n, self.n):
                raise DomainError("ajk must be n x n")
            if np.abs(np.diagonal(m)).max() > 0:
                raise DomainError("ajk must have zero diagonal")
            if np.abs(m - m.T).max() > 1e-12:
                raise DomainError("ajk must be symmetric")
            object.__setattr__(self, "ajk", tuple(map(tuple, m.tolist())))

    # convenience constructors ------------------------------------------------

    @classmethod
    def free(cls, k, n=1):
        return cls(FREE, k, n=n)

    @classmethod
    def inverse_quadratic(cls, k, alpha, n=1):
        return cls(INVERSE_QUADRATIC, k, alpha=alpha, n=n)

    @classmethod
    def linear(cls, k, alpha, beta):
        return cls(LINEAR, k, alpha=alpha, beta=beta)

    @classmethod
    def quadratic(cls, k, alpha, omega):
        return cls(QUADRATIC, k, alpha=alpha, omega=omega)

    @classmethod
    def ndim_linear(cls, k, alpha, beta, n, ajk=None):
        return cls(NDIM_LINEAR, k, alpha=alpha, beta=beta, n=n, ajk=ajk)

    @classmethod
    def nls2d(cls, k, coupling=1.0):
        if abs(np.real(k)) > 1e-12 * abs(k):
            raise DomainError("the 2-d NLS family needs purely imaginary k")
        return cls(NLS2D, k, n=2, coupling=coupling)

    @property
    def komega(self):
        return self.k * self.omega

    @property
    def komega_is_real(self):
        kw = self.komega
        return abs(np.imag(kw)) <= 1e-12 * max(abs(kw), 1.0)


@dataclass(frozen=True)
class Point:
    """Coordinate pair {t, x}; x is a tuple of space coordinates."""

    t: complex
    x: tuple

    def __init__(self, t, x):
        object.__setattr__(self, "t", t)
        if np.ndim(x) == 0:
            x = (x,)
        object.__setattr__(self, "x", tuple(x))

    @property
    def x1(self):
        return self.x[0]

    @property
    def n(self):
        return len(self.x)


@dataclass(frozen=True)
class GalileanData:
    """Affine data of the x' = x + sigma + v t reduction."""

    sigma: float
    v: float
    lambda_shift: float


# -- scalar-generic primitives ----------------------------------------------


def mobius_denominator(m: Mat2, t):
    r = m.a * t + m.b
    if np.min(np.abs(jets.value_of(r))) < SINGULAR_TOL:
        raise SingularTime("a t + b vanishes at a requested point")
    return r


def mobius_time(m: Mat2, t):
    """t' = (c t + d)/(a t + b) together with the denominator."""
    r = mobius_denominator(m, t)
    return (m.c * t + m.d) / r, r


def linear_xi_f(l: GroupElement, spec: FamilySpec, t):
    """Scale and shift of the affine space map for the linear family."""
    tp, r = mobius_time(l.m, t)
    xi = 1.0 / r
    k2b = spec.k ** 2 * spec.beta
    f = l.mu - l.nu * tp + k2b * (tp * tp - t * t / r)
    return tp, xi, f, r


def quadratic_frame(l: GroupElement, spec: FamilySpec, t):
    """Mobius data in the exponential time variable for the quadratic family.

    Returns (tp, xp_scale xi, shift f, u, den, num).  Square roots are taken
    so that the frame is continuous at the group unit: the scale uses the
    principal root of u/((a u + b)(c u + d)) and sqrt(u) means e^{2 k omega t}.
    """
    kw = spec.k * spec.omega
    u = jets.exp(4.0 * kw * t)
    den = l.a * u + l.b
    num = l.c * u + l.d
    den0 = jets.value_of(den)
    num0 = jets.value_of(num)
    if np.min(np.abs(den0)) < SINGULAR_TOL:
        raise SingularTime("a u + b vanishes at a requested point")
    if np.min(np.abs(num0)) < SINGULAR_TOL:
        raise SingularTime("c u + d vanishes at a requested point")
    ratio = u / (den * num)
    r0 = np.asarray(jets.value_of(ratio))
    if spec.komega_is_real:
        # principal square roots need the product off the negative real axis
        if np.any((np.real(r0) <= 0) & (np.abs(np.imag(r0)) <= 1e-10 * np.abs(r0))):
            raise BranchError("(a u + b)(c u + d) crossed the branch cut")
    xi = jets.sqrt(ratio)
    rootu = jets.exp(2.0 * kw * t)
    w = num * xi / rootu  # square root of u'=num/den consistent with xi
    f = l.nu * w - l.mu / w
    up = num / den
    tp = _quadratic_time(up, t, kw, spec)
    return tp, xi, f, u, den, num


def _quadratic_time(up, t, kw, spec):
    """t' from the transformed exponential variable, continuous at the unit.

    For real k*omega the principal logarithm is real; for purely imaginary
    k*omega the time is periodic and the representative nearest to t is
    reported.
    """
    up0 = np.asarray(jets.value_of(up))
    if spec.komega_is_real:
        if np.any((np.real(up0) <= 0) & (np.abs(np.imag(up0)) <= 1e-10 * np.abs(up0))):
            raise BranchError("u' landed on the branch cut of the logarithm")
        return jets.log(up) / (4.0 * kw)
    tp = jets.log(up) / (4.0 * kw)
    period = 2.0 * np.pi / abs(4.0 * kw)
    t0 = jets.value_of(t)
    shift = np.round(np.real(t0 - jets.value_of(tp)) / period) * period
    return tp + shift


# -- public actions ----------------------------------------------------------


def act_inverse_quadratic(m: Mat2, z: Point) -> Point:
    """t' = (c t + d)/(a t + b), x' = x/(a t + b)."""
    tp, r = mobius_time(m, z.t)
    return Point(tp, tuple(xj / r for xj in z.x))


def act_linear(l: GroupElement, z: Point, spec: FamilySpec) -> Point:
    """Affine space map of the linear family, applied componentwise."""
    if spec.family not in (LINEAR, NDIM_LINEAR, FREE, NLS2D):
        raise DomainError(f"act_linear does not apply to family {spec.family!r}")
    tp, xi, f, _ = linear_xi_f(l, spec, z.t)
    return Point(tp, tuple(xi * xj + f for xj in z.x))


def act_quadratic(l: GroupElement, z: Point, spec: FamilySpec) -> Point:
    if spec.family != QUADRATIC:
        raise DomainError("act_quadratic needs the quadratic family")
    tp, xi, f, *_ = quadratic_frame(l, spec, z.t)
    return Point(tp, tuple(xi * xj + f for xj in z.x))


def act(l: GroupElement, z: Point, spec: FamilySpec) -> Point:
    """Family dispatch for the group action."""
    if spec.family == INVERSE_QUADRATIC:
        return act_inverse_quadratic(l.m, z)
    if spec.family == QUADRATIC:
        return act_quadratic(l, z, spec)
    return act_linear(l, z, spec)


def galilean_params(l: GroupElement, spec: FamilySpec) -> GalileanData:
    """Affine data sigma, v for upper-unitriangular elements."""
    m = l.m
    if max(abs(m.c - 1.0), abs(m.a), abs(m.b - 1.0)) > 1e-12:
        raise ShapeError("element is not of the time-translation shape")
    lam = m.d
    k2b = spec.k ** 2 * spec.beta
    sigma = l.mu - l.nu * lam + k2b * lam ** 2
    v = 2.0 * k2b * lam - l.nu
    return GalileanData(sigma, v, lam)


def comoving_identity_check(l: GroupElement, z: Point, spec: FamilySpec):
    """|LHS - RHS| of the translation-free comoving-coordinate identity
    x' - k^2 beta t'^2 = (x - k^2 beta t^2)/(a t + b)."""
    zp = act_linear(l, z, spec)
    k2b = spec.k ** 2 * spec.beta
    r = l.a * z.t + l.b
    lhs = zp.x1 - k2b * zp.t ** 2
    rhs = (z.x1 - k2b * z.t ** 2) / r
    return abs(lhs - rhs)


def reality_domain_check(l: GroupElement, t, spec: FamilySpec) -> bool:
    """Whether the quadratic action stays real at time t.

    Real k*omega: a u + b and c u + d real with positive product.  Purely
    imaginary k*omega: the matrix is of the circle-preserving shape and the
    translations satisfy mu* = -nu.
    """
    if spec.family != QUADRATIC:
        raise DomainError("reality_domain_check needs the quadratic family")
    kw = spec.k * spec.omega
    if spec.komega_is_real:
        u = np.exp(4.0 * np.real(kw) * np.real(t))
        den = l.a * u + l.b
        num = l.c * u + l.d
        for v in (den, num):
            if abs(np.imag(v)) > 1e-10 * max(1.0, abs(v)):
                return False
        return np.real(den) * np.real(num) > 0
    from .group import is_disk_shaped

    return is_disk_shaped(l.m) and abs(np.conj(l.mu) + l.nu) <= 1e-10
