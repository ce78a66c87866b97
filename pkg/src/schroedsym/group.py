"""Symmetry-group algebra: unimodular 2x2 matrices with translation pairs.

The matrix layout is M = [[c, d], [a, b]] with unit determinant
c*b - a*d = 1, so the time variable transforms as t -> (c t + d)/(a t + b).
Group elements pair such a matrix with a translation vector (mu, nu) and
compose semidirectly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DeterminantError, DomainError, ZeroK, ZeroOmega

DET_TOL = 1e-12


@dataclass(frozen=True)
class Mat2:
    """Unimodular 2x2 matrix in the [[c, d], [a, b]] layout."""

    c: complex
    d: complex
    a: complex
    b: complex

    def __post_init__(self):
        if abs(self.det - 1.0) > DET_TOL:
            raise DeterminantError(f"determinant {self.det} differs from 1 by more than {DET_TOL}")

    @property
    def det(self):
        return self.c * self.b - self.a * self.d

    @classmethod
    def identity(cls):
        return cls(1.0, 0.0, 0.0, 1.0)

    def mul(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.c * other.c + self.d * other.a,
            self.c * other.d + self.d * other.b,
            self.a * other.c + self.b * other.a,
            self.a * other.d + self.b * other.b,
        )

    def inv(self) -> "Mat2":
        return Mat2(self.b, -self.d, -self.a, self.c)

    def apply_vec(self, mu, nu):
        """Matrix action on a translation pair."""
        return self.c * mu + self.d * nu, self.a * mu + self.b * nu

    def is_real(self, tol=1e-12) -> bool:
        return max(abs(np.imag(v)) for v in (self.a, self.b, self.c, self.d)) <= tol

    def as_array(self):
        return np.array([[self.c, self.d], [self.a, self.b]])

    def symplectic_defect(self) -> float:
        """max |M^T J M - J| entry; zero for every unimodular matrix."""
        J = np.array([[0.0, 1.0], [-1.0, 0.0]])
        m = self.as_array()
        return float(np.abs(m.T @ J @ m - J).max())


@dataclass(frozen=True)
class GroupElement:
    """Pair of a unimodular matrix and a translation vector (mu, nu)."""

    m: Mat2
    mu: complex = 0.0
    nu: complex = 0.0

    @classmethod
    def identity(cls):
        return cls(Mat2.identity(), 0.0, 0.0)

    @property
    def a(self):
        return self.m.a

    @property
    def b(self):
        return self.m.b

    @property
    def c(self):
        return self.m.c

    @property
    def d(self):
        return self.m.d


def make_element(m: Mat2, mu=0.0, nu=0.0) -> GroupElement:
    """Validated constructor; (identity, 0, 0) is the group unit."""
    if abs(m.det - 1.0) > DET_TOL:
        raise DeterminantError(f"determinant {m.det} differs from 1 by more than {DET_TOL}")
    return GroupElement(m, mu, nu)


def compose(l1: GroupElement, l2: GroupElement) -> GroupElement:
    """Semidirect product: {M M', (mu, nu) + M (mu', nu')}."""
    dmu, dnu = l1.m.apply_vec(l2.mu, l2.nu)
    return GroupElement(l1.m.mul(l2.m), l1.mu + dmu, l1.nu + dnu)


def inverse(l: GroupElement) -> GroupElement:
    """{M^-1, -M^-1 (mu, nu)}."""
    minv = l.m.inv()
    mu, nu = minv.apply_vec(l.mu, l.nu)
    return GroupElement(minv, -mu, -nu)


@dataclass(frozen=True)
class CocycleValue:
    """Scalar cocycle appearing in the multiplier composition law."""

    value: complex


def cocycle_linear(l1: GroupElement, l2: GroupElement, k) -> CocycleValue:
    """Cocycle of the linear-potential family.

    Equals (1/4k) * (mu, nu)^T J M (mu', nu') where M, (mu, nu) come from
    the first element and (mu', nu') from the second.
    """
    if k == 0:
        raise ZeroK("k must be nonzero")
    m, mu, nu = l1.m, l1.mu, l1.nu
    val = (mu * m.a - nu * m.c) * l2.mu + (mu * m.b - nu * m.d) * l2.nu
    return CocycleValue(val / (4.0 * k))


def cocycle_quadratic(l1: GroupElement, l2: GroupElement, omega, variant="resolved") -> CocycleValue:
    """Cocycle of the quadratic-potential family.

    Two conventions for the second bracket appear in the literature.
    ``variant="resolved"`` uses the one the multiplier-product oracle
    selects (the same symplectic structure as the linear family);
    ``variant="printed"`` keeps the rejected alternative, retained for
    falsification tests.
    """
    if omega == 0:
        raise ZeroOmega("omega must be nonzero")
    m, mu, nu = l1.m, l1.mu, l1.nu
    if variant == "resolved":
        val = (mu * m.a - nu * m.c) * l2.mu + (mu * m.b - nu * m.d) * l2.nu
    elif variant == "printed":
        val = (mu * m.a - nu * m.c) * l2.mu + (mu * m.b - nu * m.a) * l2.nu
    else:
        raise ValueError(f"unknown cocycle variant {variant!r}")
    return CocycleValue(omega * val)


@dataclass(frozen=True)
class DiskParams:
    """Angle/disk coordinates for the unit-circle-preserving subgroup."""

    theta: float
    lam: complex

    def __post_init__(self):
        if abs(self.lam) >= 1.0:
            raise DomainError(f"|lam| = {abs(self.lam)} must be < 1")


def disk_parametrize(p: DiskParams) -> GroupElement:
    """Matrix with b = e^{-i theta}/sqrt(1-|lam|^2), a = -lam* e^{i theta}/...,
    c = b*, d = a*; it maps the unit circle onto itself in the Mobius variable."""
    root = np.sqrt(1.0 - abs(p.lam) ** 2)
    eit = np.exp(1j * p.theta)
    a = -np.conj(p.lam) * eit / root
    b = np.conj(eit) / root
    return GroupElement(Mat2(np.conj(b), np.conj(a), a, b), 0.0, 0.0)


def is_disk_shaped(m: Mat2, tol=1e-10) -> bool:
    """c = b*, d = a* within tolerance."""
    return abs(m.c - np.conj(m.b)) <= tol and abs(m.d - np.conj(m.a)) <= tol


def is_semigroup_admissible(l: GroupElement, tol=1e-12) -> bool:
    """All four real matrix entries nonnegative, so the transformed time
    stays real for every positive Mobius variable."""
    if not l.m.is_real(tol):
        return False
    return all(np.real(v) >= -tol for v in (l.a, l.b, l.c, l.d))
