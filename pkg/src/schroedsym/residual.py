"""Residual verification of the defining evolution operator.

Evaluates r = psi_t - k (Delta psi - V psi) on jet-backed functions, builds
transformed functions K * psi(mapped coordinates) with chain-rule partials,
and checks the operator intertwining identity pointwise, including on
functions that do not solve the equation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import jets
from .coords import (
    FREE,
    INVERSE_QUADRATIC,
    LINEAR,
    NDIM_LINEAR,
    NLS2D,
    QUADRATIC,
    FamilySpec,
    Point,
    act,
    linear_xi_f,
    quadratic_frame,
)
from .errors import DomainError
from .group import GroupElement
from .multiplier import IntertwinerParams, k0_map, multiplier
from .solutions import SmoothFn

REL_FLOOR = 1e-300


@dataclass(frozen=True)
class GridSpec:
    """Rectangular sampling grid with a finite-difference step."""

    t_range: tuple
    x_range: tuple
    nt: int = 14
    nx: int = 14
    h_fd: float = 1e-3

    def __post_init__(self):
        if self.nt < 3 or self.nx < 3:
            raise DomainError("grid needs at least 3 points per axis")
        if not (self.t_range[1] > self.t_range[0] and self.x_range[1] > self.x_range[0]):
            raise DomainError("grid ranges must be nondegenerate")

    def points(self, ndim=1):
        ts = np.linspace(self.t_range[0], self.t_range[1], self.nt)
        xs = np.linspace(self.x_range[0], self.x_range[1], self.nx)
        if ndim == 1:
            T, X = np.meshgrid(ts, xs, indexing="ij")
            return T.ravel(), [X.ravel()]
        axes = [ts] + [xs + 0.37 * i for i in range(ndim)]
        mesh = np.meshgrid(*axes, indexing="ij")
        return mesh[0].ravel(), [m.ravel() for m in mesh[1:]]


@dataclass(frozen=True)
class ResidualReport:
    """Grid summary of a pointwise residual."""

    max_abs: float
    max_rel: float
    argmax: tuple
    n_points: int
    convergence_order: float = None
    n_domain_errors: int = 0

    def __str__(self):
        s = (f"max_abs={self.max_abs:.3e} max_rel={self.max_rel:.3e} "
             f"at (t, x)={self.argmax} over {self.n_points} points")
        if self.convergence_order is not None:
            s += f", fd order {self.convergence_order:.2f}"
        return s


def potential(spec: FamilySpec, xs):
    """V(x); ``xs`` is a list of per-coordinate arrays (or scalars)."""
    if spec.family in (FREE, NLS2D):
        return 0.0
    if spec.family == INVERSE_QUADRATIC:
        x2 = sum(np.asarray(x) ** 2 for x in xs)
        return spec.alpha / x2
    if spec.family == LINEAR:
        return spec.alpha + spec.beta * np.asarray(xs[0])
    if spec.family == QUADRATIC:
        return spec.alpha + spec.omega ** 2 * np.asarray(xs[0]) ** 2
    if spec.family == NDIM_LINEAR:
        v = sum(spec.alpha + spec.beta * np.asarray(x) for x in xs)
        if spec.ajk is not None:
            a = np.asarray(spec.ajk)
            for i in range(spec.n):
                for j in range(spec.n):
                    if i != j and a[i, j] != 0:
                        v = v + a[i, j] / (np.asarray(xs[i]) - np.asarray(xs[j])) ** 2
        return v
    raise DomainError(f"no potential for family {spec.family!r}")


def _residual_from_jet(j, spec: FamilySpec, xs):
    ndim = j.nvars - 1
    psi = j.value
    pt = j.partial((1,) + (0,) * ndim)
    lap = 0.0
    for i in range(ndim):
        alpha = [0] * (ndim + 1)
        alpha[1 + i] = 2
        lap = lap + j.partial(tuple(alpha))
    if spec.family == NLS2D:
        cubic = spec.coupling * np.abs(psi) ** 2 * psi
        return pt - spec.k * (lap + cubic)
    return pt - spec.k * (lap - potential(spec, xs) * psi)


def residual_at(fn: SmoothFn, spec: FamilySpec, z: Point):
    """(d/dt - k Delta + k V) fn at one point, from analytic partials."""
    fn.check_domain(z.t, z.x)
    j = fn.jet(z.t, z.x if fn.ndim > 1 else z.x1, 2)
    return _residual_from_jet(j, spec, z.x)


def residual_arrays(fn: SmoothFn, spec: FamilySpec, t, xs):
    """Vectorized residual and value over point arrays."""
    x_arg = xs[0] if fn.ndim == 1 else tuple(xs)
    j = fn.jet(t, x_arg, 2)
    return _residual_from_jet(j, spec, xs), j.value


def _fd_residual_arrays(fn: SmoothFn, spec: FamilySpec, t, xs, h):
    """Centered second-order stencils on function values."""
    def val(tv, xvs):
        x_arg = xvs[0] if fn.ndim == 1 else tuple(xvs)
        return fn.jet(tv, x_arg, 0).value

    psi = val(t, xs)
    pt = (val(t + h, xs) - val(t - h, xs)) / (2.0 * h)
    lap = 0.0
    for i in range(len(xs)):
        up = [x + (h if j == i else 0.0) for j, x in enumerate(xs)]
        dn = [x - (h if j == i else 0.0) for j, x in enumerate(xs)]
        lap = lap + (val(t, up) - 2.0 * psi + val(t, dn)) / h ** 2
    if spec.family == NLS2D:
        r = pt - spec.k * (lap + spec.coupling * np.abs(psi) ** 2 * psi)
    else:
        r = pt - spec.k * (lap - potential(spec, xs) * psi)
    return r, psi


def _report(resid, psi, t, xs, order=None, nerr=0):
    resid = np.atleast_1d(np.asarray(resid))
    psi = np.atleast_1d(np.asarray(psi))
    absr = np.abs(resid)
    rel = absr / (np.abs(psi) + REL_FLOOR)
    i = int(np.argmax(absr))
    t = np.atleast_1d(np.asarray(t))
    arg = (complex(np.atleast_1d(t)[i if t.size > 1 else 0]),) + tuple(
        complex(np.atleast_1d(np.asarray(x))[i if np.asarray(x).size > 1 else 0]) for x in xs
    )
    return ResidualReport(
        max_abs=float(absr.max()),
        max_rel=float(rel.max()),
        argmax=arg,
        n_points=int(resid.size),
        convergence_order=order,
        n_domain_errors=nerr,
    )


def grid_residual(fn: SmoothFn, spec: FamilySpec, grid: GridSpec, mode="analytic") -> ResidualReport:
    """Residual report over the grid.

    ``finite_difference`` mode uses centered stencils at h and h/2 and
    reports the observed convergence order towards the analytic residual.
    """
    t, xs = grid.points(fn.ndim)
    try:
        fn.check_domain(t, xs[0] if fn.ndim == 1 else tuple(xs))
        in_domain = None
    except DomainError:
        # keep the points the function accepts, count the rest
        keep = []
        for i in range(t.size):
            keep.append(fn.in_domain(t[i], xs[0][i] if fn.ndim == 1 else tuple(x[i] for x in xs)))
        in_domain = np.asarray(keep)
        if not in_domain.any():
            raise DomainError("no grid point lies in the function's domain")
        t = t[in_domain]
        xs = [x[in_domain] for x in xs]
    nerr = 0 if in_domain is None else int((~in_domain).sum())

    if mode == "analytic":
        resid, psi = residual_arrays(fn, spec, t, xs)
        return _report(resid, psi, t, xs, nerr=nerr)
    if mode != "finite_difference":
        raise DomainError(f"unknown mode {mode!r}")
    exact, psi = residual_arrays(fn, spec, t, xs)
    r1, _ = _fd_residual_arrays(fn, spec, t, xs, grid.h_fd)
    r2, _ = _fd_residual_arrays(fn, spec, t, xs, grid.h_fd / 2.0)
    e1 = np.max(np.abs(r1 - exact))
    e2 = np.max(np.abs(r2 - exact))
    order = float(np.log2(e1 / e2)) if e2 > 0 else None
    return _report(r2, psi, t, xs, order=order, nerr=nerr)


class PullbackFn(SmoothFn):
    """K(t, x) * psi(t', x') with chain-rule partials through the frame.

    ``frame(t_jet, x_jets) -> (t'_jet, [x'_jets], K_jet)`` fixes the
    coordinate map and multiplier; the base function's jet at the mapped
    point is Taylor-composed with the map jets.
    """

    def __init__(self, base: SmoothFn, frame, ndim=None):
        self.base = base
        self.frame = frame
        self.ndim = base.ndim if ndim is None else ndim

    def check_domain(self, t, x):
        tj, xjs = self._seed(t, x, 0)
        tp, xps, _ = self.frame(tj, xjs)
        tv = jets.value_of(tp)
        xvs = [jets.value_of(xp) for xp in xps]
        self.base.check_domain(tv, xvs[0] if self.base.ndim == 1 else tuple(xvs))

    def jet(self, t, x, order):
        tj, xjs = self._seed(t, x, order)
        tp, xps, kj = self.frame(tj, xjs)
        tv = jets.value_of(tp)
        xvs = [jets.value_of(xp) for xp in xps]
        self.base.check_domain(tv, xvs[0] if self.base.ndim == 1 else tuple(xvs))
        bj = self.base.jet(tv, xvs[0] if self.base.ndim == 1 else tuple(xvs), order)
        return jets.compose(bj, [tp] + xps) * kj


def transformed(fn: SmoothFn, l: GroupElement, spec: FamilySpec) -> PullbackFn:
    """The group-transformed function K(Z | element) * fn(element Z)."""

    def frame(tj, xjs):
        zj = Point(tj, tuple(xjs))
        zp = act(l, zj, spec)
        kj = multiplier(l, zj, spec)
        return zp.t, list(zp.x), kj

    return PullbackFn(fn, frame, ndim=spec.n)


def lift_frame(map_kind: str, spec: FamilySpec, params: IntertwinerParams = None):
    """Frame of one of the named solution-space lifts.

    f1/f2 lift free solutions into the linear family, phi1/phi2 invert
    them, K0 lifts free solutions into the quadratic family.
    """
    if map_kind == "K0":
        if params is None:
            raise DomainError("the K0 lift needs intertwiner constants")

        def frame(tj, xjs):
            tp, xp, kj = k0_map(params, spec, tj, xjs[0])
            return tp, [xp], kj

        return frame

    from .solutions import f_pair, phi_pair

    k2b = spec.k ** 2 * spec.beta
    if map_kind in ("f1", "f2"):
        F = f_pair(spec)[0 if map_kind == "f1" else 1]
    elif map_kind in ("phi1", "phi2"):
        F = phi_pair(spec)[0 if map_kind == "phi1" else 1]
    else:
        raise DomainError(f"unknown map kind {map_kind!r}")

    def frame(tj, xjs):
        xj = xjs[0]
        if map_kind == "f1":
            tp, xp = tj, xj - k2b * tj * tj
        elif map_kind == "f2":
            tp, xp = -tj.reciprocal(), xj / tj - k2b * tj
        elif map_kind == "phi1":
            tp, xp = tj, xj + k2b * tj * tj
        else:  # phi2
            tp, xp = -tj.reciprocal(), xj / tj + k2b * tj.reciprocal() * tj.reciprocal()
        kj = F.jet(jets.value_of(tj), jets.value_of(xj), tj.order)
        return tp, [xp], kj

    return frame


def verify_transformed_solution(fn: SmoothFn, l: GroupElement, spec: FamilySpec,
                       grid: GridSpec) -> ResidualReport:
    """Residual of the transformed function; zero when fn solves the family."""
    return grid_residual(transformed(fn, l, spec), spec, grid)


def verify_lifted_solution(psi0: SmoothFn, map_kind: str, params,
                       spec_from: FamilySpec, spec_to: FamilySpec,
                       grid: GridSpec) -> ResidualReport:
    """Residual of the lifted function against the target family."""
    fam = spec_to if spec_to.family in (LINEAR, QUADRATIC) else spec_from
    mapped = PullbackFn(psi0, lift_frame(map_kind, fam, params))
    return grid_residual(mapped, spec_to, grid)


def verify_intertwining(fn: SmoothFn, l: GroupElement, spec: FamilySpec,
                        grid: GridSpec) -> ResidualReport:
    """Pointwise check of the operator identity behind the symmetry.

    Compares (d/dt - k Delta + k V)[K fn(mapped)] against
    phidot * K * [(d/dt' - k Delta' + k V') fn](mapped); fn need not solve
    the equation, so this tests the identity itself rather than solution
    preservation.
    """
    t, xs = grid.points(spec.n)
    lhs, psi_prime = residual_arrays(transformed(fn, l, spec), spec, t, xs)
    zp = act(l, Point(t, tuple(xs)), spec)
    if spec.family == QUADRATIC:
        _, xi, *_ = quadratic_frame(l, spec, t)
    else:
        _, xi, _, _ = linear_xi_f(l, spec, t)
    kval = multiplier(l, Point(t, tuple(xs)), spec)
    base_res, _ = residual_arrays(fn, spec, zp.t, list(zp.x))
    rhs = xi * xi * kval * base_res
    diff = lhs - rhs
    scale = np.abs(rhs) + np.abs(psi_prime) + REL_FLOOR
    rel = np.abs(diff) / scale
    i = int(np.argmax(np.abs(diff)))
    return ResidualReport(
        max_abs=float(np.abs(diff).max()),
        max_rel=float(rel.max()),
        argmax=(complex(t[i]),) + tuple(complex(x[i]) for x in xs),
        n_points=int(np.size(diff)),
    )
