import numpy as np
import pytest

from schroedsym.coords import (
    FamilySpec,
    Point,
    act,
    act_inverse_quadratic,
    act_linear,
    act_quadratic,
    galilean_params,
    reality_domain_check,
    comoving_identity_check,
)
from schroedsym.errors import BranchError, DomainError, ShapeError, SingularTime, ZeroK, ZeroOmega
from schroedsym.group import DiskParams, GroupElement, Mat2, compose, disk_parametrize
from schroedsym.sampling import random_admissible_element, random_disk_element, random_element, random_sl2r

RNG = np.random.default_rng(11)

LIN = FamilySpec.linear(k=0.7, alpha=0.3, beta=0.9)
QUAD = FamilySpec.quadratic(k=0.8, alpha=0.4, omega=0.6)
DISK = FamilySpec.quadratic(k=0.8j, alpha=0.4, omega=0.6)


def test_family_spec_validation():
    with pytest.raises(ZeroK):
        FamilySpec.linear(0.0, 0.0, 1.0)
    with pytest.raises(ZeroOmega):
        FamilySpec.quadratic(1.0, 0.0, 0.0)
    with pytest.raises(DomainError):
        FamilySpec("linear", k=1.0 + 1.0j)  # neither real nor imaginary
    with pytest.raises(DomainError):
        FamilySpec.ndim_linear(1.0, 0.0, 0.0, 2, [[1.0, 0.0], [0.0, 1.0]])
    with pytest.raises(DomainError):
        FamilySpec.nls2d(1.0)
    spec = FamilySpec.ndim_linear(1.0, 0.0, 0.0, 2, [[0.0, 0.3], [0.3, 0.0]])
    assert spec.ajk[0][1] == 0.3


def test_inverse_quadratic_action_specials():
    z = Point(0.2, 0.5)
    ident = act_inverse_quadratic(Mat2.identity(), z)
    assert ident.t == z.t and ident.x1 == z.x1
    shift = act_inverse_quadratic(Mat2(1.0, 0.8, 0.0, 1.0), z)
    assert abs(shift.t - 1.0) < 1e-15 and shift.x1 == 0.5
    dil = act_inverse_quadratic(Mat2(2.0, 0.0, 0.0, 0.5), z)
    assert abs(dil.t - 0.8) < 1e-15 and abs(dil.x1 - 1.0) < 1e-15


def test_singular_time_raises():
    with pytest.raises(SingularTime):
        act_inverse_quadratic(Mat2(0.0, -1.0, 1.0, 0.0), Point(0.0, 1.0))


def test_act_linear_translation_only():
    # beta = 0 with a unit matrix: x' = x + mu - nu t
    spec = FamilySpec.linear(k=0.7, alpha=0.0, beta=0.0)
    l = GroupElement(Mat2.identity(), 0.4, -0.3)
    z = act_linear(l, Point(0.6, 1.1), spec)
    assert abs(z.t - 0.6) < 1e-15
    assert abs(z.x1 - (1.1 + 0.4 + 0.3 * 0.6)) < 1e-15


def test_linear_homomorphism_and_identity():
    ident = GroupElement.identity()
    for _ in range(100):
        l1, l2 = random_element(RNG), random_element(RNG)
        z = Point(RNG.uniform(-0.4, 0.4), RNG.uniform(-1.2, 1.2))
        zi = act_linear(ident, z, LIN)
        assert abs(zi.t - z.t) < 1e-14 and abs(zi.x1 - z.x1) < 1e-14
        seq = act_linear(l1, act_linear(l2, z, LIN), LIN)
        joint = act_linear(compose(l1, l2), z, LIN)
        assert abs(seq.t - joint.t) < 1e-11
        assert abs(seq.x1 - joint.x1) < 1e-11


def test_ndim_pairwise_difference_scaling():
    spec = FamilySpec.ndim_linear(0.7, 0.3, 0.9, 3)
    for _ in range(50):
        l = random_element(RNG)
        t = RNG.uniform(-0.4, 0.4)
        xs = RNG.uniform(-1.5, 1.5, 3)
        zp = act_linear(l, Point(t, tuple(xs)), spec)
        r = l.a * t + l.b
        for i in range(3):
            for j in range(3):
                assert abs((zp.x[i] - zp.x[j]) - (xs[i] - xs[j]) / r) < 1e-12


def test_quadratic_action_identity_and_reality():
    ident = GroupElement.identity()
    for t in (-1.2, 0.0, 0.7, 2.5):
        z = act_quadratic(ident, Point(t, 0.8), QUAD)
        assert abs(z.t - t) < 1e-13 and abs(z.x1 - 0.8) < 1e-13
        zd = act_quadratic(ident, Point(t, 0.8), DISK)
        assert abs(zd.t - t) < 1e-13 and abs(zd.x1 - 0.8) < 1e-13
    for _ in range(100):
        l = random_admissible_element(RNG)
        z = act_quadratic(l, Point(RNG.uniform(-0.5, 0.5), RNG.uniform(-1, 1)), QUAD)
        assert abs(np.imag(z.t)) < 1e-12 and abs(np.imag(z.x1)) < 1e-12
    for _ in range(100):
        l = random_disk_element(RNG)
        z = act_quadratic(l, Point(RNG.uniform(-0.5, 0.5), RNG.uniform(-1, 1)), DISK)
        assert abs(np.imag(z.x1)) < 1e-10  # reality of the space coordinate


def test_disk_scale_is_reciprocal_modulus():
    from schroedsym.coords import quadratic_frame

    for _ in range(50):
        l = random_disk_element(RNG)
        t = RNG.uniform(-0.5, 0.5)
        _, xi, _, u, den, _ = quadratic_frame(l, DISK, t)
        assert xi > 0
        assert abs(xi - 1.0 / abs(den)) < 1e-12


def test_quadratic_branch_error():
    # a < 0 pushes (a u + b)(c u + d) negative for large u
    l = GroupElement(Mat2(1.0, 0.0, -0.5, 1.0))
    with pytest.raises(BranchError):
        act_quadratic(l, Point(2.5, 0.3), QUAD)


def test_galilean_params_and_affine_formula():
    for _ in range(100):
        lam, mu, nu = RNG.uniform(-0.8, 0.8, 3)
        l = GroupElement(Mat2(1.0, lam, 0.0, 1.0), mu, nu)
        gd = galilean_params(l, LIN)
        k2b = LIN.k ** 2 * LIN.beta
        assert abs(gd.sigma - (mu - nu * lam + k2b * lam ** 2)) < 1e-14
        assert abs(gd.v - (2 * k2b * lam - nu)) < 1e-14
        t, x = RNG.uniform(-0.5, 0.5), RNG.uniform(-1.5, 1.5)
        zp = act_linear(l, Point(t, x), LIN)
        assert abs(zp.x1 - (x + gd.sigma + gd.v * t)) < 1e-12
    assert galilean_params(GroupElement.identity(), LIN) == galilean_params(
        GroupElement(Mat2.identity(), 0.0, 0.0), LIN)
    gd0 = galilean_params(GroupElement.identity(), LIN)
    assert gd0.sigma == 0.0 and gd0.v == 0.0
    with pytest.raises(ShapeError):
        galilean_params(GroupElement(Mat2(2.0, 0.0, 0.0, 0.5)), LIN)


def test_special_galilean_subgroup_values():
    # nu = 0 shear: sigma = mu + k^2 beta lam^2, v = 2 k^2 beta lam
    lam, mu = 0.5, 0.3
    l = GroupElement(Mat2(1.0, lam, 0.0, 1.0), mu, 0.0)
    gd = galilean_params(l, LIN)
    k2b = LIN.k ** 2 * LIN.beta
    assert abs(gd.sigma - (mu + k2b * lam ** 2)) < 1e-15
    assert abs(gd.v - 2 * k2b * lam) < 1e-15


def test_comoving_identity():
    for _ in range(100):
        l = GroupElement(random_sl2r(RNG), 0.0, 0.0)
        z = Point(RNG.uniform(-0.4, 0.4), RNG.uniform(-1.5, 1.5))
        assert comoving_identity_check(l, z, LIN) < 1e-12
    assert comoving_identity_check(GroupElement.identity(), Point(0.3, 0.7), LIN) == 0.0
    # a translation breaks the identity
    bad = GroupElement(Mat2.identity(), 0.7, 0.0)
    assert comoving_identity_check(bad, Point(0.2, 0.4), LIN) > 1e-3


def test_reality_domain_check():
    assert reality_domain_check(GroupElement.identity(), 1.7, QUAD)
    for _ in range(50):
        assert reality_domain_check(random_admissible_element(RNG), RNG.uniform(-1, 1), QUAD)
    assert not reality_domain_check(GroupElement(Mat2(1.0, 0.0, -0.5, 1.0)), 3.0, QUAD)
    assert reality_domain_check(random_disk_element(RNG), 0.4, DISK)
    # broken pairing mu* != -nu fails the circle-subgroup test
    el = disk_parametrize(DiskParams(0.2, 0.1))
    assert not reality_domain_check(GroupElement(el.m, 0.5, 0.5), 0.4, DISK)


def test_mobius_composition_fraction_identities():
    # the algebraic identities behind two-step composition of the time map:
    # with M'' = M M', a tbar + b = (a'' t + b'')/(a' t + b') at tbar = Mobius(M', t),
    # plus the reverse eliminations of the primed row
    for _ in range(100):
        m, mp = random_sl2r(RNG), random_sl2r(RNG)
        mpp = m.mul(mp)
        t = RNG.uniform(-0.5, 0.5)
        tbar = (mp.c * t + mp.d) / (mp.a * t + mp.b)
        lhs = m.a * tbar + m.b
        assert abs(lhs - (mpp.a * t + mpp.b) / (mp.a * t + mp.b)) < 1e-13
        lhs2 = m.c * tbar + m.d
        assert abs(lhs2 - (mpp.c * t + mpp.d) / (mp.a * t + mp.b)) < 1e-13
        denom = (mp.a * t + mp.b) * (mpp.a * t + mpp.b)
        rhs = mpp.a / (mpp.a * t + mpp.b) - mp.a / (mp.a * t + mp.b)
        assert abs(m.a / denom - rhs) < 1e-13
        assert abs((mp.a * t + mp.b)
                   - (m.c * (mpp.a * t + mpp.b) - m.a * (mpp.c * t + mpp.d))) < 1e-13
        assert abs((mp.c * t + mp.d)
                   - (-m.d * (mpp.a * t + mpp.b) + m.b * (mpp.c * t + mpp.d))) < 1e-13


def test_act_dispatch_matches_family_actions():
    z = Point(0.25, 0.9)
    l = random_element(RNG)
    za = act(l, z, LIN)
    zb = act_linear(l, z, LIN)
    assert za.t == zb.t and za.x == zb.x
    la = random_admissible_element(RNG)
    assert act(la, z, QUAD).x == act_quadratic(la, z, QUAD).x
