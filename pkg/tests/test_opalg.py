import numpy as np
import pytest

from schroedsym.coords import FamilySpec, Point
from schroedsym.errors import FamilyMismatch, OrderError, ZeroK, ZeroOmega
from schroedsym.opalg import (
    DiffOp,
    LaurentPoly2,
    LINEAR_VARS,
    QUADRATIC_VARS,
    casimir_I2,
    casimir_I3,
    generators_linear,
    generators_quadratic,
    intertwine_check,
    op_commutator,
    op_compose,
)
from schroedsym.solutions import f_pair, g_functions

RNG = np.random.default_rng(2718)

K, ALPHA, BETA, OMEGA = 0.7, 0.3, 0.9, 0.6
GL = generators_linear(K, ALPHA, BETA)
GQ = generators_quadratic(K, ALPHA, OMEGA)
LIN = FamilySpec.linear(K, ALPHA, BETA)
QUAD = FamilySpec.quadratic(K, ALPHA, OMEGA)


def test_laurent_poly_ring():
    p = LaurentPoly2.term(1.0, 1, 0) + LaurentPoly2.term(1.0, -1, 0)
    want = LaurentPoly2({(2, 0): 1.0, (0, 0): 2.0, (-2, 0): 1.0})
    assert (p * p).max_abs_diff(want) == 0.0
    one = LaurentPoly2.const(1.0)
    assert (p * one).max_abs_diff(p) == 0.0
    # d/ds (s^2 x) = 2 s x ; d/ds s^-1 = -s^-2
    assert LaurentPoly2.term(1.0, 2, 1).derive(0).max_abs_diff(LaurentPoly2.term(2.0, 1, 1)) == 0.0
    assert LaurentPoly2.term(1.0, -1, 0).derive(0).max_abs_diff(LaurentPoly2.term(-1.0, -2, 0)) == 0.0
    assert LaurentPoly2.term(2.0, 0, 3).derive(1).max_abs_diff(LaurentPoly2.term(6.0, 0, 2)) == 0.0
    assert abs(p.evaluate(2.0, 0.0) - 2.5) < 1e-15


def test_leibniz_composition():
    # d2 . (x . ) = x d2 + 1
    dx = DiffOp.monomial(LINEAR_VARS, 1.0, 0, 0, 0, 1)
    x = DiffOp.monomial(LINEAR_VARS, 1.0, 0, 1, 0, 0)
    got = op_compose(dx, x)
    want = DiffOp.monomial(LINEAR_VARS, 1.0, 0, 1, 0, 1) + DiffOp.monomial(LINEAR_VARS, 1.0)
    assert got.max_abs_diff(want) == 0.0
    # T1^2 = d2^2 + 2 k beta t d2 + k^2 beta^2 t^2
    t1sq = op_compose(GL.T1, GL.T1)
    kb = K * BETA
    want = (DiffOp.monomial(LINEAR_VARS, 1.0, 0, 0, 0, 2)
            + DiffOp.monomial(LINEAR_VARS, 2.0 * kb, 1, 0, 0, 1)
            + DiffOp.monomial(LINEAR_VARS, kb * kb, 2, 0))
    assert t1sq.max_abs_diff(want) < 1e-15


def test_compose_associativity_random():
    basis = [GL.L3, GL.Lplus, GL.Lminus, GL.T1, GL.T2]
    for _ in range(20):
        a, b, c = (basis[RNG.integers(0, 5)] for _ in range(3))
        left = op_compose(op_compose(a, b), c)
        right = op_compose(a, op_compose(b, c))
        assert left.max_abs_diff(right) < 1e-13


def test_family_mismatch_raises():
    with pytest.raises(FamilyMismatch):
        op_compose(GL.T1, GQ.T1)
    with pytest.raises(ZeroK):
        generators_linear(0.0, 0.0, 1.0)
    with pytest.raises(ZeroOmega):
        generators_quadratic(1.0, 0.0, 0.0)


def test_commutator_tables():
    assert GL.commutator_table_defect() < 1e-13
    assert GQ.commutator_table_defect() < 1e-13
    # the central brackets explicitly
    want_lin = DiffOp.from_poly(LINEAR_VARS, LaurentPoly2.const(1.0 / (2.0 * K)))
    assert op_commutator(GL.T1, GL.T2).max_abs_diff(want_lin) < 1e-15
    want_quad = DiffOp.from_poly(QUADRATIC_VARS, LaurentPoly2.const(2.0 * OMEGA))
    assert op_commutator(GQ.T1, GQ.T2).max_abs_diff(want_quad) < 1e-15
    assert op_commutator(GL.T1, GL.T1).is_zero()


def test_tilde_generators_satisfy_same_table():
    from dataclasses import replace

    tl = replace(GL, L3=GL.L3t, Lplus=GL.Lplust, Lminus=GL.Lminust, T1=GL.T1t, T2=GL.T2t)
    assert tl.commutator_table_defect() < 1e-13
    tq = replace(GQ, L3=GQ.L3t, Lplus=GQ.Lplust, Lminus=GQ.Lminust, T1=GQ.T1t, T2=GQ.T2t)
    assert tq.commutator_table_defect() < 1e-13


def test_evolution_operator_identities():
    k1 = GL.Lplus - K * op_compose(GL.T1, GL.T1)
    assert k1.max_abs_diff(GL.Kop) < 1e-14
    d = GL.Lplus - (2.0 * K * K * BETA) * GL.T2 - (K * ALPHA) * GL.unit
    assert d.max_abs_diff(GL.D) < 1e-14
    k2 = (-4.0 * K * OMEGA) * GQ.L3 - (0.5 * K) * (
        op_compose(GQ.T1, GQ.T2) + op_compose(GQ.T2, GQ.T1))
    assert k2.max_abs_diff(GQ.Kop) < 1e-14
    dq = (-4.0 * K * OMEGA) * GQ.L3 - (K * ALPHA) * GQ.unit
    assert dq.max_abs_diff(GQ.D) < 1e-14


def test_intertwining_and_falsification():
    assert intertwine_check(GL, GL.Kop)
    assert intertwine_check(GQ, GQ.Kop)
    from dataclasses import replace

    broken = replace(GL, Lminus=GL.Lminus + 1e-3 * GL.unit)
    assert not intertwine_check(broken, GL.Kop)
    with pytest.raises(FamilyMismatch):
        intertwine_check(GL, GQ.Kop)
    # implied brackets with the evolution operator
    assert op_commutator(GL.Lplus, GL.Kop).is_zero()
    assert op_commutator(GL.T1, GL.Kop).is_zero()
    assert op_commutator(GL.T2, GL.Kop).is_zero()
    assert (op_commutator(GL.L3, GL.Kop) - GL.Kop).is_zero()
    assert op_commutator(GQ.L3, GQ.Kop).is_zero()
    assert op_commutator(GQ.T1, GQ.Kop).is_zero()
    assert op_commutator(GQ.T2, GQ.Kop).is_zero()


def test_casimirs_are_constants_and_factor():
    assert (casimir_I3(GL) - (3.0 / 16.0) * GL.unit).is_zero()
    assert (casimir_I3(GQ) - (3.0 / 16.0) * GQ.unit).is_zero()
    poly = LaurentPoly2.term(1.0, 0, 1) - LaurentPoly2.term(K * K * BETA, 2, 0)
    rhs = (3.0 / 16.0) * GL.unit + op_compose(
        DiffOp.from_poly(LINEAR_VARS, poly * poly * (0.25 / K)), GL.Kop)
    assert casimir_I2(GL).max_abs_diff(rhs) < 1e-14
    rhs_q = (3.0 / 16.0) * GQ.unit + op_compose(
        DiffOp.from_poly(QUADRATIC_VARS, LaurentPoly2.term(0.25 / K, 0, 2)), GQ.Kop)
    assert casimir_I2(GQ).max_abs_diff(rhs_q) < 1e-14
    assert op_commutator(casimir_I2(GL), GL.L3).is_zero()
    assert op_commutator(casimir_I3(GL), GL.T1).is_zero()


def test_jacobi_identity():
    basis = [GL.L3, GL.Lplus, GL.Lminus, GL.T1, GL.T2]
    for _ in range(15):
        a, b, c = (basis[RNG.integers(0, 5)] for _ in range(3))
        j = (op_commutator(a, op_commutator(b, c))
             + op_commutator(b, op_commutator(c, a))
             + op_commutator(c, op_commutator(a, b)))
        assert j.is_zero(1e-12)


def test_numeric_apply_eigenrelations():
    f1, f2 = f_pair(LIN)
    i2, i3 = casimir_I2(GL), casimir_I3(GL)
    for _ in range(25):
        z = Point(RNG.uniform(0.2, 1.0), RNG.uniform(-1.2, 1.2))
        v1, v2 = f1.value(z.t, z.x1), f2.value(z.t, z.x1)
        assert abs(GL.Lplus.apply(f1, z)) / abs(v1) < 1e-11
        assert abs(GL.T1.apply(f1, z)) / abs(v1) < 1e-11
        assert abs(GL.L3.apply(f1, z) + 0.25 * v1) / abs(v1) < 1e-11
        assert abs(GL.Lminus.apply(f2, z)) / abs(v2) < 1e-11
        assert abs(GL.T2.apply(f2, z)) / abs(v2) < 1e-11
        assert abs(GL.L3.apply(f2, z) - 0.25 * v2) / abs(v2) < 1e-11
        assert abs(i2.apply(f1, z) - 3.0 / 16.0 * v1) / abs(v1) < 1e-10
        assert abs(i3.apply(f1, z) - 3.0 / 16.0 * v1) / abs(v1) < 1e-10
        assert abs(i2.apply(f2, z) - 3.0 / 16.0 * v2) / abs(v2) < 1e-10
        assert abs(i3.apply(f2, z) - 3.0 / 16.0 * v2) / abs(v2) < 1e-10


def test_numeric_apply_oscillator_states():
    g1, g2, g3 = g_functions(QUAD, gamma=0.8)
    for _ in range(25):
        z = Point(RNG.uniform(-0.5, 0.5), RNG.uniform(-1.2, 1.2))
        w1, w2, w3 = (g.value(z.t, z.x1) for g in (g1, g2, g3))
        assert abs(GQ.Kop.apply(g1, z)) / abs(w1) < 1e-11
        assert abs(GQ.Lplus.apply(g1, z)) / abs(w1) < 1e-11
        assert abs(GQ.T1.apply(g1, z)) / abs(w1) < 1e-11
        assert abs(GQ.L3.apply(g1, z) + 0.25 * w1) / abs(w1) < 1e-11
        assert abs(GQ.Lminus.apply(g2, z)) / abs(w2) < 1e-11
        assert abs(GQ.T2.apply(g2, z)) / abs(w2) < 1e-11
        assert abs(GQ.L3.apply(g2, z) - 0.25 * w2) / abs(w2) < 1e-11
        assert abs(GQ.Kop.apply(g3, z)) / abs(w3) < 1e-11
        assert abs(GQ.T2.apply(g3, z) - 0.8 * w3) / abs(w3) < 1e-11
        assert abs(GQ.Lminus.apply(g3, z) - 0.8 ** 2 / (4 * OMEGA) * w3) / abs(w3) < 1e-11


def test_apply_is_linear_and_needs_exponential_jets():
    f1, f2 = f_pair(LIN)
    z = Point(0.6, 0.4)
    lhs = (GL.Lplus + 2.0 * GL.T1).apply(f2, z)
    rhs = GL.Lplus.apply(f2, z) + 2.0 * GL.T1.apply(f2, z)
    assert abs(lhs - rhs) < 1e-12
    with pytest.raises(OrderError):
        GQ.T1.apply(f1, z)  # linear-family function lacks exponential-variable jets


def test_time_derivative_powers_stay_solutions():
    f1, _ = f_pair(LIN)
    op = op_compose(GL.Kop, op_compose(GL.D, GL.D))
    for _ in range(10):
        z = Point(RNG.uniform(0.2, 1.0), RNG.uniform(-1.2, 1.2))
        assert abs(op.apply(f1, z)) / abs(f1.value(z.t, z.x1)) < 1e-10
