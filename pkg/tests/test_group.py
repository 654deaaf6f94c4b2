import random

import pytest

from paynegq import gf, group, linpoly
from paynegq.errors import CapExceeded, FieldMismatch
from paynegq.group import GroupElem, GroupSpec

GF5 = gf.field_new(5, 1)
GF9 = gf.field_new(3, 2)
GF27 = gf.field_new(3, 3)


def dense_e_matrix(ctx, m1):
    """The 4x4 matrix of E(a,b,c,t) -- test oracle only."""
    a, b, c, t = m1
    one = 1
    return [
        [one, 0, 0, 0],
        [ctx.neg(c), one, 0, 0],
        [ctx.sub(b, ctx.mul(c, t)), t, one, 0],
        [a, b, c, one],
    ]


def dense_mat_mul(ctx, m, n):
    out = [[0] * 4 for _ in range(4)]
    for i in range(4):
        for j in range(4):
            acc = 0
            for k in range(4):
                acc = ctx.add(acc, ctx.mul(m[i][k], n[k][j]))
            out[i][j] = acc
    return out


def dense_read_tuple(ctx, m):
    """Read (a,b,c,t) off a matrix asserted to be of E-shape."""
    a, b, c = m[3][0], m[3][1], m[3][2]
    t = m[2][1]
    assert m[3][3] == 1 and m[1][0] == ctx.neg(c)
    assert m[2][0] == ctx.sub(b, ctx.mul(c, t))
    return (a, b, c, t)


def e_mul_oracle(ctx, m1, m2):
    return dense_read_tuple(ctx, dense_mat_mul(ctx, dense_e_matrix(ctx, m1), dense_e_matrix(ctx, m2)))


def test_e_mul_identity():
    m = (1, 2, 3, 4)
    assert group.e_mul(GF5, (0, 0, 0, 0), m) == m
    assert group.e_mul(GF5, m, (0, 0, 0, 0)) == m


def test_e_mul_frozen_f5():
    # frozen from the dense 4x4 oracle
    assert e_mul_oracle(GF5, (1, 2, 3, 4), (4, 3, 2, 1)) == (4, 3, 0, 0)
    assert group.e_mul(GF5, (1, 2, 3, 4), (4, 3, 2, 1)) == (4, 3, 0, 0)


@pytest.mark.parametrize("ctx", [GF5, GF9, GF27, gf.field_new(3, 6)])
def test_e_mul_matches_dense_oracle(ctx):
    rng = random.Random(41)
    n = 10_000 if ctx.q <= 27 else 2_000
    for _ in range(n):
        m1 = tuple(rng.randrange(ctx.q) for _ in range(4))
        m2 = tuple(rng.randrange(ctx.q) for _ in range(4))
        assert group.e_mul(ctx, m1, m2) == e_mul_oracle(ctx, m1, m2)


def test_e_inv():
    assert group.e_inv(GF5, (0, 0, 0, 0)) == (0, 0, 0, 0)
    # -b + ct = -2 + 12 = 10 = 0 over F_5
    assert group.e_inv(GF5, (1, 2, 3, 4)) == (4, 0, 2, 1)
    rng = random.Random(43)
    for _ in range(1000):
        m = tuple(rng.randrange(5) for _ in range(4))
        assert group.e_mul(GF5, m, group.e_inv(GF5, m)) == (0, 0, 0, 0)
        assert group.e_inv(GF5, group.e_inv(GF5, m)) == m


def c1_spec(ctx, s1):
    table = linpoly.lp_eval_table(ctx, s1)
    return GroupSpec(ctx, lambda a, b, c: table[c], lambda a, b, c: 0, variant="C1")


def s2_like_spec():
    """theta = g^tr(c) over GF(27), T = 0: the smallest twisted example."""
    ctx = GF27

    def theta(a, b, c):
        return (ctx.abs_trace_int(c) * 1) % 3

    return GroupSpec(ctx, lambda a, b, c: 0, theta, variant="S2-like")


def test_g_mul_identity_and_c1_reduction():
    spec = c1_spec(GF5, linpoly.lp_monomial(GF5, 0))
    e = spec.identity()
    rng = random.Random(47)
    for _ in range(200):
        g = spec.elem_at(rng.randrange(5), rng.randrange(5), rng.randrange(5))
        assert group.g_mul(GF5, e, g) == g
        assert group.g_mul(GF5, g, e) == g
        h = spec.elem_at(rng.randrange(5), rng.randrange(5), rng.randrange(5))
        # trivial Frobenius part: g_mul reduces to e_mul on tuples
        assert group.g_mul(GF5, g, h)[:4] == group.e_mul(GF5, g[:4], h[:4])


def test_g_mul_field_mismatch():
    with pytest.raises(FieldMismatch):
        group.g_mul(GF5, GroupElem(7, 0, 0, 0, 0), GroupElem(0, 0, 0, 0, 0))


def test_g_mul_associativity_sampled():
    spec = s2_like_spec()
    ctx = spec.ctx
    rng = random.Random(53)
    for _ in range(10_000):
        g1 = spec.elem_at(rng.randrange(27), rng.randrange(27), rng.randrange(27))
        g2 = spec.elem_at(rng.randrange(27), rng.randrange(27), rng.randrange(27))
        g3 = spec.elem_at(rng.randrange(27), rng.randrange(27), rng.randrange(27))
        lhs = group.g_mul(ctx, group.g_mul(ctx, g1, g2), g3)
        rhs = group.g_mul(ctx, g1, group.g_mul(ctx, g2, g3))
        assert lhs == rhs


def test_g_inv_round_trip():
    spec = s2_like_spec()
    ctx = spec.ctx
    rng = random.Random(59)
    e = group.identity(ctx)
    for _ in range(1000):
        g = spec.elem_at(rng.randrange(27), rng.randrange(27), rng.randrange(27))
        assert group.g_mul(ctx, g, group.g_inv(ctx, g)) == e
        assert group.g_mul(ctx, group.g_inv(ctx, g), g) == e


def test_g_pow():
    spec = c1_spec(GF27, linpoly.lp_monomial(GF27, 0))  # S_1 = X
    ctx = GF27
    g = spec.elem_at(0, 0, 1)
    assert group.g_pow(ctx, g, 0) == group.identity(ctx)
    # repeated-multiplication oracle
    acc = group.identity(ctx)
    for _ in range(3):
        acc = group.g_mul(ctx, acc, g)
    assert group.g_pow(ctx, g, 3) == acc
    # g^p = g_{x,0,0} with x = -((p^2-1)p/6) c^2 S_1(c) = 2 for c = 1
    assert acc == GroupElem(2, 0, 0, 0, 0)
    # order 9 since S_1(1) != 0
    assert group.g_pow(ctx, g, 9) == group.identity(ctx)
    assert group.g_pow(ctx, g, -1) == group.g_inv(ctx, g)


def test_check_theorem_main_c1_exhaustive_q5():
    spec = c1_spec(GF5, linpoly.lp_monomial(GF5, 0))
    report = group.check_theorem_main(spec, ("exhaustive",))
    assert report["ok"] and report["checked"] == 5**6


def test_check_theorem_main_malformed_spec():
    # T(a,b,c) = c^2 over F_5 is not additive in c: must fail with a witness
    spec = GroupSpec(GF5, lambda a, b, c: GF5.mul(c, c), lambda a, b, c: 0)
    report = group.check_theorem_main(spec, ("exhaustive",))
    assert not report["ok"]
    kind, t1, t2, prod = report["witness"]
    assert kind == "T"
    # the witness really violates the condition
    u, v, w = prod
    lhs = GF5.add(spec.t_fn(*t1), spec.t_fn(*t2))
    assert lhs != spec.t_fn(u, v, w)


def test_check_theorem_main_sampled_twisted():
    spec = s2_like_spec()
    report = group.check_theorem_main(spec, ("sample", 20_000, 42))
    assert report["ok"] and report["checked"] == 20_000


def test_closure_trivial_and_ga():
    spec = c1_spec(GF5, linpoly.lp_zero(GF5))
    sub = group.closure(GF5, [])
    assert sub.order == 1
    ga = group.closure(GF5, [spec.elem_at(1, 0, 0)])
    assert ga.order == 5
    gab = group.closure(GF5, [spec.elem_at(1, 0, 0), spec.elem_at(0, 1, 0)])
    assert gab.order == 25


def test_closure_full_group_q27():
    spec = s2_like_spec()
    sub = group.closure(spec.ctx, spec.basis_triples(), cap=30_000)
    assert sub.order == 27**3


def test_closure_cap():
    spec = s2_like_spec()
    with pytest.raises(CapExceeded):
        group.closure(spec.ctx, spec.basis_triples(), cap=100)


def test_commutator_basic():
    spec = s2_like_spec()
    ctx = spec.ctx
    rng = random.Random(61)
    e = group.identity(ctx)
    for _ in range(200):
        g = spec.elem_at(rng.randrange(27), rng.randrange(27), rng.randrange(27))
        assert group.commutator(ctx, g, g) == e
        assert group.commutator(ctx, g, e) == e


def test_commutator_c_coordinate_formula():
    # c-coordinate of [g_{a,b,c}, g_{x,y,z}] = (theta_{0,y,z}-1)(c) - (theta_{0,b,c}-1)(z)
    spec = s2_like_spec()
    ctx = spec.ctx
    rng = random.Random(67)
    for _ in range(2000):
        a, b, c = rng.randrange(27), rng.randrange(27), rng.randrange(27)
        x, y, z = rng.randrange(27), rng.randrange(27), rng.randrange(27)
        comm = group.commutator(ctx, spec.elem_at(a, b, c), spec.elem_at(x, y, z))
        t_yz = spec.theta_fn(0, y, z)
        t_bc = spec.theta_fn(0, b, c)
        want = ctx.sub(
            ctx.sub(ctx.frob(t_yz, c), c), ctx.sub(ctx.frob(t_bc, z), z)
        )
        assert comm.c == want
        assert comm.f == 0  # commutators have trivial Frobenius part


def test_centralizer_identity_is_universe():
    spec = s2_like_spec()
    universe = group.closure(spec.ctx, spec.basis_triples(), cap=30_000)
    cent = group.centralizer(spec, spec.identity(), universe)
    assert cent.order == universe.order


def test_elem_key_round_trip_and_text():
    ctx = GF27
    g = GroupElem(5, 11, 2, 7, 1)
    assert group.elem_from_key(ctx, group.elem_key(ctx, g)) == g
    txt = group.elem_text(ctx, g)
    assert txt == "a=[2,1,0];b=[2,0,1];c=[2,0,0];t=[1,2,0];f=1"


def test_check_cond1_on_valid_spec():
    spec = s2_like_spec()
    report = group.check_cond1(spec, samples=2000, seed=7)
    assert report["ok"], report["failures"]
