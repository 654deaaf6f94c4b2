import random

import pytest

from paynegq import gf, group, linpoly, quadrangle
from paynegq.errors import TooLarge
from paynegq.group import GroupSpec

GF3 = gf.field_new(3, 1)
GF5 = gf.field_new(5, 1)


def brute_isotropic_lines(ctx):
    """Oracle: enumerate all lines of PG(3,q) from point pairs, keep those on
    which the form vanishes identically."""
    pts = quadrangle.pg3_points(ctx)
    index = {p: i for i, p in enumerate(pts)}
    q = ctx.q
    lines = set()
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            members = {j}
            for lam in range(q):
                vec = tuple(
                    ctx.add(pts[i][k], ctx.mul(lam, pts[j][k])) for k in range(4)
                )
                members.add(index[quadrangle.normalize_point(ctx, vec)])
            good = True
            mlist = sorted(members)
            for a in range(len(mlist)):
                for b in range(a + 1, len(mlist)):
                    if quadrangle.sym_form(ctx, pts[mlist[a]], pts[mlist[b]]) != 0:
                        good = False
                        break
                if not good:
                    break
            if good:
                lines.add(tuple(mlist))
    return lines


def test_form_is_alternating():
    rng = random.Random(3)
    for _ in range(100):
        x = tuple(rng.randrange(5) for _ in range(4))
        y = tuple(rng.randrange(5) for _ in range(4))
        assert quadrangle.sym_form(GF5, x, x) == 0
        assert quadrangle.sym_form(GF5, x, y) == GF5.neg(quadrangle.sym_form(GF5, y, x))


def test_wq_q3_counts_and_oracle():
    wq = quadrangle.build_wq(GF3)
    assert wq.n_points == 40
    assert wq.n_lines == 40
    for incident in wq.lines_by_point:
        assert len(incident) == 4
    assert {tuple(sorted(l)) for l in wq.lines} == brute_isotropic_lines(GF3)


def test_wq_q5_counts():
    wq = quadrangle.build_wq(GF5)
    assert wq.n_points == (5 + 1) * (5**2 + 1) == 156
    assert wq.n_lines == 156


def test_wq_axioms_q3():
    wq = quadrangle.build_wq(GF3)
    report = quadrangle.verify_gq(wq, 3, 3)
    assert report["ok"]


def test_payne_q3_structure():
    wq = quadrangle.build_wq(GF3)
    qp = quadrangle.build_payne(GF3, wq)
    assert qp.n_points == 27
    assert qp.n_lines == 45
    assert qp.line_types.count(1) == 36
    assert qp.line_types.count(2) == 9
    report = quadrangle.verify_gq(qp, 2, 4)
    assert report["ok"]
    # wrong order parameters must fail
    bad = quadrangle.verify_gq(qp, 3, 3)
    assert not bad["ok"]
    assert bad["counterexample"]["axiom"] in ("line-size", "point-degree")
    # each point: one type-2 line and q+1 type-1 lines
    for pi in range(qp.n_points):
        t1 = sum(1 for li in qp.lines_by_point[pi] if qp.line_types[li] == 1)
        t2 = sum(1 for li in qp.lines_by_point[pi] if qp.line_types[li] == 2)
        assert (t1, t2) == (4, 1)


def test_payne_q5_order():
    wq = quadrangle.build_wq(GF5)
    qp = quadrangle.build_payne(GF5, wq)
    assert qp.n_points == 125
    assert quadrangle.verify_gq(qp, 4, 6)["ok"]


def test_payne_points_off_perp():
    wq = quadrangle.build_wq(GF3)
    qp = quadrangle.build_payne(GF3, wq)
    P = (1, 0, 0, 0)
    for (a, b, c) in qp.points:
        assert quadrangle.sym_form(GF3, (a, b, c, 1), P) != 0


def test_too_large():
    ctx = gf.field_new(19, 1)
    with pytest.raises(TooLarge):
        quadrangle.build_wq(ctx)


def c1_spec(ctx, s1):
    table = linpoly.lp_eval_table(ctx, s1)
    return GroupSpec(ctx, lambda a, b, c: table[c], lambda a, b, c: 0, variant="C1")


def s2_like_spec27():
    ctx = gf.field_new(3, 3)
    return GroupSpec(
        ctx,
        lambda a, b, c: 0,
        lambda a, b, c: ctx.abs_trace_int(c) % 3,
        variant="S2-like",
    )


def test_act_identity_and_origin():
    spec = c1_spec(GF5, linpoly.lp_monomial(GF5, 0))
    e = spec.identity()
    rng = random.Random(11)
    for _ in range(100):
        pt = (rng.randrange(5), rng.randrange(5), rng.randrange(5))
        assert quadrangle.act(GF5, e, pt) == pt
        g = spec.elem_at(*pt)
        assert quadrangle.act(GF5, g, (0, 0, 0)) == pt


def test_act_homomorphism_sampled():
    spec = s2_like_spec27()
    ctx = spec.ctx
    rng = random.Random(13)
    for _ in range(10_000):
        g = spec.elem_at(rng.randrange(27), rng.randrange(27), rng.randrange(27))
        h = spec.elem_at(rng.randrange(27), rng.randrange(27), rng.randrange(27))
        pt = (rng.randrange(27), rng.randrange(27), rng.randrange(27))
        lhs = quadrangle.act(ctx, group.g_mul(ctx, g, h), pt)
        rhs = quadrangle.act(ctx, h, quadrangle.act(ctx, g, pt))
        assert lhs == rhs


def test_act_preserves_line_types():
    # sampled element-line pairs for Construction-1-shaped specs at q in {3, 5}
    rng = random.Random(17)
    for ctx in (GF3, GF5):
        spec = c1_spec(ctx, linpoly.lp_monomial(ctx, 0))
        wq = quadrangle.build_wq(ctx)
        qp = quadrangle.build_payne(ctx, wq)
        for _ in range(1000):
            g = spec.elem_at(
                rng.randrange(ctx.q), rng.randrange(ctx.q), rng.randrange(ctx.q)
            )
            li = rng.randrange(qp.n_lines)
            image = frozenset(
                qp.point_index[quadrangle.act(ctx, g, qp.points[pi])]
                for pi in qp.lines[li]
            )
            assert image in set(qp.lines)
            matches = [
                ti for ti, line in enumerate(qp.lines) if line == image
            ]
            assert qp.line_types[matches[0]] == qp.line_types[li]
