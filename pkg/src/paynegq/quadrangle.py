"""PG(3,q), the symplectic quadrangle W(q), and its Payne derivation.

Points are length-4 tuples of field elements normalized so the first nonzero
coordinate is 1; the alternating form is (x,y) = x1 y4 - x4 y1 + x2 y3 - x3 y2.
The derivation point is fixed as P = <(1,0,0,0)>, whose perp is the hyperplane
x4 = 0; the affine points of Q^P are the triples (a, b, c) <-> <(a,b,c,1)>.
"""

from __future__ import annotations

import numpy as np

from .errors import TooLarge
from .gf import FieldCtx
from .group import GroupElem


def sym_form(ctx: FieldCtx, x, y) -> int:
    add, mul, neg = ctx.add, ctx.mul, ctx.neg
    return add(
        add(mul(x[0], y[3]), neg(mul(x[3], y[0]))),
        add(mul(x[1], y[2]), neg(mul(x[2], y[1]))),
    )


def normalize_point(ctx: FieldCtx, vec) -> tuple:
    for i, v in enumerate(vec):
        if v:
            inv = ctx.inv(v)
            return tuple(0 if j < i else ctx.mul(inv, vec[j]) for j in range(4))
    raise ValueError("zero vector does not define a projective point")


def pg3_points(ctx: FieldCtx) -> list:
    """All points of PG(3,q) as normalized tuples, in lexicographic order."""
    q = ctx.q
    pts = []
    for lead in range(4):
        free = 3 - lead
        for k in range(q**free):
            coords = [0] * lead + [1]
            kk = k
            for _ in range(free):
                coords.append(kk % q)
                kk //= q
            pts.append(tuple(coords))
    return pts


class Quadrangle:
    """Finite point-line geometry with both incidence directions indexed."""

    def __init__(self, ctx, points, lines, order, kind, line_types=None):
        self.ctx = ctx
        self.points = points
        self.point_index = {pt: i for i, pt in enumerate(points)}
        self.lines = lines
        self.order = order
        self.kind = kind
        self.line_types = line_types
        by_point = [[] for _ in points]
        for li, line in enumerate(lines):
            for pi in line:
                by_point[pi].append(li)
        self.lines_by_point = by_point

    @property
    def n_points(self):
        return len(self.points)

    @property
    def n_lines(self):
        return len(self.lines)


def build_wq(ctx: FieldCtx, cap_points: int = 6000) -> Quadrangle:
    """W(q): all points of PG(3,q), lines the totally isotropic lines."""
    q = ctx.q
    n_expected = q**3 + q**2 + q + 1
    if n_expected > cap_points:
        raise TooLarge(f"W({q}) has {n_expected} points > cap {cap_points}")
    points = pg3_points(ctx)
    index = {pt: i for i, pt in enumerate(points)}
    lines = set()
    n = len(points)
    for i in range(n):
        x = points[i]
        for j in range(i + 1, n):
            y = points[j]
            if sym_form(ctx, x, y) != 0:
                continue
            members = [j]
            for lam in range(q):
                vec = tuple(ctx.add(x[k], ctx.mul(lam, y[k])) for k in range(4))
                members.append(index[normalize_point(ctx, vec)])
            key = tuple(sorted(members))
            lines.add(key)
    line_list = [frozenset(l) for l in sorted(lines)]
    return Quadrangle(ctx, points, line_list, (q, q), "wq")


def build_payne(ctx: FieldCtx, wq: Quadrangle, cap_points: int = 30000) -> Quadrangle:
    """Q^P at P = <(1,0,0,0)>: points off P-perp, derived lines of two types."""
    q = ctx.q
    if q**3 > cap_points:
        raise TooLarge(f"Q^P at q={q} has {q**3} points > cap {cap_points}")
    # affine points (a, b, c) <-> <(a,b,c,1)>, indexed lexicographically
    points = [(a, b, c) for a in range(q) for b in range(q) for c in range(q)]
    index = {pt: i for i, pt in enumerate(points)}
    p_index = wq.point_index[(1, 0, 0, 0)]
    lines = []
    types = []
    for line in wq.lines:
        if p_index in line:
            continue
        members = []
        for pi in line:
            vec = wq.points[pi]
            if vec[3] != 0:  # off P-perp; rescale so the last coordinate is 1
                inv = ctx.inv(vec[3])
                members.append(
                    index[(ctx.mul(inv, vec[0]), ctx.mul(inv, vec[1]), ctx.mul(inv, vec[2]))]
                )
        # a totally isotropic line not through P meets P-perp in one point
        assert len(members) == q
        lines.append(frozenset(members))
        types.append(1)
    for b in range(q):
        for c in range(q):
            lines.append(frozenset(index[(a, b, c)] for a in range(q)))
            types.append(2)
    return Quadrangle(ctx, points, lines, (q - 1, q + 1), "payne", line_types=types)


def verify_gq(g: Quadrangle, s: int, t: int) -> dict:
    """Exhaustive generalized-quadrangle axioms at order (s, t)."""
    report = {
        "ok": True,
        "points": g.n_points,
        "lines": g.n_lines,
        "order": [s, t],
        "counterexample": None,
    }

    def fail(reason, witness):
        report["ok"] = False
        if report["counterexample"] is None:
            report["counterexample"] = {"axiom": reason, "witness": witness}

    for li, line in enumerate(g.lines):
        if len(line) != s + 1:
            fail("line-size", {"line": li, "size": len(line)})
    for pi, incident in enumerate(g.lines_by_point):
        if len(incident) != t + 1:
            fail("point-degree", {"point": pi, "degree": len(incident)})
    if not report["ok"]:
        return report

    n = g.n_points
    adj = np.zeros((n, n), dtype=bool)
    for line in g.lines:
        idx = np.fromiter(line, dtype=np.int64)
        adj[np.ix_(idx, idx)] = True
    on_line = np.zeros(n, dtype=bool)
    for li, line in enumerate(g.lines):
        idx = np.fromiter(line, dtype=np.int64)
        counts = adj[:, idx].sum(axis=1)
        on_line[:] = False
        on_line[idx] = True
        bad = np.nonzero(~on_line & (counts != 1))[0]
        if bad.size:
            fail(
                "unique-collinear-witness",
                {"line": li, "point": int(bad[0]), "witnesses": int(counts[bad[0]])},
            )
            return report
    return report


def act(ctx: FieldCtx, g: GroupElem, pt: tuple) -> tuple:
    """Apply (E(a,b,c,t), frob) to the affine point (row-vector convention)."""
    add, mul, neg, fr = ctx.add, ctx.mul, ctx.neg, ctx.frob
    v1, v2, v3 = fr(g.f, pt[0]), fr(g.f, pt[1]), fr(g.f, pt[2])
    x, y, z, t = g.a, g.b, g.c, g.t
    u = add(add(v1, neg(mul(v2, z))), add(mul(v3, add(y, neg(mul(z, t)))), x))
    v = add(v2, add(mul(v3, t), y))
    w = add(v3, z)
    return (u, v, w)
