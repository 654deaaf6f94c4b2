"""Packed-triple fast path for closure-heavy work.

Elements of a spec's group are determined by their (a, b, c) triple, so the
hot loops (subgroup closure, commutator batches, conjugacy orbits) work on
single integers key = (a·q + b)·q + c and recover t and theta from per-spec
tables.  Only specs whose theta exponent splits as theta_b[b] + theta_c[c]
(C1, S2, S3, PreS3) carry the tables; everything else uses the generic
GroupElem path.
"""

from __future__ import annotations

from .group import GroupElem, GroupSpec


class TripleEngine:
    """Closure-friendly multiply/invert/commutator on packed (a,b,c) keys."""

    def __init__(self, spec: GroupSpec):
        if spec.fast is None:
            raise ValueError(f"spec {spec.variant} has no fast tables")
        self.spec = spec
        ctx = spec.ctx
        self.q = ctx.q
        self.qq = ctx.q * ctx.q
        f = spec.fast
        self._mul = _make_mul(ctx, f)
        self._inv = _make_inv(ctx, f)

    def mul(self, k1: int, k2: int) -> int:
        return self._mul(k1, k2)

    def inv(self, k: int) -> int:
        return self._inv(k)

    def conj(self, k: int, h: int) -> int:
        """h^(-1) o k o h."""
        return self._mul(self._mul(self._inv(h), k), h)

    def comm(self, k1: int, k2: int) -> int:
        """[k1, k2] = k1^(-1) o k2^(-1) o k1 o k2."""
        m = self._mul
        return m(self._inv(m(k2, k1)), m(k1, k2))

    def pack(self, a, b, c) -> int:
        return (a * self.q + b) * self.q + c

    def unpack(self, k: int):
        k, c = divmod(k, self.q)
        a, b = divmod(k, self.q)
        return (a, b, c)

    def pack_elem(self, g: GroupElem) -> int:
        return (g.a * self.q + g.b) * self.q + g.c

    def elem(self, k: int) -> GroupElem:
        return self.spec.elem_at(*self.unpack(k))


def _make_mul(ctx, fast):
    q = ctx.q
    qq = q * q
    m = ctx.m
    frob = ctx._frob
    exp, log = ctx._exp, ctx._log
    qm1 = q - 1
    lo = ctx._plo
    add_lo, add_hi = ctx._add_lo, ctx._add_hi
    neg = ctx._neg
    theta_b, theta_c = fast["theta_b"], fast["theta_c"]
    t_c, nb = fast["T_c"], fast["NB"]
    ordn, step = fast["theta_ord"], fast["theta_step"]

    def mul3(k1, k2):
        k1, c1 = divmod(k1, q)
        a1, b1 = divmod(k1, q)
        k2, c2 = divmod(k2, q)
        x, y = divmod(k2, q)
        e2 = (theta_b[y] + theta_c[c2]) % ordn
        fr = frob[(step * e2) % m]
        a1 = fr[a1]
        b1 = fr[b1]
        c1 = fr[c1]
        t2 = t_c[c2]
        n = nb[e2]
        if n:
            t2 = add_lo[t2 % lo][n % lo] + lo * add_hi[t2 // lo][n // lo]
        # w = c1 + c2
        w = add_lo[c1 % lo][c2 % lo] + lo * add_hi[c1 // lo][c2 // lo]
        # v = b1 + y + c1*t2
        v = add_lo[b1 % lo][y % lo] + lo * add_hi[b1 // lo][y // lo]
        if c1 and t2:
            ct = exp[(log[c1] + log[t2]) % qm1]
            v = add_lo[v % lo][ct % lo] + lo * add_hi[v // lo][ct // lo]
        # u = a1 + x - b1*c2 + c1*y - c1*c2*t2
        u = add_lo[a1 % lo][x % lo] + lo * add_hi[a1 // lo][x // lo]
        if b1 and c2:
            bz = neg[exp[(log[b1] + log[c2]) % qm1]]
            u = add_lo[u % lo][bz % lo] + lo * add_hi[u // lo][bz // lo]
        if c1:
            lc1 = log[c1]
            if y:
                cy = exp[(lc1 + log[y]) % qm1]
                u = add_lo[u % lo][cy % lo] + lo * add_hi[u // lo][cy // lo]
            if c2 and t2:
                czw = neg[exp[(lc1 + log[c2] + log[t2]) % qm1]]
                u = add_lo[u % lo][czw % lo] + lo * add_hi[u // lo][czw // lo]
        return (u * q + v) * q + w

    return mul3


def _make_inv(ctx, fast):
    q = ctx.q
    m = ctx.m
    frob = ctx._frob
    exp, log = ctx._exp, ctx._log
    qm1 = q - 1
    lo = ctx._plo
    add_lo, add_hi = ctx._add_lo, ctx._add_hi
    neg = ctx._neg
    theta_b, theta_c = fast["theta_b"], fast["theta_c"]
    t_c, nb = fast["T_c"], fast["NB"]
    ordn, step = fast["theta_ord"], fast["theta_step"]

    def inv3(k):
        k, c = divmod(k, q)
        a, b = divmod(k, q)
        e = (theta_b[b] + theta_c[c]) % ordn
        t = t_c[c]
        n = nb[e]
        if n:
            t = add_lo[t % lo][n % lo] + lo * add_hi[t // lo][n // lo]
        fr = frob[(m - step * e) % m]
        a = fr[a]
        b = fr[b]
        c = fr[c]
        t = fr[t]
        # (-a, -b + c t, -c)
        u = neg[a]
        v = neg[b]
        if c and t:
            ct = exp[(log[c] + log[t]) % qm1]
            v = add_lo[v % lo][ct % lo] + lo * add_hi[v // lo][ct // lo]
        return (u * q + v) * q + neg[c]

    return inv3
