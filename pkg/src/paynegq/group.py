"""Element algebra and group law for the point-regular model.

A group element is the quintuple (a, b, c, t, f): the semilinear map with
lower-unitriangular matrix part E(a, b, c, t) and Frobenius part x -> x^(p^f).
Elements multiply left-to-right as maps on row vectors:

    (M1, f1) o (M2, f2) = (M1^f2 · M2, f1 + f2)

where M^f applies the Frobenius to every entry.  Matrix products use the
closed forms

    E(a,b,c,t)·E(x,y,z,w) = E(a+x-bz+cy-czw, b+y+cw, c+z, t+w)
    E(a,b,c,t)^(-1)       = E(-a, -b+ct, -c, -t)

so no 4x4 matrices are ever stored; the dense path exists only as a test
oracle.
"""

from __future__ import annotations

import random
from typing import Callable, NamedTuple

from .errors import CapExceeded, FieldMismatch
from .gf import FieldCtx


class GroupElem(NamedTuple):
    a: int
    b: int
    c: int
    t: int
    f: int


def e_mul(ctx: FieldCtx, m1, m2):
    """Product of matrix tuples E(m1)·E(m2)."""
    a, b, c, t = m1
    x, y, z, w = m2
    add, mul, neg = ctx.add, ctx.mul, ctx.neg
    u = add(add(a, x), add(neg(mul(b, z)), mul(c, add(y, neg(mul(z, w))))))
    v = add(b, add(y, mul(c, w)))
    return (u, v, add(c, z), add(t, w))


def e_inv(ctx: FieldCtx, m1):
    a, b, c, t = m1
    return (ctx.neg(a), ctx.add(ctx.neg(b), ctx.mul(c, t)), ctx.neg(c), ctx.neg(t))


def identity(ctx: FieldCtx) -> GroupElem:
    return GroupElem(0, 0, 0, 0, 0)


def _check_field(ctx, g):
    if not all(0 <= v < ctx.q for v in g[:4]):
        raise FieldMismatch(f"element {g} is not over GF({ctx.p}^{ctx.m})")


def g_mul(ctx: FieldCtx, g1: GroupElem, g2: GroupElem) -> GroupElem:
    _check_field(ctx, g1)
    _check_field(ctx, g2)
    f2 = g2.f
    fr = ctx.frob
    twisted = (fr(f2, g1.a), fr(f2, g1.b), fr(f2, g1.c), fr(f2, g1.t))
    tup = e_mul(ctx, twisted, (g2.a, g2.b, g2.c, g2.t))
    return GroupElem(*tup, (g1.f + g2.f) % ctx.m)


def g_inv(ctx: FieldCtx, g: GroupElem) -> GroupElem:
    finv = (-g.f) % ctx.m
    fr = ctx.frob
    tup = e_inv(ctx, (fr(finv, g.a), fr(finv, g.b), fr(finv, g.c), fr(finv, g.t)))
    return GroupElem(*tup, finv)


def g_pow(ctx: FieldCtx, g: GroupElem, n: int) -> GroupElem:
    if n < 0:
        return g_pow(ctx, g_inv(ctx, g), -n)
    result = identity(ctx)
    base = g
    while n:
        if n & 1:
            result = g_mul(ctx, result, base)
        base = g_mul(ctx, base, base)
        n >>= 1
    return result


def commutator(ctx: FieldCtx, g: GroupElem, h: GroupElem) -> GroupElem:
    """[g, h] = g^(-1) o h^(-1) o g o h."""
    gh = g_mul(ctx, g, h)
    hg = g_mul(ctx, h, g)
    return g_mul(ctx, g_inv(ctx, hg), gh)


# -- canonical keys and text form ----------------------------------------------


def elem_key(ctx: FieldCtx, g: GroupElem) -> int:
    q = ctx.q
    return (((g.a * q + g.b) * q + g.c) * q + g.t) * ctx.m + g.f


def elem_from_key(ctx: FieldCtx, key: int) -> GroupElem:
    q = ctx.q
    key, f = divmod(key, ctx.m)
    key, t = divmod(key, q)
    key, c = divmod(key, q)
    a, b = divmod(key, q)
    return GroupElem(a, b, c, t, f)


def elem_text(ctx: FieldCtx, g: GroupElem) -> str:
    def vec(x):
        return "[" + ",".join(str(d) for d in ctx.coeffs(x)) + "]"

    return f"a={vec(g.a)};b={vec(g.b)};c={vec(g.c)};t={vec(g.t)};f={g.f}"


# -- the T/theta model ---------------------------------------------------------


class GroupSpec:
    """A construction instance: field plus the functions T and theta.

    theta is represented by its global Frobenius exponent: theta(a, b, c) = i
    means the Frobenius part x -> x^(p^i).  The element g_{a,b,c} is
    (E(a,b,c,T(a,b,c)), theta(a,b,c)); the set {g_{a,b,c}} is a group exactly
    when check_theorem_main passes.
    """

    def __init__(
        self,
        ctx: FieldCtx,
        t_fn: Callable[[int, int, int], int],
        theta_fn: Callable[[int, int, int], int],
        variant: str = "custom",
        params: dict | None = None,
        fast: dict | None = None,
    ):
        self.ctx = ctx
        self.t_fn = t_fn
        self.theta_fn = theta_fn
        self.variant = variant
        self.params = params or {}
        self.fast = fast  # optional tables for the packed-triple engine

    def T(self, a, b, c) -> int:
        return self.t_fn(a, b, c)

    def theta(self, a, b, c) -> int:
        return self.theta_fn(a, b, c)

    # shorthand accessors from the notation table
    def L(self, x) -> int:
        return self.t_fn(x, 0, 0)

    def M(self, y) -> int:
        return self.t_fn(0, y, 0)

    def S(self, z) -> int:
        return self.t_fn(0, 0, z)

    def sigma(self, c) -> int:
        return self.theta_fn(0, 0, c)

    def elem_at(self, a, b, c) -> GroupElem:
        return GroupElem(a, b, c, self.t_fn(a, b, c), self.theta_fn(a, b, c))

    def identity(self) -> GroupElem:
        return self.elem_at(0, 0, 0)

    def enumerate_elements(self, cap: int = 20_000_000):
        """All q^3 elements in lexicographic (a, b, c) order."""
        q = self.ctx.q
        if q**3 > cap:
            raise CapExceeded(cap, q**3)
        for a in range(q):
            for b in range(q):
                for c in range(q):
                    yield self.elem_at(a, b, c)

    def basis_triples(self) -> list:
        """Generators: g at the F_p-basis vectors of each coordinate axis."""
        ctx = self.ctx
        gens = []
        for coord in range(3):
            for i in range(ctx.m):
                vec = [0, 0, 0]
                vec[coord] = ctx.from_coeffs([0] * i + [1])
                gens.append(self.elem_at(*vec))
        return gens

    def key(self, g: GroupElem) -> int:
        return elem_key(self.ctx, g)

    def __repr__(self):
        return f"GroupSpec({self.variant}, {self.ctx.spec_string()})"


class SubgroupSet:
    """Hash-set of canonical element keys plus the generator list."""

    def __init__(self, ctx: FieldCtx, elements: set, generators: list):
        self.ctx = ctx
        self.elements = elements
        self.generators = generators
        self.order = len(elements)

    def __contains__(self, g: GroupElem) -> bool:
        return elem_key(self.ctx, g) in self.elements

    def __len__(self):
        return self.order

    def iter_elems(self):
        for key in self.elements:
            yield elem_from_key(self.ctx, key)

    def sorted_keys(self):
        return sorted(self.elements)


def closure(ctx: FieldCtx, generators, cap: int = 2_000_000) -> SubgroupSet:
    """Breadth-first subgroup closure under the group law and inverses."""
    gens = list(generators)
    invs = [g_inv(ctx, g) for g in gens]
    mult = gens + [g for g in invs if g not in gens]
    ident = identity(ctx)
    elems = {elem_key(ctx, ident)}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in mult:
                y = g_mul(ctx, x, g)
                k = elem_key(ctx, y)
                if k not in elems:
                    if len(elems) >= cap:
                        raise CapExceeded(cap)
                    elems.add(k)
                    nxt.append(y)
        frontier = nxt
    return SubgroupSet(ctx, elems, gens)


def centralizer(spec: GroupSpec, g: GroupElem, universe: SubgroupSet) -> SubgroupSet:
    ctx = spec.ctx
    keep = set()
    for h in universe.iter_elems():
        if g_mul(ctx, g, h) == g_mul(ctx, h, g):
            keep.add(elem_key(ctx, h))
    return SubgroupSet(ctx, keep, [g])


# -- Theorem-Main consistency --------------------------------------------------


def product_triple(spec: GroupSpec, t1, t2):
    """(u, v, w) with g_(t1) o g_(t2) = g_(u,v,w), straight from the model."""
    ctx = spec.ctx
    a, b, c = t1
    x, y, z = t2
    th2 = spec.theta_fn(x, y, z)
    t2v = spec.t_fn(x, y, z)
    fr, add, mul, neg = ctx.frob, ctx.add, ctx.mul, ctx.neg
    ca, cb, cc = fr(th2, a), fr(th2, b), fr(th2, c)
    w = add(cc, z)
    v = add(cb, add(y, mul(cc, t2v)))
    u = add(add(ca, x), add(neg(mul(cb, z)), mul(cc, add(y, neg(mul(z, t2v))))))
    return (u, v, w)


def _pair_violation(spec: GroupSpec, t1, t2):
    ctx = spec.ctx
    u, v, w = product_triple(spec, t1, t2)
    th1 = spec.theta_fn(*t1)
    th2 = spec.theta_fn(*t2)
    if (th1 + th2) % ctx.m != spec.theta_fn(u, v, w):
        return ("theta", t1, t2, (u, v, w))
    lhs = ctx.add(ctx.frob(th2, spec.t_fn(*t1)), spec.t_fn(*t2))
    if lhs != spec.t_fn(u, v, w):
        return ("T", t1, t2, (u, v, w))
    return None


def check_theorem_main(spec: GroupSpec, mode=("exhaustive",), pair_cap: int = 10**6):
    """Check closure of the model under the group law.

    mode is ("exhaustive",) or ("sample", n, seed).  Returns a report dict;
    violations carry the first witness pair.
    """
    ctx = spec.ctx
    q = ctx.q
    report = {"mode": mode[0], "checked": 0, "ok": True, "witness": None}
    if mode[0] == "exhaustive":
        if q**6 > pair_cap * 64:
            raise CapExceeded(pair_cap, q**6)
        triples = [(a, b, c) for a in range(q) for b in range(q) for c in range(q)]
        for t1 in triples:
            for t2 in triples:
                bad = _pair_violation(spec, t1, t2)
                report["checked"] += 1
                if bad:
                    report["ok"] = False
                    report["witness"] = bad
                    return report
        return report
    _, n, seed = mode
    rng = random.Random(seed)
    report["seed"] = seed
    report["n"] = n
    for _ in range(n):
        t1 = (rng.randrange(q), rng.randrange(q), rng.randrange(q))
        t2 = (rng.randrange(q), rng.randrange(q), rng.randrange(q))
        bad = _pair_violation(spec, t1, t2)
        report["checked"] += 1
        if bad:
            report["ok"] = False
            report["witness"] = bad
            return report
    return report


def check_cond1(spec: GroupSpec, samples: int = 10_000, seed: int = 0):
    """The seven point-regularity identities on L, M, S, sigma.

    (1)-(5) run exhaustively over their one or two free variables; (6)-(7)
    are sampled.  Returns a report with the first violation per identity.
    """
    ctx = spec.ctx
    q, m = ctx.q, ctx.m
    fr, add, mul, neg = ctx.frob, ctx.add, ctx.mul, ctx.neg
    th, T = spec.theta_fn, spec.t_fn
    L, M, S, sig = spec.L, spec.M, spec.S, spec.sigma
    failures = {}

    def record(name, witness):
        failures.setdefault(name, witness)

    for a in range(q):
        for x in range(q):
            thx = th(x, 0, 0)
            u = add(fr(thx, a), x)
            if (th(a, 0, 0) + thx) % m != th(u, 0, 0):
                record("1-theta", (a, x))
            if add(fr(thx, L(a)), L(x)) != L(u):
                record("1-T", (a, x))
    for b in range(q):
        for y in range(q):
            thy = th(0, y, 0)
            v = add(fr(thy, b), y)
            if (th(0, b, 0) + thy) % m != th(0, v, 0):
                record("2-theta", (b, y))
            if add(fr(thy, M(b)), M(y)) != M(v):
                record("2-T", (b, y))
    for c in range(q):
        for z in range(q):
            sz = sig(z)
            szc = fr(sz, c)
            w = add(szc, z)
            u = neg(mul(szc, mul(z, S(z))))
            v = mul(szc, S(z))
            if (sig(c) + sz) % m != th(u, v, w):
                record("3-theta", (c, z))
            if add(fr(sz, S(c)), S(z)) != T(u, v, w):
                record("3-T", (c, z))
    for a in range(q):
        for b in range(q):
            thb = th(0, b, 0)
            if (th(a, 0, 0) + thb) % m != th(fr(thb, a), b, 0):
                record("4-theta", (a, b))
            if add(fr(thb, L(a)), M(b)) != T(fr(thb, a), b, 0):
                record("4-T", (a, b))
            tha = th(a, 0, 0)
            if (thb + tha) % m != th(a, fr(tha, b), 0):
                record("5-theta", (a, b))
            if add(L(a), fr(tha, M(b))) != T(a, fr(tha, b), 0):
                record("5-T", (a, b))
    rng = random.Random(seed)
    for _ in range(samples):
        a, b, c = rng.randrange(q), rng.randrange(q), rng.randrange(q)
        sc = sig(c)
        scinv = (-sc) % m
        ap = fr(scinv, add(a, mul(b, c)))
        bp = fr(scinv, b)
        if (th(ap, bp, 0) + sc) % m != th(a, b, c):
            record("6-theta", (a, b, c))
        if add(fr(sc, T(ap, bp, 0)), S(c)) != T(a, b, c):
            record("6-T", (a, b, c))
        thab = th(a, b, 0)
        w = fr(thab, c)
        sw = sig(w)
        swinv = (-sw) % m
        tab = T(a, b, 0)
        v = fr(swinv, add(b, mul(w, tab)))
        u = fr(swinv, add(a, add(mul(ctx.scalar(2), mul(b, w)), mul(mul(w, w), tab))))
        if (sig(c) + thab) % m != (th(u, v, 0) + sw) % m:
            record("7-theta", (a, b, c))
        if add(fr(thab, S(c)), tab) != add(fr(sw, T(u, v, 0)), S(w)):
            record("7-T", (a, b, c))
    return {"ok": not failures, "failures": failures, "samples": samples, "seed": seed}
