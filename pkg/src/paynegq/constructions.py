"""Builders for the point-regular group families and their pre-forms.

Each builder validates its parameter record, assembles the functions T and
theta (as a global Frobenius exponent), self-checks the group law on sampled
pairs, and returns a GroupSpec.  The families:

  C1      theta = 1, T = S1(c), any prime power q.
  C2even  q = 2^m: T built from omega, mu and an (f, s0) tuple family.
  S2      q = p^(pl) odd: theta = g^tr(muC·c), T = S1(c).
  S3      q = p^(pl) odd: theta = g1^(Q(c)/2 + tr(muB·b)), T = S1(c).
  S4      q = 3^(9l): coset extension of a K-indexed family by g_{0,0,tC}.
  PreS2/PreS3/PreS4: the unreduced forms that conjugation by (E(0,0,0,u), 1)
  carries onto S2/S3/S4; first-class here so the conjugacy step is testable.

Group elements of a spec are determined by their (a, b, c) triple; the coset
variants recover the K-part (a', b', c') of a triple from the decomposition
g_{x,y,z} = g_{a',b',c'} o h^i, where h = g_{0,0,tC} and i is read off
tr(muC·z).
"""

from __future__ import annotations

from . import linpoly
from .errors import InvalidParams, NotFound, NotInModelForm, SelfCheckFailed
from .gf import FieldCtx
from .group import GroupElem, GroupSpec, check_theorem_main, g_inv, g_mul, g_pow

VARIANTS = ("C1", "C2even", "S2", "S3", "S4", "PreS2", "PreS3", "PreS4")

_SELF_CHECK_SAMPLES = 1500
_SELF_CHECK_SEED = 20240601


def _require(cond, message):
    if not cond:
        raise InvalidParams(message)


def _in_subfield(ctx, x, d):
    return ctx.frob(d % ctx.m, x) == x


def _as_linpoly(ctx, coeffs):
    return linpoly.lp_from_coeffs(ctx, coeffs)


def _check_pl_field(ctx, l):
    p = ctx.p
    _require(p % 2 == 1, "q must be odd (q = p^(pl) with p an odd prime)")
    _require(l >= 1 and ctx.m == p * l, f"field degree must be p*l = {p}*{l}")


def _self_check(spec):
    report = check_theorem_main(
        spec, ("sample", _SELF_CHECK_SAMPLES, _SELF_CHECK_SEED)
    )
    if not report["ok"]:
        raise SelfCheckFailed(
            f"group law fails for {spec.variant}: {report['witness']}",
            witness=report["witness"],
        )
    return spec


def build_construction(ctx: FieldCtx, params: dict) -> GroupSpec:
    variant = params.get("variant")
    if variant not in VARIANTS:
        raise InvalidParams(f"unknown variant {variant!r}")
    builder = {
        "C1": _build_c1,
        "C2even": _build_c2even,
        "S2": _build_s2,
        "S3": _build_s3,
        "S4": _build_s4,
        "PreS2": _build_pres2,
        "PreS3": _build_pres3,
        "PreS4": _build_pres4,
    }[variant]
    return _self_check(builder(ctx, params))


def elem_at(spec: GroupSpec, a, b, c) -> GroupElem:
    return spec.elem_at(a, b, c)


def enumerate_elements(spec: GroupSpec, cap: int = 20_000_000):
    return spec.enumerate_elements(cap)


# -- C1 --------------------------------------------------------------------


def _build_c1(ctx, params):
    s1 = _as_linpoly(ctx, params["S1"])
    table = linpoly.lp_eval_table(ctx, s1)
    fast = {
        "theta_ord": 1,
        "theta_step": 0,
        "theta_b": [0] * ctx.q,
        "theta_c": [0] * ctx.q,
        "T_c": table,
        "NB": [0],
    }
    return GroupSpec(
        ctx,
        lambda a, b, c: table[c],
        lambda a, b, c: 0,
        variant="C1",
        params={"variant": "C1", "S1": list(s1)},
        fast=fast,
    )


# -- C2even ------------------------------------------------------------------


def _build_c2even(ctx, params):
    _require(ctx.p == 2 and ctx.m > 1, "C2even needs q = 2^m with m > 1")
    omega, mu = params["omega"], params["mu"]
    _require(omega != 0 and mu != 0, "omega and mu must be nonzero")
    fs = list(params["f"])
    _require(len(fs) == ctx.m and fs[0] == 0, "f-tuple must have length m and f_0 = 0")
    for i in range(1, ctx.m):
        lhs = ctx.mul(mu, fs[i])
        rhs = ctx.frob(i, ctx.mul(mu, fs[ctx.m - i]))
        _require(lhs == rhs, f"f-tuple pairing condition fails at index {i}")
    acc = 0
    for j in range(1, ctx.m):
        coef = ctx.pow(ctx.inv(omega), (1 << j) - 1)
        acc = ctx.add(acc, ctx.mul(coef, ctx.frob(j, fs[ctx.m - j])))
    _require(acc == 0, "f-tuple closing-sum condition fails")
    s0 = params["s0"]
    ss = linpoly.derive_even_s_tuple(ctx, omega, fs, s0)

    q = ctx.q
    # S(c) = sum(s_i c^(2^i)) + omega * sum_{i<j} mu^(2^i) f_(j-i)^(2^i) c^(2^i+2^j)
    s_tab = [0] * q
    for cval in range(q):
        acc = linpoly.lp_eval(ctx, ss, cval)
        h = 0
        for i in range(ctx.m):
            ci = ctx.frob(i, cval)
            for j in range(i + 1, ctx.m):
                term = ctx.mul(
                    ctx.frob(i, ctx.mul(mu, fs[j - i])), ctx.mul(ci, ctx.frob(j, cval))
                )
                h = ctx.add(h, term)
        s_tab[cval] = ctx.add(acc, ctx.mul(omega, h))
    l_tab = [ctx.mul(omega, ctx.abs_trace_int(ctx.mul(ctx.mul(mu, ctx.mul(mu, omega)), x))) for x in range(q)]
    m_tab = [ctx.mul(omega, ctx.abs_trace_int(ctx.mul(mu, y))) for y in range(q)]

    def t_fn(a, b, c):
        return ctx.add(
            ctx.add(l_tab[ctx.add(a, ctx.mul(b, c))], m_tab[b]), s_tab[c]
        )

    return GroupSpec(
        ctx,
        t_fn,
        lambda a, b, c: 0,
        variant="C2even",
        params={
            "variant": "C2even",
            "omega": omega,
            "mu": mu,
            "f": fs,
            "s0": s0,
            "s": list(ss),
        },
    )


# -- S2 ----------------------------------------------------------------------


def _build_s2(ctx, params):
    l = params["l"]
    _check_pl_field(ctx, l)
    mu_c = params["muC"]
    _require(
        mu_c != 0 and _in_subfield(ctx, mu_c, l), "muC must be a nonzero element of F_(p^l)"
    )
    s1 = _as_linpoly(ctx, params["S1"])
    for s in s1:
        _require(_in_subfield(ctx, s, l), "S1 must have coefficients in F_(p^l)")
    table = linpoly.lp_eval_table(ctx, s1)
    q, m, p = ctx.q, ctx.m, ctx.p
    tr_c = [ctx.abs_trace_int(ctx.mul(mu_c, c)) for c in range(q)]

    def theta_fn(a, b, c):
        return (l * tr_c[c]) % m

    fast = {
        "theta_ord": p,
        "theta_step": l,
        "theta_b": [0] * q,
        "theta_c": tr_c,
        "T_c": table,
        "NB": [0] * p,
    }
    return GroupSpec(
        ctx,
        lambda a, b, c: table[c],
        theta_fn,
        variant="S2",
        params={"variant": "S2", "l": l, "muC": mu_c, "S1": list(s1)},
        fast=fast,
    )


# -- S3 / PreS3 ----------------------------------------------------------------


def _validate_symmetric_tuple(ctx, l, mu_b, s1, twisted_rhs=None):
    """The index-paired coefficient condition; twisted_rhs supplies the S4 right side."""
    m = ctx.m
    for s in s1:
        _require(_in_subfield(ctx, s, l), "s-tuple entries must lie in F_(p^l)")
    for i in range(1, m):
        lhs = ctx.add(
            ctx.neg(ctx.mul(mu_b, s1[i])),
            ctx.mul(ctx.frob(i, s1[m - i]), ctx.frob(i, mu_b)),
        )
        rhs = 0 if twisted_rhs is None else twisted_rhs(i)
        _require(
            lhs == rhs,
            f"s-tuple pairing condition fails at index {i} "
            f"(muB·s_i vs s_(m-i)^(p^i)·muB^(p^i) mismatch)",
        )


def _build_pres3_like(ctx, params, variant):
    l = params["l"]
    _check_pl_field(ctx, l)
    p, q, m = ctx.p, ctx.q, ctx.m
    mu_b = params["muB"]
    _require(
        mu_b != 0 and _in_subfield(ctx, mu_b, l), "muB must be a nonzero element of F_(p^l)"
    )
    s1 = _as_linpoly(ctx, params.get("S1", params.get("s")))
    _validate_symmetric_tuple(ctx, l, mu_b, s1)
    alpha = params.get("alpha", 0)
    if variant == "S3":
        _require(alpha == 0, "S3 takes alpha = 0 (use PreS3 otherwise)")
    nu_b = ctx.mul(ctx.inv(mu_b), ctx.sub(ctx.frob(l, alpha), alpha))
    nb = [0] * p
    for i in range(1, p):
        nb[i] = ctx.add(nb[i - 1], ctx.frob(((i - 1) * l) % m, nu_b))
    s1_tab = linpoly.lp_eval_table(ctx, s1)
    half = (p + 1) // 2
    q_tab = [(-ctx.abs_trace_int(ctx.mul(mu_b, ctx.mul(x, s1_tab[x])))) % p for x in range(q)]
    tr_a = [ctx.abs_trace_int(ctx.mul(alpha, c)) for c in range(q)]
    tr_b = [ctx.abs_trace_int(ctx.mul(mu_b, b)) for b in range(q)]
    theta_c = [(half * q_tab[c] + tr_a[c]) % p for c in range(q)]

    def theta_fn(a, b, c):
        return (l * ((theta_c[c] + tr_b[b]) % p)) % m

    def t_fn(a, b, c):
        return ctx.add(s1_tab[c], nb[(theta_c[c] + tr_b[b]) % p])

    fast = {
        "theta_ord": p,
        "theta_step": l,
        "theta_b": tr_b,
        "theta_c": theta_c,
        "T_c": s1_tab,
        "NB": nb,
    }
    rec = {"variant": variant, "l": l, "muB": mu_b, "S1": list(s1), "alpha": alpha, "nuB": nu_b}
    return GroupSpec(ctx, t_fn, theta_fn, variant=variant, params=rec, fast=fast)


def _build_s3(ctx, params):
    params = dict(params)
    params["alpha"] = 0
    return _build_pres3_like(ctx, params, "S3")


def _build_pres3(ctx, params):
    return _build_pres3_like(ctx, params, "PreS3")


# -- coset machinery (PreS2, S4, PreS4) ----------------------------------------


class _CosetData:
    """Precomputed decomposition g_{x,y,z} = g_{a,b,c} o h^i with c in K."""

    def __init__(self, ctx, h: GroupElem, mu_c, order):
        self.ctx = ctx
        self.h = h
        self.order = order
        lam_c = ctx.abs_trace_int(ctx.mul(mu_c, h.c))
        _require(lam_c != 0, "tC must satisfy tr(muC·tC) != 0")
        self.lam_c = lam_c
        inv_lam = pow(lam_c, ctx.p - 2, ctx.p)
        powers = [GroupElem(0, 0, 0, 0, 0)]
        for _ in range(order - 1):
            powers.append(g_mul(ctx, powers[-1], h))
        self.powers = powers
        q = ctx.q
        tr_c = [ctx.abs_trace_int(ctx.mul(mu_c, z)) for z in range(q)]
        self.i_of = [(tr_c[z] * inv_lam) % ctx.p for z in range(q)]
        # i ranges in [0, p); for order p^2 cosets (S4-type) the index is still
        # mod p = 3: the subgroup K has index 3 and h^3 lands back over K.
        self.c_of = [0] * q
        for z in range(q):
            hi = powers[self.i_of[z] % order]
            self.c_of[z] = ctx.frob(-hi.f, ctx.sub(z, hi.c))

    def decompose(self, y, z):
        """(i, b, c) of the K-part for the target (·, y, z)."""
        ctx = self.ctx
        hi = self.powers[self.i_of[z] % self.order]
        c = self.c_of[z]
        b = ctx.frob(
            -hi.f, ctx.sub(y, ctx.add(hi.b, ctx.mul(ctx.sub(z, hi.c), hi.t)))
        )
        return self.i_of[z], b, c, hi

    def solve_a(self, x, y, z):
        """Full (a, b, c) and h^i for the target triple."""
        ctx = self.ctx
        i, b, c, hi = self.decompose(y, z)
        cb = ctx.frob(hi.f, b)
        cc = ctx.frob(hi.f, c)
        rhs = ctx.add(
            ctx.sub(x, hi.a),
            ctx.add(
                ctx.mul(cb, hi.c),
                ctx.add(ctx.neg(ctx.mul(cc, hi.b)), ctx.mul(cc, ctx.mul(hi.c, hi.t))),
            ),
        )
        return i, ctx.frob(-hi.f, rhs), b, c, hi


def _build_pres2(ctx, params):
    l = params["l"]
    _check_pl_field(ctx, l)
    p, q, m = ctx.p, ctx.q, ctx.m
    mu_c = params["muC"]
    _require(
        mu_c != 0 and _in_subfield(ctx, mu_c, l), "muC must be a nonzero element of F_(p^l)"
    )
    s1 = _as_linpoly(ctx, params["S1"])
    for s in s1:
        _require(_in_subfield(ctx, s, l), "S1 must have coefficients in F_(p^l)")
    t_c = params["tC"]
    _require(ctx.abs_trace_int(ctx.mul(mu_c, t_c)) != 0, "tC must lie outside K")
    s1_tab = linpoly.lp_eval_table(ctx, s1)
    nu_c = params["nuC"]
    _require(
        ctx.trace_rel(ctx.sub(nu_c, s1_tab[t_c]), l) == 0,
        "nuC must satisfy tr_(F_q/F_(p^l))(nuC - S1(tC)) = 0",
    )
    h = GroupElem(0, 0, t_c, nu_c, l % m)
    coset = _CosetData(ctx, h, mu_c, p)
    t_of_z = [0] * q
    theta_of_z = [0] * q
    for z in range(q):
        i = coset.i_of[z]
        hi = coset.powers[i]
        t_of_z[z] = ctx.add(ctx.frob(hi.f, s1_tab[coset.c_of[z]]), hi.t)
        theta_of_z[z] = (l * i) % m
    rec = {
        "variant": "PreS2",
        "l": l,
        "muC": mu_c,
        "S1": list(s1),
        "tC": t_c,
        "nuC": nu_c,
    }
    return GroupSpec(
        ctx,
        lambda a, b, c: t_of_z[c],
        lambda a, b, c: theta_of_z[c],
        variant="PreS2",
        params=rec,
    )


def _build_s4_like(ctx, params, variant):
    l = params["l"]
    p, q, m = ctx.p, ctx.q, ctx.m
    _require(p == 3 and ctx.m == 9 * l, "q must be 3^(9l)")
    u = params["u"]
    mu_c = ctx.sub(u, ctx.frob(l, u))
    _require(
        mu_c != 0 and _in_subfield(ctx, mu_c, l),
        "condition (i): muC := u - u^g must be a nonzero element of F_(3^l)",
    )
    if variant == "S4":
        _require(
            _in_subfield(ctx, u, 3 * l), "condition (i): u must lie in F_(3^(3l))"
        )
    t_c = params["tC"]
    lam_c = ctx.abs_trace_int(ctx.mul(mu_c, t_c))
    _require(lam_c != 0, "condition (ii): tr(muC·tC) must be nonzero")
    mu_b = params["muB"]
    _require(
        mu_b != 0 and _in_subfield(ctx, mu_b, l),
        "condition (iii): muB must be a nonzero element of F_(3^l)",
    )
    s1 = _as_linpoly(ctx, params.get("S1", params.get("s")))

    def rhs(i):
        return ctx.sub(ctx.mul(mu_c, ctx.frob(i, u)), ctx.mul(u, ctx.frob(i, mu_c)))

    try:
        _validate_symmetric_tuple(ctx, l, mu_b, s1, twisted_rhs=rhs)
    except InvalidParams as exc:
        raise InvalidParams(f"condition (iv): {exc}") from None
    alpha = params["alpha"]
    lam = params.get("lambda", 0) % 3
    s1_tab = linpoly.lp_eval_table(ctx, s1)
    if variant == "S4":
        _require(
            _in_subfield(ctx, alpha, 3 * l), "condition (v): alpha must lie in F_(3^(3l))"
        )
        want = ctx.add(
            ctx.mul(ctx.scalar(lam_c), u), ctx.mul(ctx.scalar(lam), mu_c)
        )
        _require(
            ctx.sub(ctx.frob(l, alpha), alpha) == want,
            "condition (v): g(alpha) - alpha must equal lamC·u + lambda·muC",
        )
        nu_c = s1_tab[t_c]
    else:
        nu_c = ctx.add(
            s1_tab[t_c],
            ctx.mul(
                ctx.inv(mu_b),
                ctx.sub(
                    ctx.sub(ctx.frob(l, alpha), alpha),
                    ctx.add(
                        ctx.mul(ctx.scalar(lam_c), u), ctx.mul(ctx.scalar(lam), mu_c)
                    ),
                ),
            ),
        )
    nu_b = 0
    for i in range(3):
        nu_b = ctx.add(nu_b, ctx.frob((i * l) % m, ctx.sub(nu_c, s1_tab[t_c])))
    g1_step = (3 * l) % m
    nb = [0, nu_b, ctx.add(nu_b, ctx.frob(g1_step, nu_b))]
    half = 2  # 1/2 = 2 mod 3
    q_tab = [(-ctx.abs_trace_int(ctx.mul(mu_b, ctx.mul(x, s1_tab[x])))) % 3 for x in range(q)]
    tr_a = [ctx.abs_trace_int(ctx.mul(alpha, c)) for c in range(q)]
    tr_b = [ctx.abs_trace_int(ctx.mul(mu_b, b)) for b in range(q)]
    theta_c_k = [(half * q_tab[c] + tr_a[c]) % 3 for c in range(q)]

    def t_k(b, c):
        e = (theta_c_k[c] + tr_b[b]) % 3
        return ctx.add(s1_tab[c], nb[e])

    h = GroupElem(0, 0, t_c, nu_c, l % m)
    coset = _CosetData(ctx, h, mu_c, 3)

    def theta_fn(a, b, c):
        i, bk, ck, hi = coset.decompose(b, c)
        e = (theta_c_k[ck] + tr_b[bk]) % 3
        return (g1_step * e + l * i) % m

    def t_fn(a, b, c):
        i, bk, ck, hi = coset.decompose(b, c)
        return ctx.add(ctx.frob(hi.f, t_k(bk, ck)), hi.t)

    rec = {
        "variant": variant,
        "l": l,
        "u": u,
        "muC": mu_c,
        "tC": t_c,
        "muB": mu_b,
        "S1": list(s1),
        "alpha": alpha,
        "lambda": lam,
        "nuC": nu_c,
        "nuB": nu_b,
        "u_in_F3_3l": _in_subfield(ctx, u, 3 * l),
    }
    return GroupSpec(ctx, t_fn, theta_fn, variant=variant, params=rec)


def _build_s4(ctx, params):
    return _build_s4_like(ctx, params, "S4")


def _build_pres4(ctx, params):
    return _build_s4_like(ctx, params, "PreS4")


# -- conjugation ----------------------------------------------------------------


def conjugate_spec(spec: GroupSpec, h: GroupElem, cap: int = 20_000_000) -> GroupSpec:
    """The spec of h^(-1) G h, recomputed pointwise from conjugated elements."""
    ctx = spec.ctx
    hinv = g_inv(ctx, h)
    t_map = {}
    theta_map = {}
    for g in spec.enumerate_elements(cap):
        cg = g_mul(ctx, g_mul(ctx, hinv, g), h)
        key = (cg.a, cg.b, cg.c)
        if key in t_map:
            raise NotInModelForm(f"conjugates collide at triple {key}")
        t_map[key] = cg.t
        theta_map[key] = cg.f
    if len(t_map) != ctx.q**3:
        raise NotInModelForm("conjugate set does not cover all triples")
    return GroupSpec(
        ctx,
        lambda a, b, c: t_map[(a, b, c)],
        lambda a, b, c: theta_map[(a, b, c)],
        variant=f"conj({spec.variant})",
        params={"variant": spec.variant, "conjugated_by": tuple(h)},
    )


# -- parameter search -----------------------------------------------------------


def find_s4_params(ctx: FieldCtx, l: int, mu_b=1, s_index: int = 0) -> dict:
    """Deterministic search for an S4 parameter record at q = 3^(9l).

    Scans u over F_(3^(3l)) and tC over F_q in index order, solving condition
    (v) for (alpha, lambda) inside F_(3^(3l)); raises NotFound if the budget
    is exhausted.
    """
    _require(ctx.p == 3 and ctx.m == 9 * l, "q must be 3^(9l)")
    sub3l = ctx.subfield_elements(3 * l)
    for u in sub3l:
        mu_c = ctx.sub(u, ctx.frob(l, u))
        if mu_c == 0 or not _in_subfield(ctx, mu_c, l):
            continue
        t_c = None
        for z in range(1, ctx.q):
            if ctx.abs_trace_int(ctx.mul(mu_c, z)) != 0:
                t_c = z
                break
        if t_c is None:
            continue
        lam_c = ctx.abs_trace_int(ctx.mul(mu_c, t_c))
        found = None
        for lam in range(3):
            want = ctx.add(
                ctx.mul(ctx.scalar(lam_c), u), ctx.mul(ctx.scalar(lam), mu_c)
            )
            for alpha in sub3l:
                if ctx.sub(ctx.frob(l, alpha), alpha) == want:
                    found = (alpha, lam)
                    break
            if found:
                break
        if not found:
            continue
        alpha, lam = found
        tuples = linpoly.solve_construction_tuple(
            ctx, "s4-twisted", {"l": l, "mu_B": mu_b, "mu_C": mu_c, "u": u}
        )
        chosen = None
        for k, tup in enumerate(tuples):
            if k == s_index:
                chosen = tup
                break
        if chosen is None:
            continue
        return {
            "variant": "S4",
            "l": l,
            "u": u,
            "tC": t_c,
            "muB": mu_b,
            "S1": list(chosen),
            "alpha": alpha,
            "lambda": lam,
        }
    raise NotFound("no S4 parameter record found within the search budget")


# -- config records ---------------------------------------------------------------


def _elem_from_config(ctx, value):
    if isinstance(value, int):
        if not 0 <= value < ctx.q:
            raise InvalidParams(f"element index {value} out of range for {ctx.spec_string()}")
        return value
    return ctx.from_coeffs(list(value))


def params_from_config(ctx: FieldCtx, config: dict) -> dict:
    """Normalize a JSON config record to internal parameter form."""
    out = {"variant": config["variant"]}
    for key in ("l", "lambda", "s0"):
        if key in config:
            out[key] = config[key]
    for key in ("muB", "muC", "omega", "mu", "u", "tC", "alpha", "nuC"):
        if key in config:
            out[key] = _elem_from_config(ctx, config[key])
    for key in ("S1", "f", "s"):
        if key in config:
            out[key] = [_elem_from_config(ctx, v) for v in config[key]]
    if "s0" in config:
        out["s0"] = _elem_from_config(ctx, config["s0"])
    return out
