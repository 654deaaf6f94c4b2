"""Reduced linearized polynomials over GF(p^m).

A LinPoly is a length-m tuple of field elements (s_0, ..., s_(m-1))
representing f(X) = sum(s_i X^(p^i)); it induces an F_p-linear map on the
field.  Coefficient-tuple solvers for the construction conditions live here:
the index-paired constraints are solved per pair over the relevant subfield
(or as one F_2 linear system for the even-characteristic tuple family), never
by brute force over the whole tuple space.
"""

from __future__ import annotations

from . import modp
from .errors import InconsistentParams
from .gf import FieldCtx, _iter_combinations


def lp_from_coeffs(ctx: FieldCtx, coeffs) -> tuple:
    out = list(coeffs)[: ctx.m]
    out += [0] * (ctx.m - len(out))
    return tuple(out)


def lp_zero(ctx: FieldCtx) -> tuple:
    return (0,) * ctx.m


def lp_monomial(ctx: FieldCtx, i: int, coeff=1) -> tuple:
    """coeff * X^(p^i)."""
    out = [0] * ctx.m
    out[i % ctx.m] = coeff
    return tuple(out)


def lp_eval(ctx: FieldCtx, f, x) -> int:
    acc = 0
    for i, s in enumerate(f):
        if s:
            acc = ctx.add(acc, ctx.mul(s, ctx.frob(i, x)))
    return acc


def lp_eval_table(ctx: FieldCtx, f) -> list:
    """Value table of f over the whole field."""
    return [lp_eval(ctx, f, x) for x in range(ctx.q)]


def lp_add(ctx: FieldCtx, f, g) -> tuple:
    return tuple(ctx.add(a, b) for a, b in zip(f, g))


def lp_scale(ctx: FieldCtx, lam, f) -> tuple:
    return tuple(ctx.mul(lam, a) for a in f)


def lp_trace_dual(ctx: FieldCtx, f) -> tuple:
    """The dual f~ with tr(f(x)·y) = tr(x·f~(y)): s~_i = s_((m-i) mod m)^(p^i)."""
    m = ctx.m
    return tuple(ctx.frob(i, f[(m - i) % m]) for i in range(m))


def lp_matrix(ctx: FieldCtx, f) -> list:
    """Matrix of the induced F_p-linear map in the power basis (columns are
    images of basis vectors, as coefficient digits)."""
    m = ctx.m
    cols = []
    for j in range(m):
        basis = ctx.from_coeffs([0] * j + [1])
        cols.append(ctx.coeffs(lp_eval(ctx, f, basis)))
    return [[cols[j][i] for j in range(m)] for i in range(m)]


def lp_kernel(ctx: FieldCtx, f) -> list:
    """F_p-basis of ker(f) as a list of field elements."""
    basis = modp.nullspace(lp_matrix(ctx, f), ctx.p)
    return [ctx.from_coeffs(v) for v in basis]


def lp_image(ctx: FieldCtx, f) -> set:
    """The image set of f; fine at desk scale (|image| <= q)."""
    return {lp_eval(ctx, f, x) for x in range(ctx.q)}


def lp_frob_combo(ctx: FieldCtx, step: int, weights) -> tuple:
    """The linearized polynomial sum(w_i * g^i) where g = x -> x^(p^step).

    weights are integers mod p; used for operators like (1-g)^k.
    """
    out = [0] * ctx.m
    for i, w in enumerate(weights):
        idx = (i * step) % ctx.m
        out[idx] = ctx.add(out[idx], ctx.scalar(w))
    return tuple(out)


def one_minus_frob_power(ctx: FieldCtx, step: int, k: int) -> tuple:
    """(1 - g)^k as a LinPoly, g = x -> x^(p^step)."""
    weights = [1]
    for _ in range(k):
        nxt = [0] * (len(weights) + 1)
        for i, w in enumerate(weights):
            nxt[i] = (nxt[i] + w) % ctx.p
            nxt[i + 1] = (nxt[i + 1] - w) % ctx.p
        weights = nxt
    return lp_frob_combo(ctx, step, weights)


# -- coefficient-tuple solvers ------------------------------------------------


def solve_construction_tuple(ctx: FieldCtx, kind: str, params: dict):
    """Iterator of coefficient tuples for the cited construction conditions.

    kind "s1-symmetric": tuples (s_0..s_(m-1)) over F_(p^l) with
        mu_B·s_i = s_(m-i)^(p^i)·mu_B^(p^i)  for 1 <= i <= m-1.
    kind "s4-twisted": tuples over F_(3^l) with
        -mu_B·s_i + s_(m-i)^(3^i)·mu_B^(3^i) = mu_C·u^(3^i) - u·mu_C^(3^i).
    kind "even-f-tuple": pairs ((f_0..f_(m-1)), (s_0..s_(m-1))) with f_0 = 0,
        mu·f_i = (mu·f_(m-i))^(2^i), the closing sum condition, and the s_i
        derived by the recurrence omega·s_(i+1) + s_i^2 = f_i^2.

    Tuples are yielded in a fixed lexicographic order of the free choices.
    """
    if kind == "s1-symmetric":
        return _solve_paired(ctx, params, twisted=False)
    if kind == "s4-twisted":
        return _solve_paired(ctx, params, twisted=True)
    if kind == "even-f-tuple":
        return _solve_even(ctx, params)
    raise InconsistentParams(f"unknown tuple-condition tag {kind!r}")


def _pair_rhs(ctx, params, i, twisted):
    if not twisted:
        return 0
    mu_c, u = params["mu_C"], params["u"]
    return ctx.sub(ctx.mul(mu_c, ctx.frob(i, u)), ctx.mul(u, ctx.frob(i, mu_c)))


def _solve_paired(ctx: FieldCtx, params: dict, twisted: bool):
    m, l = ctx.m, params["l"]
    mu_b = params["mu_B"]
    if mu_b == 0 or ctx.frob(l, mu_b) != mu_b:
        raise InconsistentParams("mu_B must be a nonzero element of F_(p^l)")
    sub = ctx.subfield_elements(l)
    subset = set(sub)

    def check(i, s_i, s_mi):
        # -mu_B s_i + s_(m-i)^(p^i) mu_B^(p^i) = rhs_i   (rhs = 0 untwisted)
        lhs = ctx.add(
            ctx.neg(ctx.mul(mu_b, s_i)),
            ctx.mul(ctx.frob(i, s_mi), ctx.frob(i, mu_b)),
        )
        return lhs == _pair_rhs(ctx, params, i, twisted)

    # index pairs {i, m-i} for 1 <= i <= m-1, plus the free index 0
    pair_solutions = []  # list of (indices, list-of-value-tuples)
    pair_solutions.append(((0,), [(s,) for s in sub]))
    for i in range(1, m // 2 + 1):
        j = m - i
        if i == j:
            vals = [(s,) for s in sub if check(i, s, s)]
            pair_solutions.append(((i,), vals))
        else:
            vals = []
            for s_i in sub:
                for s_j in sub:
                    if check(i, s_i, s_j) and check(j, s_j, s_i):
                        vals.append((s_i, s_j))
            pair_solutions.append(((i, j), vals))
    for _, vals in pair_solutions:
        if not vals:
            raise InconsistentParams("index-paired coefficient system is infeasible")

    def emit():
        counts = [len(v) for _, v in pair_solutions]
        for combo in _mixed_radix(counts):
            tup = [0] * m
            for (idxs, vals), k in zip(pair_solutions, combo):
                for idx, val in zip(idxs, vals[k]):
                    tup[idx] = val
            yield tuple(tup)

    return emit()


def _mixed_radix(counts):
    combo = [0] * len(counts)
    while True:
        yield tuple(combo)
        i = len(counts) - 1
        while i >= 0:
            combo[i] += 1
            if combo[i] < counts[i]:
                break
            combo[i] = 0
            i -= 1
        if i < 0:
            return


def _solve_even(ctx: FieldCtx, params: dict):
    if ctx.p != 2:
        raise InconsistentParams("even-f-tuple requires characteristic 2")
    m = ctx.m
    omega, mu = params["omega"], params["mu"]
    if omega == 0 or mu == 0:
        raise InconsistentParams("omega and mu must be nonzero")

    # unknowns: bits of f_1..f_(m-1); conditions are F_2-linear in them
    nvars = (m - 1) * m

    def f_of_vec(vec):
        fs = [0]
        for k in range(m - 1):
            fs.append(ctx.from_coeffs(vec[k * m : (k + 1) * m]))
        return fs

    rows = []
    basis_vecs = []
    for v in range(nvars):
        vec = [0] * nvars
        vec[v] = 1
        basis_vecs.append(f_of_vec(vec))

    def condition_values(fs):
        out = []
        # mu f_i + (mu f_(m-i))^(2^i) = 0 for 1 <= i <= m-1
        for i in range(1, m):
            lhs = ctx.add(
                ctx.mul(mu, fs[i]), ctx.frob(i, ctx.mul(mu, fs[(m - i) % m]))
            )
            out.extend(ctx.coeffs(lhs))
        # sum_j omega^(-2^j+1) f_(m-j)^(2^j) = 0
        acc = 0
        for j in range(1, m):
            coef = ctx.pow(ctx.inv(omega), (1 << j) - 1)
            acc = ctx.add(acc, ctx.mul(coef, ctx.frob(j, fs[m - j])))
        out.extend(ctx.coeffs(acc))
        return out

    ncond = len(condition_values([0] * m))
    matrix = [[0] * nvars for _ in range(ncond)]
    for v, fs in enumerate(basis_vecs):
        col = condition_values(fs)
        for r in range(ncond):
            matrix[r][v] = col[r]
    kernel = modp.nullspace(matrix, 2)

    def emit():
        for combo in _iter_combinations(len(kernel), 2):
            vec = [0] * nvars
            for c, kv in zip(combo, kernel):
                if c:
                    vec = [(a + b) % 2 for a, b in zip(vec, kv)]
            fs = f_of_vec(vec)
            for s0 in range(ctx.q):
                ss = derive_even_s_tuple(ctx, omega, fs, s0)
                yield tuple(fs), ss

    return emit()


def derive_even_s_tuple(ctx: FieldCtx, omega, fs, s0) -> tuple:
    """s_1..s_(m-1) from omega·s_(i+1) + s_i^2 = f_i^2 (subscripts mod m)."""
    inv_w = ctx.inv(omega)
    ss = [s0]
    for i in range(ctx.m - 1):
        nxt = ctx.mul(inv_w, ctx.add(ctx.mul(fs[i], fs[i]), ctx.mul(ss[i], ss[i])))
        ss.append(nxt)
    wrap = ctx.add(
        ctx.mul(omega, ss[0]), ctx.mul(ss[ctx.m - 1], ss[ctx.m - 1])
    )
    if wrap != ctx.mul(fs[ctx.m - 1], fs[ctx.m - 1]):
        raise InconsistentParams("f-tuple does not close the s-recurrence")
    return tuple(ss)
