"""Exact arithmetic in GF(p^m) with integer-encoded elements.

An element is an integer in [0, p^m) encoding its coefficient vector in the
basis 1, x, ..., x^(m-1) of F_p[x]/(modulus): the element with coefficients
(c_0, ..., c_(m-1)) is the integer sum(c_i * p^i).  This encoding is fully
reduced, so integer equality/hashing is structural equality of elements, and
elements of the prime subfield F_p are exactly the integers 0..p-1.

A FieldCtx is immutable after construction and precomputes:
  * exp/log tables for a fixed generator of the multiplicative group,
  * split addition tables (digitwise mod-p addition has no carries),
  * Frobenius tables for x -> x^(p^i), 0 <= i < m.

Frobenius maps are passed around as plain integer exponents i (the map
x -> x^(p^i)); composition adds exponents mod m.
"""

from __future__ import annotations

from . import modp
from .errors import DegreeMismatch, NoSolution, NotADivisor, NotPrime, ReducibleModulus


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# -- dense polynomial arithmetic over F_p (coefficient lists, constant first) --


def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(a, b, mod, p):
    res = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    return _poly_divmod(res, mod, p)[1]


def _poly_divmod(a, b, p):
    a = _poly_trim([x % p for x in a])
    b = _poly_trim([x % p for x in b])
    if not b:
        raise ZeroDivisionError
    binv = pow(b[-1], p - 2, p)
    db = len(b) - 1
    quo = [0] * max(0, len(a) - db)
    while len(a) - 1 >= db:
        shift = len(a) - 1 - db
        f = (a[-1] * binv) % p
        quo[shift] = f
        for i, bi in enumerate(b):
            a[i + shift] = (a[i + shift] - f * bi) % p
        _poly_trim(a)
    return quo, a


def _poly_gcd(a, b, p):
    a, b = list(a), list(b)
    _poly_trim(a)
    _poly_trim(b)
    while b:
        a, b = b, _poly_divmod(a, b, p)[1]
        _poly_trim(b)
    return a

def _poly_powmod_x(e, mod, p):
    """X^e mod `mod` by binary exponentiation."""
    result = [1]
    base = _poly_divmod([0, 1], mod, p)[1]
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def poly_is_irreducible(coeffs, p) -> bool:
    """Irreducibility of a monic polynomial over F_p.

    f is irreducible iff it has no irreducible factor of degree <= deg(f)/2,
    i.e. gcd(X^(p^d) - X, f) = 1 for d = 1..deg(f)//2 (and f is not divisible
    by X unless f = X, handled by the gcd as well).
    """
    m = len(coeffs) - 1
    if m < 1 or coeffs[-1] % p != 1:
        return False
    if m == 1:
        return True
    mod = [c % p for c in coeffs]
    for d in range(1, m // 2 + 1):
        xp = _poly_powmod_x(p**d, mod, p)
        diff = list(xp) + [0] * (2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        g = _poly_gcd(mod, diff, p)
        if len(g) - 1 > 0:
            return False
    return True


def least_irreducible(p: int, m: int):
    """Lexicographically least monic irreducible of degree m over F_p.

    Candidates X^m + sum(c_i X^i) are tried in increasing order of the
    integer sum(c_i p^i), i.e. lexicographic on (c_(m-1), ..., c_0).
    """
    for k in range(p**m):
        coeffs = []
        kk = k
        for _ in range(m):
            coeffs.append(kk % p)
            kk //= p
        coeffs.append(1)
        if poly_is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("no irreducible polynomial found")  # unreachable


def _factorize(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class FieldCtx:
    """Exact GF(p^m) context; all operations take/return integer elements."""

    def __init__(self, p: int, m: int, modulus=None):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if m < 1:
            raise DegreeMismatch(f"extension degree must be >= 1, got {m}")
        if modulus is None:
            modulus = least_irreducible(p, m)
        else:
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != m + 1 or modulus[-1] != 1:
                raise DegreeMismatch(
                    f"modulus must be monic of degree {m}, got {list(modulus)}"
                )
            if not poly_is_irreducible(list(modulus), p):
                raise ReducibleModulus(f"modulus {list(modulus)} is reducible over F_{p}")
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus = modulus
        self._build_add_tables()
        self._build_mul_tables()
        self._build_frob_tables()

    # -- construction of the lookup tables --

    def _build_add_tables(self):
        p, m, q = self.p, self.m, self.q
        self._neg = [self._digit_neg(x) for x in range(q)]
        h = m // 2
        self._plo = p**h
        lo, hi = self._plo, p ** (m - h)
        self._add_lo = [[self._digit_add(i, j) for j in range(lo)] for i in range(lo)]
        self._add_hi = [[self._digit_add(i, j) for j in range(hi)] for i in range(hi)]

    def _digit_add(self, a, b):
        p = self.p
        out, mult = 0, 1
        while a or b:
            out += ((a + b) % p) * mult
            a, b = a // p, b // p
            mult *= p
        return out

    def _digit_neg(self, a):
        p = self.p
        out, mult = 0, 1
        while a:
            out += (-a % p) * mult
            a //= p
            mult *= p
        return out

    def _build_mul_tables(self):
        p, q, mod = self.p, self.q, list(self.modulus)

        def raw_mul(a, b):
            pa = self._int_to_poly(a)
            pb = self._int_to_poly(b)
            return self._poly_to_int(_poly_mulmod(pa, pb, mod, p))

        def order_is_full(g):
            for r in _factorize(q - 1):
                if _raw_pow(g, (q - 1) // r) == 1:
                    return False
            return True

        def _raw_pow(a, e):
            result, base = 1, a
            while e:
                if e & 1:
                    result = raw_mul(result, base)
                base = raw_mul(base, base)
                e >>= 1
            return result

        gen = None
        for g in range(1, q):
            if q == 2 or order_is_full(g):
                gen = g
                break
        assert gen is not None
        exp = [1] * (q - 1)
        for i in range(1, q - 1):
            exp[i] = raw_mul(exp[i - 1], gen)
        log = [0] * q
        for i, v in enumerate(exp):
            log[v] = i
        self.generator = gen
        self._exp = exp
        self._log = log

    def _build_frob_tables(self):
        p, m, q = self.p, self.m, self.q
        exp, log = self._exp, self._log
        qm1 = q - 1
        tab = [list(range(q))]
        for _ in range(1, m):
            prev = tab[-1]
            row = [0] * q
            for x in range(1, q):
                row[x] = exp[(log[prev[x]] * p) % qm1]
            tab.append(row)
        self._frob = tab

    # -- encoding helpers --

    def _int_to_poly(self, a):
        p = self.p
        out = []
        while a:
            out.append(a % p)
            a //= p
        return out

    def _poly_to_int(self, coeffs):
        out = 0
        for c in reversed(coeffs):
            out = out * self.p + (c % self.p)
        return out

    def coeffs(self, x) -> tuple:
        """Coefficient vector of x, constant term first, length m."""
        p = self.p
        out = []
        for _ in range(self.m):
            out.append(x % p)
            x //= p
        return tuple(out)

    def from_coeffs(self, coeffs) -> int:
        if len(coeffs) > self.m:
            raise DegreeMismatch(f"at most {self.m} coefficients expected")
        out = 0
        for c in reversed(list(coeffs)):
            out = out * self.p + (c % self.p)
        return out

    def scalar(self, k: int) -> int:
        """The prime-subfield element k·1."""
        return k % self.p

    # -- arithmetic --

    def add(self, a, b):
        lo = self._plo
        if lo == 1:
            return self._add_hi[a][b]
        return self._add_lo[a % lo][b % lo] + lo * self._add_hi[a // lo][b // lo]

    def neg(self, a):
        return self._neg[a]

    def sub(self, a, b):
        return self.add(a, self._neg[b])

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        qm1 = self.q - 1
        if qm1 == 1:
            return 1
        return self._exp[(self._log[a] + self._log[b]) % qm1]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        qm1 = self.q - 1
        if qm1 == 1:
            return 1
        return self._exp[(qm1 - self._log[a]) % qm1]

    def pow(self, a, e):
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 0
        qm1 = self.q - 1
        if qm1 == 1:
            return 1
        return self._exp[(self._log[a] * e) % qm1]

    def frob(self, i, x):
        """x^(p^i); the exponent is reduced mod m."""
        return self._frob[i % self.m][x]

    def frob_order(self, i) -> int:
        from math import gcd

        return self.m // gcd(self.m, i % self.m)

    def elements(self):
        return range(self.q)

    def subfield_elements(self, d) -> list:
        """All elements of the subfield F_(p^d), for d | m."""
        if self.m % d != 0:
            raise NotADivisor(f"{d} does not divide {self.m}")
        tab = self._frob[d % self.m] if d != self.m else list(range(self.q))
        return [x for x in range(self.q) if tab[x] == x]

    # -- traces and Artin-Schreier --

    def trace_rel(self, x, d) -> int:
        """Relative trace tr_{F_q/F_{p^d}}(x); d must divide m."""
        if d < 1 or self.m % d != 0:
            raise NotADivisor(f"{d} does not divide {self.m}")
        total = 0
        for j in range(self.m // d):
            total = self.add(total, self._frob[(j * d) % self.m][x] if j else x)
        return total

    def abs_trace_int(self, x) -> int:
        """Absolute trace tr_{F_q/F_p}(x) as an integer in [0, p)."""
        return self.trace_rel(x, 1)  # prime-subfield elements are 0..p-1

    def artin_schreier_solve(self, alpha, d) -> int:
        """Least-key beta with beta^(p^d) - beta = alpha, else NoSolution.

        Solvable exactly when trace_rel(alpha, d) = 0; the returned solution
        is the one with the smallest integer encoding.
        """
        if d < 1 or self.m % d != 0:
            raise NotADivisor(f"{d} does not divide {self.m}")
        p, m = self.p, self.m
        if d == m:
            if alpha == 0:
                return 0
            raise NoSolution(self.trace_rel(alpha, d))
        cols = []
        for j in range(m):
            basis = self.from_coeffs([0] * j + [1])
            img = self.sub(self._frob[d][basis], basis)
            cols.append(self.coeffs(img))
        matrix = [[cols[j][i] for j in range(m)] for i in range(m)]
        rhs = list(self.coeffs(alpha))
        sol = modp.solve(matrix, rhs, p)
        if sol is None:
            raise NoSolution(self.trace_rel(alpha, d))
        beta0 = self.from_coeffs(sol)
        best = None
        kernel = modp.nullspace(matrix, p)
        for combo in _iter_combinations(len(kernel), p):
            vec = list(sol)
            for c, kv in zip(combo, kernel):
                if c:
                    vec = [(v + c * k) % p for v, k in zip(vec, kv)]
            cand = self.from_coeffs(vec)
            if best is None or cand < best:
                best = cand
        return best if best is not None else beta0

    # -- field spec strings --

    def spec_string(self) -> str:
        return f"{self.p}^{self.m}/" + ",".join(str(c) for c in self.modulus)

    def __repr__(self):
        return f"FieldCtx(GF({self.p}^{self.m}), modulus={list(self.modulus)})"

    def __eq__(self, other):
        return (
            isinstance(other, FieldCtx)
            and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))


def _iter_combinations(n, p):
    """All tuples in [0,p)^n, lexicographically with the last index fastest."""
    combo = [0] * n
    while True:
        yield tuple(combo)
        i = n - 1
        while i >= 0:
            combo[i] += 1
            if combo[i] < p:
                break
            combo[i] = 0
            i -= 1
        if i < 0:
            return


def field_new(p: int, m: int, modulus=None) -> FieldCtx:
    """Build a field context; modulus defaults to the least irreducible."""
    return FieldCtx(p, m, modulus)


def parse_field_spec(spec: str) -> FieldCtx:
    """Parse "p^m" or "p^m/c0,c1,...,cm" (constant term first)."""
    body, _, modpart = spec.partition("/")
    try:
        ps, ms = body.split("^")
        p, m = int(ps), int(ms)
    except ValueError as exc:
        raise DegreeMismatch(f"bad field spec {spec!r}") from exc
    modulus = None
    if modpart:
        modulus = [int(c) for c in modpart.split(",")]
    return FieldCtx(p, m, modulus)
