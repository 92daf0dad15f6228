"""Exact coefficient arithmetic for the supported fields.

Four field kinds are available: the rationals, prime fields F_p, small
extensions F_{p^e} (e <= 4, explicit irreducible minimal polynomial), and
rational-function fields k(t_1, ..., t_m) over one of the former.

A field object is an immutable descriptor whose methods operate on raw
*payloads*: ``fractions.Fraction`` for the rationals, ``int`` residues for
F_p, coefficient tuples for F_{p^e}, and reduced ``(numerator, denominator)``
pairs of parameter polynomials for rational functions.  The polynomial
kernels elsewhere in the package work on payloads directly; ``FieldElem``
boxes a payload with its descriptor for use at API boundaries.

All arithmetic is exact.  Rationals are kept in lowest terms (Fraction's own
invariant); rational functions are kept reduced with a deterministically
normalized denominator, so payload equality is mathematical equality.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    CharZero,
    DescriptorMismatch,
    DivisionByZero,
    NotAPthPower,
)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# Parameter polynomials.
#
# Raw multivariate polynomials in the parameters t_1..t_m, used as the
# numerators/denominators of rational-function payloads.  Canonical form is a
# tuple of (exponent-tuple, base-payload) pairs sorted by exponent tuple; the
# arithmetic below works on dicts and re-canonicalizes at the end.
# ---------------------------------------------------------------------------


def pp_canon(d):
    return tuple(sorted(d.items()))


def pp_is_zero(t) -> bool:
    return not t


def pp_const(base, nparams, c):
    if base.is_zero(c):
        return ()
    return (((0,) * nparams, c),)


def pp_one(base, nparams):
    return pp_const(base, nparams, base.one)


def pp_var(base, nparams, i):
    exps = tuple(1 if j == i else 0 for j in range(nparams))
    return ((exps, base.one),)


def _pp_add_dicts(base, da, db):
    out = dict(da)
    for m, c in db.items():
        s = base.add(out.get(m, base.zero), c)
        if base.is_zero(s):
            out.pop(m, None)
        else:
            out[m] = s
    return out


def pp_add(base, f, g):
    return pp_canon(_pp_add_dicts(base, dict(f), dict(g)))


def pp_neg(base, f):
    return tuple((m, base.neg(c)) for m, c in f)


def pp_sub(base, f, g):
    return pp_add(base, f, pp_neg(base, g))


def pp_mul(base, f, g):
    out = {}
    for m1, c1 in f:
        for m2, c2 in g:
            m = tuple(a + b for a, b in zip(m1, m2))
            s = base.add(out.get(m, base.zero), base.mul(c1, c2))
            if base.is_zero(s):
                out.pop(m, None)
            else:
                out[m] = s
    return pp_canon(out)


def pp_scale(base, f, c):
    if base.is_zero(c):
        return ()
    return tuple((m, base.mul(c, coef)) for m, coef in f)


def pp_lead(f):
    """Lex-leading (monomial, coeff); canonical form is sorted, so it's last."""
    return f[-1]


def pp_total_degree(f):
    return max((sum(m) for m, _ in f), default=0)


def pp_divmod(base, f, g):
    """Divide by a single divisor using lex leading terms; returns (q, r)."""
    if pp_is_zero(g):
        raise DivisionByZero("parameter-polynomial division by zero")
    gl, glc = pp_lead(g)
    q = {}
    work = dict(f)
    r = {}
    while work:
        m = max(work)
        c = work.pop(m)
        if all(a >= b for a, b in zip(m, gl)):
            t = tuple(a - b for a, b in zip(m, gl))
            fac = base.div(c, glc)
            q[t] = base.add(q.get(t, base.zero), fac)
            for gm, gc in g:
                if gm == gl:
                    continue
                mm = tuple(a + b for a, b in zip(gm, t))
                s = base.sub(work.get(mm, base.zero), base.mul(fac, gc))
                if base.is_zero(s):
                    work.pop(mm, None)
                else:
                    work[mm] = s
        else:
            r[m] = c
    return pp_canon({m: c for m, c in q.items() if not base.is_zero(c)}), pp_canon(r)


def pp_exact_div(base, f, g):
    q, r = pp_divmod(base, f, g)
    if not pp_is_zero(r):
        raise ValueError("parameter-polynomial division was not exact")
    return q


def _pp_monic(base, f):
    if pp_is_zero(f):
        return f
    _, lc = pp_lead(f)
    return pp_scale(base, f, base.inv(lc))


def _pp_vars_present(f):
    out = set()
    for m, _ in f:
        for i, e in enumerate(m):
            if e:
                out.add(i)
    return out


def _pp_split_var(f, v):
    """View f as a univariate polynomial in t_v with parameter-poly coefficients."""
    parts = {}
    for m, c in f:
        k = m[v]
        m0 = m[:v] + (0,) + m[v + 1:]
        parts.setdefault(k, {})[m0] = c
    return {k: pp_canon(d) for k, d in parts.items()}


def _pp_join_var(base, parts, v):
    out = {}
    for k, coef in parts.items():
        for m, c in coef:
            mm = m[:v] + (k,) + m[v + 1:]
            out[mm] = c
    return pp_canon(out)


def _pp_shift_var(f, v, k):
    return tuple((m[:v] + (m[v] + k,) + m[v + 1:], c) for m, c in f)


def _pp_content_wrt(base, parts):
    c = ()
    for coef in parts.values():
        c = pp_gcd(base, c, coef)
        if c and pp_total_degree(c) == 0:
            break
    return c


def pp_gcd(base, f, g):
    """Multivariate gcd by primitive pseudo-remainder sequences; monic-normalized."""
    if pp_is_zero(f):
        return _pp_monic(base, g)
    if pp_is_zero(g):
        return _pp_monic(base, f)
    vs = _pp_vars_present(f) | _pp_vars_present(g)
    if not vs:
        nparams = len(f[0][0])
        return pp_one(base, nparams)
    v = max(vs)
    fp = _pp_split_var(f, v)
    gp = _pp_split_var(g, v)
    cf = _pp_content_wrt(base, fp)
    cg = _pp_content_wrt(base, gp)
    cc = pp_gcd(base, cf, cg)
    a = _pp_join_var(base, {k: pp_exact_div(base, c, cf) for k, c in fp.items()}, v)
    b = _pp_join_var(base, {k: pp_exact_div(base, c, cg) for k, c in gp.items()}, v)

    def deg_v(h):
        return max((m[v] for m, _ in h), default=-1)

    def lc_v(h):
        d = deg_v(h)
        return pp_canon({m[:v] + (0,) + m[v + 1:]: c for m, c in h if m[v] == d})

    def prem(x, y):
        dy = deg_v(y)
        ly = _pp_join_var(base, {0: lc_v(y)}, v)
        r = x
        while not pp_is_zero(r) and deg_v(r) >= dy:
            dr = deg_v(r)
            lr = _pp_join_var(base, {0: lc_v(r)}, v)
            r = pp_sub(base, pp_mul(base, ly, r),
                       pp_mul(base, lr, _pp_shift_var(y, v, dr - dy)))
        return r

    def primitive(h):
        hp = _pp_split_var(h, v)
        ch = _pp_content_wrt(base, hp)
        return _pp_join_var(base, {k: pp_exact_div(base, c, ch) for k, c in hp.items()}, v)

    if deg_v(a) < deg_v(b):
        a, b = b, a
    while not pp_is_zero(b):
        r = prem(a, b)
        a, b = b, (primitive(r) if not pp_is_zero(r) else ())
    return _pp_monic(base, pp_mul(base, cc, a))


def pp_lcm(base, f, g):
    if pp_is_zero(f) or pp_is_zero(g):
        return ()
    return _pp_monic(base, pp_exact_div(base, pp_mul(base, f, g), pp_gcd(base, f, g)))


def pp_derivative(base, f, v):
    out = {}
    for m, c in f:
        e = m[v]
        if e == 0:
            continue
        coef = base.mul(c, base.from_int(e))
        if base.is_zero(coef):
            continue
        mm = m[:v] + (e - 1,) + m[v + 1:]
        out[mm] = coef
    return pp_canon(out)


def pp_squarefree_part(base, f):
    """Radical-preserving simplification; D(f) depends only on the radical."""
    if pp_is_zero(f) or pp_total_degree(f) == 0:
        return _pp_monic(base, f)
    g = ()
    for v in sorted(_pp_vars_present(f)):
        g = pp_gcd(base, g, pp_derivative(base, f, v))
    if pp_is_zero(g):
        # char p with every exponent divisible by p: take the p-th "root" shape
        p = base.char
        if p:
            root = {}
            ok = True
            for m, c in f:
                if any(e % p for e in m):
                    ok = False
                    break
                root[tuple(e // p for e in m)] = c
            if ok:
                return pp_squarefree_part(base, pp_canon(root))
        return _pp_monic(base, f)
    g = pp_gcd(base, f, g)
    if pp_total_degree(g) == 0:
        return _pp_monic(base, f)
    return _pp_monic(base, pp_exact_div(base, f, g))


# ---------------------------------------------------------------------------
# Field descriptors.
# ---------------------------------------------------------------------------


class Field:
    """Abstract exact field; concrete subclasses define payload arithmetic."""

    kind = "abstract"
    char = 0

    def _descriptor_key(self):
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Field) and self._descriptor_key() == other._descriptor_key()

    def __hash__(self):
        return hash(self._descriptor_key())

    # -- arithmetic on payloads ------------------------------------------------
    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        if self.is_zero(b):
            raise DivisionByZero(f"division by zero in {self!r}")
        return self.mul(a, self.inv(b))

    def power(self, a, n: int):
        if n < 0:
            return self.power(self.inv(a), -n)
        result = self.one
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def is_zero(self, a) -> bool:
        raise NotImplementedError

    def from_int(self, n: int):
        raise NotImplementedError

    # -- structure --------------------------------------------------------------
    def size(self):
        """Number of elements, or None if infinite."""
        return None

    def elements(self):
        """All elements in canonical order (finite fields only)."""
        raise NotImplementedError(f"{self!r} is not finite")

    def canonical_sequence(self):
        """Deterministic stream of distinct elements; finite fields yield all."""
        sz = self.size()
        if sz is not None:
            yield from self.elements()
            return
        yield self.zero
        n = 1
        while True:
            yield self.from_int(n)
            yield self.from_int(-n)
            n += 1

    def pth_root(self, a):
        raise CharZero(f"{self!r} has characteristic zero")

    def sqrt(self, a):
        """A square root payload, or None if a is not a square (or unknown)."""
        return None

    def random(self, rng, coeff_box=None):
        raise NotImplementedError

    # -- serialization ------------------------------------------------------------
    def to_str(self, a) -> str:
        raise NotImplementedError

    def parse(self, s: str):
        raise NotImplementedError

    def __repr__(self):
        return self.kind


class Rationals(Field):
    kind = "rationals"
    char = 0

    def _descriptor_key(self):
        return ("rationals",)

    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if not a:
            raise DivisionByZero("inverse of 0")
        return 1 / a

    def div(self, a, b):
        if not b:
            raise DivisionByZero("division by zero")
        return a / b

    def is_zero(self, a):
        return not a

    def from_int(self, n):
        return Fraction(n)

    def sqrt(self, a):
        if a < 0:
            return None
        rn = math.isqrt(a.numerator)
        rd = math.isqrt(a.denominator)
        if rn * rn == a.numerator and rd * rd == a.denominator:
            return Fraction(rn, rd)
        return None

    def random(self, rng, coeff_box=None):
        lo, hi = coeff_box or (-9, 9)
        return Fraction(rng.randint(lo, hi))

    def to_str(self, a):
        return str(a)

    def parse(self, s):
        return Fraction(s)


QQ = Rationals()


class PrimeField(Field):
    kind = "prime"

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.char = p
        self.zero = 0
        self.one = 1 % p

    def _descriptor_key(self):
        return ("prime", self.p)

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero("inverse of 0")
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def from_int(self, n):
        return n % self.p

    def size(self):
        return self.p

    def elements(self):
        return list(range(self.p))

    def pth_root(self, a):
        # Frobenius is the identity on F_p
        return a % self.p

    def sqrt(self, a):
        a %= self.p
        for x in range(self.p):
            if x * x % self.p == a:
                return x
        return None

    def random(self, rng, coeff_box=None):
        return rng.randrange(self.p)

    def to_str(self, a):
        return str(a % self.p)

    def parse(self, s):
        return int(s) % self.p

    def __repr__(self):
        return f"F{self.p}"


class ExtField(Field):
    """F_{p^e} as F_p[w]/(min_poly); payloads are length-e coefficient tuples."""

    kind = "ext"

    def __init__(self, p: int, e: int, min_poly):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if not (1 <= e <= 4):
            raise ValueError("extension degree must be between 1 and 4")
        mp = tuple(c % p for c in min_poly)
        if len(mp) != e + 1 or mp[-1] != 1:
            raise ValueError("min_poly must be monic of degree e (coefficient list, low to high)")
        if not self._irreducible(p, mp):
            raise ValueError(f"min_poly {list(mp)} is reducible over F_{p}")
        self.p = p
        self.e = e
        self.min_poly = mp
        self.char = p
        self.zero = (0,) * e
        self.one = tuple([1 % p] + [0] * (e - 1))
        # reduction table for w^e .. w^(2e-2)
        red = []
        cur = [(-c) % p for c in mp[:-1]]  # w^e
        red.append(tuple(cur))
        for _ in range(e - 2):
            nxt = [0] + cur[:-1]
            top = cur[-1]
            if top:
                for i in range(e):
                    nxt[i] = (nxt[i] + top * red[0][i]) % p
            cur = nxt
            red.append(tuple(cur))
        self._red = red

    @staticmethod
    def _poly_divmod_fp(p, f, g):
        f = list(f)
        dg = len(g) - 1
        q = [0] * max(len(f) - dg, 0)
        inv_lead = pow(g[-1], p - 2, p)
        for i in range(len(f) - 1, dg - 1, -1):
            c = f[i] % p
            if c:
                k = (c * inv_lead) % p
                q[i - dg] = k
                for j, gc in enumerate(g):
                    f[i - dg + j] = (f[i - dg + j] - k * gc) % p
        while f and f[-1] % p == 0:
            f.pop()
        return q, f

    @classmethod
    def _irreducible(cls, p, mp):
        # exhaustive factor search: no roots, and for e = 4 no monic quadratic divisor
        e = len(mp) - 1
        for x in range(p):
            val = 0
            for c in reversed(mp):
                val = (val * x + c) % p
            if val == 0:
                return False
        if e == 4:
            for b in range(p):
                for c in range(p):
                    _, r = cls._poly_divmod_fp(p, mp, [c, b, 1])
                    if not r:
                        return False
        return True

    def _descriptor_key(self):
        return ("ext", self.p, self.e, self.min_poly)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def mul(self, a, b):
        p, e = self.p, self.e
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] = (prod[i + j] + x * y) % p
        out = prod[:e]
        for k in range(e, 2 * e - 1):
            c = prod[k]
            if c:
                row = self._red[k - e]
                for i in range(e):
                    out[i] = (out[i] + c * row[i]) % p
        return tuple(out)

    def inv(self, a):
        if self.is_zero(a):
            raise DivisionByZero("inverse of 0")
        # extended Euclid in F_p[w]
        p = self.p
        r0 = list(self.min_poly)
        r1 = [x % p for x in a]
        while r1 and r1[-1] == 0:
            r1.pop()
        s0, s1 = [0], [1]
        while len(r1) > 1:
            q, r = self._poly_divmod_fp(p, r0, r1)
            # s = s0 - q*s1
            s = list(s0) + [0] * max(0, len(q) + len(s1) - 1 - len(s0))
            for i, qc in enumerate(q):
                if qc:
                    for j, sc in enumerate(s1):
                        idx = i + j
                        if idx >= len(s):
                            s += [0] * (idx - len(s) + 1)
                        s[idx] = (s[idx] - qc * sc) % p
            r0, r1 = r1, r
            s0, s1 = s1, s
        c = pow(r1[0], p - 2, p)
        out = [(x * c) % p for x in s1][: self.e]
        out += [0] * (self.e - len(out))
        return tuple(out)

    def is_zero(self, a):
        return all(x % self.p == 0 for x in a)

    def from_int(self, n):
        return tuple([n % self.p] + [0] * (self.e - 1))

    def size(self):
        return self.p ** self.e

    def elements(self):
        return [self._index_to_elem(i) for i in range(self.p ** self.e)]

    def _index_to_elem(self, i):
        digits = []
        for _ in range(self.e):
            digits.append(i % self.p)
            i //= self.p
        return tuple(digits)

    def pth_root(self, a):
        # Frobenius x -> x^p has order e; the inverse is x -> x^(p^(e-1))
        return self.power(a, self.p ** (self.e - 1))

    def sqrt(self, a):
        for x in self.elements():
            if self.mul(x, x) == a:
                return x
        return None

    def random(self, rng, coeff_box=None):
        return self._index_to_elem(rng.randrange(self.p ** self.e))

    def to_str(self, a):
        return "[" + ",".join(str(x) for x in a) + "]"

    def parse(self, s):
        s = s.strip()
        if not (s.startswith("[") and s.endswith("]")):
            return self.from_int(int(s))
        vals = [int(x) for x in s[1:-1].split(",")] if s != "[]" else []
        vals += [0] * (self.e - len(vals))
        return tuple(v % self.p for v in vals[: self.e])

    def __repr__(self):
        return f"F{self.p}^{self.e}"


class RationalFunctionField(Field):
    """Fraction field of k[t_1..t_m]; payloads are reduced (num, den) pairs."""

    kind = "ratfunc"

    def __init__(self, params, base: Field):
        params = tuple(params)
        if not params or len(set(params)) != len(params):
            raise ValueError("parameter names must be nonempty and unique")
        if isinstance(base, RationalFunctionField):
            raise ValueError("rational-function fields cannot be nested")
        self.params = params
        self.base = base
        self.char = base.char
        self.nparams = len(params)
        self.zero = ((), pp_one(base, self.nparams))
        self.one = (pp_one(base, self.nparams), pp_one(base, self.nparams))

    def _descriptor_key(self):
        return ("ratfunc", self.params, self.base._descriptor_key())

    # -- normalization ----------------------------------------------------------
    def make(self, num, den):
        base = self.base
        if pp_is_zero(den):
            raise DivisionByZero("zero denominator")
        if pp_is_zero(num):
            return ((), pp_one(base, self.nparams))
        g = pp_gcd(base, num, den)
        if pp_total_degree(g) > 0 or not base.is_zero(base.sub(pp_lead(g)[1], base.one)):
            num = pp_exact_div(base, num, g)
            den = pp_exact_div(base, den, g)
        if base.kind == "rationals":
            # denominator: integer coefficients, content 1, positive lex-leading coeff
            lcm = 1
            for _, c in den:
                lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
            content = 0
            for _, c in den:
                content = math.gcd(content, abs(c.numerator * (lcm // c.denominator)))
            scale = Fraction(lcm, content)
            if pp_lead(den)[1] < 0:
                scale = -scale
            den = pp_scale(base, den, scale)
            num = pp_scale(base, num, scale)
        else:
            lc = pp_lead(den)[1]
            inv = base.inv(lc)
            den = pp_scale(base, den, inv)
            num = pp_scale(base, num, inv)
        return (num, den)

    def from_pp(self, num):
        return self.make(num, pp_one(self.base, self.nparams))

    # -- arithmetic ---------------------------------------------------------------
    def add(self, a, b):
        base = self.base
        n = pp_add(base, pp_mul(base, a[0], b[1]), pp_mul(base, b[0], a[1]))
        return self.make(n, pp_mul(base, a[1], b[1]))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        return (pp_neg(self.base, a[0]), a[1])

    def mul(self, a, b):
        base = self.base
        return self.make(pp_mul(base, a[0], b[0]), pp_mul(base, a[1], b[1]))

    def inv(self, a):
        if pp_is_zero(a[0]):
            raise DivisionByZero("inverse of 0")
        return self.make(a[1], a[0])

    def is_zero(self, a):
        return pp_is_zero(a[0])

    def from_int(self, n):
        return self.from_pp(pp_const(self.base, self.nparams, self.base.from_int(n)))

    def param(self, i):
        return self.from_pp(pp_var(self.base, self.nparams, i))

    def pth_root(self, a):
        p = self.char
        if p == 0:
            raise CharZero("rational-function field of characteristic 0")

        def root_pp(f):
            out = {}
            for m, c in f:
                if any(e % p for e in m):
                    raise NotAPthPower("an exponent is not divisible by p")
                out[tuple(e // p for e in m)] = self.base.pth_root(c)
            return pp_canon(out)

        return self.make(root_pp(a[0]), root_pp(a[1]))

    def random(self, rng, coeff_box=None):
        raise NotImplementedError("random sampling over rational functions is unsupported")

    # -- serialization --------------------------------------------------------------
    def to_str(self, a):
        num = pp_to_str(self.base, a[0], self.params)
        if a[1] == pp_one(self.base, self.nparams):
            return num
        den = pp_to_str(self.base, a[1], self.params)
        return f"({num})/({den})"

    def parse(self, s):
        s = s.strip()
        m = re.fullmatch(r"\((.*)\)/\((.*)\)", s)
        if m:
            num = pp_parse(self.base, m.group(1), self.params)
            den = pp_parse(self.base, m.group(2), self.params)
            return self.make(num, den)
        if "/" in s and not re.search(r"[a-zA-Z()]", s):
            # plain rational constant like "3/4"
            num, den = s.split("/")
            return self.make(pp_parse(self.base, num, self.params),
                             pp_parse(self.base, den, self.params))
        return self.from_pp(pp_parse(self.base, s, self.params))

    def __repr__(self):
        return f"{self.base!r}({','.join(self.params)})"


# ---------------------------------------------------------------------------
# Parameter-polynomial strings: "3*t^2 - t*u + 1", fractions as "(1/2)*t".
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(\[[-0-9,\s]*\]|\(\s*-?\d+\s*/\s*\d+\s*\)|[a-zA-Z_][a-zA-Z_0-9]*|\d+|\^|\*|\+|-)")


def pp_to_str(base, f, params):
    if pp_is_zero(f):
        return "0"
    parts = []
    for m, c in reversed(f):  # lex-descending
        factors = []
        cs = base.to_str(c)
        mono = "*".join(
            f"{params[i]}^{e}" if e > 1 else params[i]
            for i, e in enumerate(m) if e
        )
        if not mono:
            factors.append(f"({cs})" if "/" in cs else cs)
        else:
            if cs == "1":
                pass
            elif cs == "-1" and "/" not in cs:
                factors.append("-1")
            else:
                factors.append(f"({cs})" if "/" in cs else cs)
            factors.append(mono)
        parts.append("*".join(factors) if factors else cs)
    out = " + ".join(parts)
    return out.replace("+ -", "- ")


def pp_parse(base, s, params):
    nparams = len(params)
    index = {name: i for i, name in enumerate(params)}
    pos = 0
    tokens = []
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m:
            if s[pos:].strip():
                raise ValueError(f"cannot parse parameter polynomial {s!r} at {pos}")
            break
        tokens.append(m.group(1))
        pos = m.end()
    result = {}
    i = 0
    n = len(tokens)
    while i < n:
        sign = base.one
        while i < n and tokens[i] in "+-":
            if tokens[i] == "-":
                sign = base.neg(sign)
            i += 1
        coeff = sign
        exps = [0] * nparams
        expect_factor = True
        while i < n:
            t = tokens[i]
            if t in "+-":
                break
            if t == "*":
                i += 1
                expect_factor = True
                continue
            if not expect_factor:
                raise ValueError(f"unexpected token {t!r} in {s!r}")
            if t.isdigit():
                coeff = base.mul(coeff, base.from_int(int(t)))
                i += 1
            elif t.startswith("(") :
                frac = t[1:-1].replace(" ", "")
                num, den = frac.split("/")
                coeff = base.mul(coeff, base.div(base.from_int(int(num)), base.from_int(int(den))))
                i += 1
            elif t.startswith("["):
                coeff = base.mul(coeff, base.parse(t))
                i += 1
            else:
                if t not in index:
                    raise ValueError(f"unknown parameter {t!r}")
                e = 1
                i += 1
                if i + 1 < n and tokens[i] == "^":
                    e = int(tokens[i + 1])
                    i += 2
                elif i < n and tokens[i] == "^":
                    raise ValueError("dangling ^")
                exps[index[t]] += e
            expect_factor = False
        key = tuple(exps)
        cur = result.get(key, base.zero)
        cur = base.add(cur, coeff)
        if base.is_zero(cur):
            result.pop(key, None)
        else:
            result[key] = cur
    return pp_canon(result)


# ---------------------------------------------------------------------------
# Boxed elements and the module-level operations.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldElem:
    field: Field
    payload: object

    def _check(self, other):
        if not isinstance(other, FieldElem):
            raise TypeError("expected FieldElem")
        if self.field != other.field:
            raise DescriptorMismatch(f"{self.field!r} vs {other.field!r}")

    def __add__(self, other):
        self._check(other)
        return FieldElem(self.field, self.field.add(self.payload, other.payload))

    def __sub__(self, other):
        self._check(other)
        return FieldElem(self.field, self.field.sub(self.payload, other.payload))

    def __mul__(self, other):
        self._check(other)
        return FieldElem(self.field, self.field.mul(self.payload, other.payload))

    def __truediv__(self, other):
        self._check(other)
        return FieldElem(self.field, self.field.div(self.payload, other.payload))

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.payload))

    def is_zero(self):
        return self.field.is_zero(self.payload)

    def __str__(self):
        return self.field.to_str(self.payload)


def elem(field: Field, value) -> FieldElem:
    """Box an int/str/payload as a FieldElem."""
    if isinstance(value, FieldElem):
        if value.field != field:
            raise DescriptorMismatch("element belongs to a different field")
        return value
    if isinstance(value, int):
        return FieldElem(field, field.from_int(value))
    if isinstance(value, str):
        return FieldElem(field, field.parse(value))
    return FieldElem(field, value)


def field_arith(a: FieldElem, b: FieldElem, op: str) -> FieldElem:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def pth_root(a: FieldElem) -> FieldElem:
    return FieldElem(a.field, a.field.pth_root(a.payload))


def clear_denominators(elems):
    """Scale rational-function elements to a common polynomial form.

    Returns (scaled, g) where g is the lcm of the denominators and each
    scaled[i] = g * elems[i] has denominator 1.
    """
    if not elems:
        raise ValueError("need at least one element")
    field = elems[0].field
    if not isinstance(field, RationalFunctionField):
        raise DescriptorMismatch("clear_denominators expects rational-function elements")
    for e in elems:
        if e.field != field:
            raise DescriptorMismatch("mixed descriptors")
    base = field.base
    g = pp_one(base, field.nparams)
    for e in elems:
        g = pp_lcm(base, g, e.payload[1])
    gf = FieldElem(field, field.from_pp(g))
    scaled = [gf * e for e in elems]
    return scaled, gf
