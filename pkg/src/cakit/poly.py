"""Sparse multivariate polynomials with weighted gradings.

Monomials are exponent tuples (one entry per ring variable); a polynomial is
a dict from exponent tuple to a nonzero coefficient payload of the ring's
field.  Values are immutable by convention: every operation returns a fresh
``Poly``.  The weighted degree of a monomial is the dot product of its
exponents with the declared variable degrees.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field

from .errors import (
    FieldTooSmall,
    NotHomogeneous,
    RingMismatch,
    UnsupportedField,
    ZeroInput,
)
from .fields import Field, FieldElem, RationalFunctionField


class _Marker:
    __slots__ = ("name",)

    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return self.name


#: degree markers returned by :func:`homogeneous_degree`
ZERO_POLY = _Marker("ZeroPoly")
NOT_HOMOGENEOUS = _Marker("NotHomogeneous")


@dataclass(frozen=True)
class RingCtx:
    """A graded polynomial ring: coefficient field plus ordered weighted variables."""

    field: Field
    names: tuple
    degrees: tuple

    def __post_init__(self):
        names = tuple(self.names)
        degrees = tuple(int(d) for d in self.degrees)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "degrees", degrees)
        if len(names) != len(degrees):
            raise ValueError("names and degrees must have equal length")
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")
        if any(d < 1 for d in degrees):
            raise ValueError("variable degrees must be positive")

    @property
    def nvars(self):
        return len(self.names)

    def mono_degree(self, exps):
        return sum(e * d for e, d in zip(exps, self.degrees))

    def var_index(self, name):
        return self.names.index(name)

    def subring(self, n):
        return RingCtx(self.field, self.names[:n], self.degrees[:n])

    def is_standard_graded(self):
        return all(d == 1 for d in self.degrees)

    def mono_str(self, exps):
        parts = [
            f"{self.names[i]}^{e}" if e > 1 else self.names[i]
            for i, e in enumerate(exps)
            if e
        ]
        return "*".join(parts) if parts else "1"


def ring(field, *vars_):
    """Convenience constructor: ring(F, ("x1", 1), "x2", ...) — bare names get degree 1."""
    names, degrees = [], []
    for v in vars_:
        if isinstance(v, str):
            names.append(v)
            degrees.append(1)
        else:
            names.append(v[0])
            degrees.append(v[1])
    return RingCtx(field, tuple(names), tuple(degrees))


def standard_ring(field, n, prefix="x"):
    return RingCtx(field, tuple(f"{prefix}{i+1}" for i in range(n)), (1,) * n)


class Poly:
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring_, terms=None, *, _trusted=False):
        self.ring = ring_
        if terms is None:
            self.terms = {}
        elif _trusted:
            self.terms = terms
        else:
            fld = ring_.field
            self.terms = {}
            for m, c in terms.items():
                m = tuple(m)
                if len(m) != ring_.nvars:
                    raise ValueError("exponent tuple has wrong length")
                if any(e < 0 for e in m):
                    raise ValueError("negative exponent")
                if not fld.is_zero(c):
                    self.terms[m] = c
        self._hash = None

    # -- constructors -------------------------------------------------------------
    @classmethod
    def zero(cls, ring_):
        return cls(ring_, {}, _trusted=True)

    @classmethod
    def constant(cls, ring_, c):
        fld = ring_.field
        if isinstance(c, FieldElem):
            c = c.payload
        if fld.is_zero(c):
            return cls.zero(ring_)
        return cls(ring_, {(0,) * ring_.nvars: c}, _trusted=True)

    @classmethod
    def one(cls, ring_):
        return cls.constant(ring_, ring_.field.one)

    @classmethod
    def variable(cls, ring_, i):
        if not 0 <= i < ring_.nvars:
            raise IndexError(f"no variable with index {i}")
        exps = tuple(1 if j == i else 0 for j in range(ring_.nvars))
        return cls(ring_, {exps: ring_.field.one}, _trusted=True)

    @classmethod
    def from_int(cls, ring_, n):
        return cls.constant(ring_, ring_.field.from_int(n))

    # -- predicates ---------------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def _check_ring(self, other):
        if self.ring != other.ring:
            raise RingMismatch("polynomials live in different rings")

    # -- arithmetic ---------------------------------------------------------------
    def __add__(self, other):
        self._check_ring(other)
        fld = self.ring.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = fld.add(out.get(m, fld.zero), c)
            if fld.is_zero(s):
                out.pop(m, None)
            else:
                out[m] = s
        return Poly(self.ring, out, _trusted=True)

    def __sub__(self, other):
        self._check_ring(other)
        fld = self.ring.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = fld.sub(out.get(m, fld.zero), c)
            if fld.is_zero(s):
                out.pop(m, None)
            else:
                out[m] = s
        return Poly(self.ring, out, _trusted=True)

    def __neg__(self):
        fld = self.ring.field
        return Poly(self.ring, {m: fld.neg(c) for m, c in self.terms.items()}, _trusted=True)

    def __mul__(self, other):
        if isinstance(other, FieldElem):
            return self.scale(other.payload)
        if isinstance(other, int):
            return self.scale(self.ring.field.from_int(other))
        self._check_ring(other)
        fld = self.ring.field
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = fld.add(out.get(m, fld.zero), fld.mul(c1, c2))
                if fld.is_zero(s):
                    out.pop(m, None)
                else:
                    out[m] = s
        return Poly(self.ring, out, _trusted=True)

    def __rmul__(self, other):
        if isinstance(other, (FieldElem, int)):
            return self.__mul__(other)
        return NotImplemented

    def scale(self, payload):
        fld = self.ring.field
        if fld.is_zero(payload):
            return Poly.zero(self.ring)
        return Poly(self.ring, {m: fld.mul(payload, c) for m, c in self.terms.items()},
                    _trusted=True)

    def mul_term(self, exps, payload):
        fld = self.ring.field
        if fld.is_zero(payload):
            return Poly.zero(self.ring)
        return Poly(self.ring,
                    {tuple(a + b for a, b in zip(m, exps)): fld.mul(payload, c)
                     for m, c in self.terms.items()},
                    _trusted=True)

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        result = Poly.one(self.ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- structure ----------------------------------------------------------------
    def degree(self):
        """Maximum weighted degree, or ZERO_POLY for the zero polynomial."""
        if not self.terms:
            return ZERO_POLY
        md = self.ring.mono_degree
        return max(md(m) for m in self.terms)

    def is_homogeneous(self):
        if not self.terms:
            return True
        md = self.ring.mono_degree
        it = iter(self.terms)
        d = md(next(it))
        return all(md(m) == d for m in it)

    def coeff(self, exps):
        return self.terms.get(tuple(exps), self.ring.field.zero)

    def coeff_elem(self, exps):
        return FieldElem(self.ring.field, self.coeff(exps))

    def map_coeffs(self, fn, new_ring=None):
        rng = new_ring or self.ring
        fld = rng.field
        out = {}
        for m, c in self.terms.items():
            v = fn(c)
            if not fld.is_zero(v):
                out[m] = v
        return Poly(rng, out, _trusted=True)

    def evaluate(self, point):
        """Evaluate at a full point (payload per variable); returns a payload."""
        fld = self.ring.field
        total = fld.zero
        for m, c in self.terms.items():
            v = c
            for e, val in zip(m, point):
                if e:
                    v = fld.mul(v, fld.power(val, e))
            total = fld.add(total, v)
        return total

    # -- comparison ----------------------------------------------------------------
    def __eq__(self, other):
        return (isinstance(other, Poly) and self.ring == other.ring
                and self.terms == other.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, tuple(sorted(self.terms.items(),
                                                       key=lambda t: t[0]))))
        return self._hash

    def sorted_terms(self):
        """Terms in canonical (grevlex-descending) order."""
        md = self.ring.mono_degree

        def key(item):
            m = item[0]
            return (md(m), tuple(-e for e in reversed(m)))

        return sorted(self.terms.items(), key=key, reverse=True)

    def __repr__(self):
        if not self.terms:
            return "0"
        fld = self.ring.field
        parts = []
        for m, c in self.sorted_terms():
            cs = fld.to_str(c)
            mono = self.ring.mono_str(m)
            if mono == "1":
                parts.append(f"({cs})" if any(ch in cs for ch in "+-/[" ) and cs.lstrip("-").count("-") + cs.count("+") + cs.count("/") > 0 else cs)
            elif cs == "1":
                parts.append(mono)
            else:
                wrap = any(ch in cs for ch in "+/") or ("-" in cs[1:])
                parts.append((f"({cs})" if wrap else cs) + "*" + mono)
        return " + ".join(parts)


def homogeneous_degree(f: Poly):
    """Weighted degree if homogeneous, NOT_HOMOGENEOUS otherwise, ZERO_POLY for 0."""
    if f.is_zero():
        return ZERO_POLY
    md = f.ring.mono_degree
    degs = {md(m) for m in f.terms}
    if len(degs) > 1:
        return NOT_HOMOGENEOUS
    return degs.pop()


def poly_arith(f: Poly, g: Poly, op: str) -> Poly:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown op {op!r}")


class GradedHom:
    """A degree-preserving ring homomorphism given by variable images."""

    __slots__ = ("source", "target", "images")

    def __init__(self, source: RingCtx, target: RingCtx, images):
        images = tuple(images)
        if len(images) != source.nvars:
            raise ValueError("need one image per source variable")
        for i, img in enumerate(images):
            if img.ring != target:
                raise RingMismatch("image lives in the wrong ring")
            d = homogeneous_degree(img)
            if d is NOT_HOMOGENEOUS or (d is not ZERO_POLY and d != source.degrees[i]):
                raise NotHomogeneous(
                    f"image of {source.names[i]} must be homogeneous of degree "
                    f"{source.degrees[i]}")
        self.source = source
        self.target = target
        self.images = images

    @classmethod
    def identity(cls, ring_):
        return cls(ring_, ring_, tuple(Poly.variable(ring_, i) for i in range(ring_.nvars)))

    def __call__(self, f: Poly) -> Poly:
        return self.apply(f)

    def apply(self, f: Poly) -> Poly:
        if f.ring != self.source:
            raise RingMismatch("polynomial not in the source ring")
        out = Poly.zero(self.target)
        pow_cache = {}
        for m, c in f.terms.items():
            term = Poly.constant(self.target, c)
            for i, e in enumerate(m):
                if e:
                    key = (i, e)
                    p = pow_cache.get(key)
                    if p is None:
                        p = self.images[i] ** e
                        pow_cache[key] = p
                    term = term * p
            out = out + term
        return out

    def compose(self, other: "GradedHom") -> "GradedHom":
        """self after other (apply other first)."""
        if other.target != self.source:
            raise RingMismatch("homs do not compose")
        return GradedHom(other.source, self.target,
                         tuple(self.apply(img) for img in other.images))


def apply_hom(phi: GradedHom, f: Poly) -> Poly:
    return phi.apply(f)


def truncate_vars(f: Poly, n: int) -> Poly:
    """Kill variables beyond index n; result lives in the n-variable subring."""
    n = min(n, f.ring.nvars)
    sub = f.ring.subring(n)
    out = {}
    for m, c in f.terms.items():
        if any(m[n:]):
            continue
        out[m[:n]] = c
    return Poly(sub, out, _trusted=True)


def monicize(f: Poly, pivot: int):
    """Shift coordinates so f becomes monic in the pivot variable.

    Searches shifts x_i -> x_i - a_i * x_pivot deterministically over tuples of
    canonical field elements and returns (hom, unit, normalized image) where the
    image has coefficient exactly 1 on x_pivot^deg(f).
    """
    r = f.ring
    if f.is_zero():
        raise ZeroInput("cannot monicize the zero polynomial")
    d = homogeneous_degree(f)
    if d is NOT_HOMOGENEOUS:
        raise NotHomogeneous("monicize needs a homogeneous input")
    if not r.is_standard_graded():
        raise NotHomogeneous("monicize requires a standard-graded ring")
    if not 0 <= pivot < r.nvars:
        raise IndexError("pivot out of range")
    fld = r.field
    size = fld.size()
    if size is not None and size <= d:
        raise FieldTooSmall(f"need more than deg(f)={d} field elements, have {size}")
    n = r.nvars
    others = [i for i in range(n) if i != pivot]
    # coefficient of x_pivot^d in the shifted polynomial equals f evaluated at
    # x_pivot = 1, x_i = -a_i; search a grid large enough to contain a nonzero
    grid = list(itertools.islice(fld.canonical_sequence(), d + 1))
    for a_tuple in itertools.product(grid, repeat=len(others)):
        point = [fld.zero] * n
        point[pivot] = fld.one
        for i, a in zip(others, a_tuple):
            point[i] = fld.neg(a)
        u = f.evaluate(point)
        if not fld.is_zero(u):
            xp = Poly.variable(r, pivot)
            images = []
            for i in range(n):
                if i == pivot:
                    images.append(xp)
                else:
                    a = a_tuple[others.index(i)]
                    images.append(Poly.variable(r, i) - xp.scale(a))
            gamma = GradedHom(r, r, images)
            gf = gamma.apply(f).scale(fld.inv(u))
            return gamma, FieldElem(fld, u), gf
    raise FieldTooSmall("no shift produced a nonzero pivot coefficient")


_MONO_CACHE = {}


def monomials_of_degree(ring_: RingCtx, d: int):
    """All exponent tuples of weighted degree d, in a fixed deterministic order."""
    key = (ring_.degrees, d)
    out = _MONO_CACHE.get(key)
    if out is not None:
        return out
    degrees = ring_.degrees
    n = len(degrees)
    result = []

    def rec(i, remaining, prefix):
        if i == n:
            if remaining == 0:
                result.append(tuple(prefix))
            return
        step = degrees[i]
        emax = remaining // step
        for e in range(emax, -1, -1):
            prefix.append(e)
            rec(i + 1, remaining - e * step, prefix)
            prefix.pop()

    rec(0, d, [])
    result = tuple(result)
    _MONO_CACHE[key] = result
    return result


def random_homogeneous(ring_: RingCtx, d: int, seed, *, coeff_box=(-9, 9)) -> Poly:
    """Random homogeneous polynomial of weighted degree d, deterministic in seed."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    if isinstance(ring_.field, RationalFunctionField):
        raise UnsupportedField("random sampling over rational-function fields")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    fld = ring_.field
    out = {}
    for m in monomials_of_degree(ring_, d):
        c = fld.random(rng, coeff_box=coeff_box)
        if not fld.is_zero(c):
            out[m] = c
    return Poly(ring_, out, _trusted=True)
