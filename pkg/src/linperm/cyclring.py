"""The ring R_{q,s} = F_q[x]/(x^s - 1): arithmetic, units, factorization, CRT."""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass
from typing import Iterator, Sequence

from sympy import n_order

from . import _poly
from ._linalg import inverse_mod_p, pivot_columns_mod_p
from .errors import LevelMismatchError, NotUnitError
from .fields import FFElem, Field, TowerCtx, _find_root, random_irreducible


class QuotientRing:
    """F[x]/(modulus) over a finite field ``F``; elements are coefficient tuples
    of raw field elements with length ``deg(modulus)``."""

    def __init__(self, F: Field, modulus: Sequence):
        self.F = F
        self.modulus = _poly.monic(F, _poly.trim(F, list(modulus)))
        self.deg = len(self.modulus) - 1
        if self.deg < 1:
            raise ValueError("modulus must have positive degree")
        self.cyclic = self.modulus == [F.neg(F.one)] + [F.zero] * (self.deg - 1) + [F.one]
        self.zero = (F.zero,) * self.deg
        self.one = (F.one,) + (F.zero,) * (self.deg - 1)

    def reduce(self, poly) -> tuple:
        F = self.F
        if self.cyclic:
            out = [F.zero] * self.deg
            for i, c in enumerate(poly):
                out[i % self.deg] = F.add(out[i % self.deg], c)
            return tuple(out)
        r = _poly.mod(F, _poly.trim(F, list(poly)), self.modulus)
        return tuple(r) + (F.zero,) * (self.deg - len(r))

    def lift(self, a) -> list:
        return _poly.trim(self.F, a)

    def add(self, a, b):
        F = self.F
        return tuple(F.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        F = self.F
        return tuple(F.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        F = self.F
        return tuple(F.neg(x) for x in a)

    def scale(self, c, a):
        F = self.F
        return tuple(F.mul(c, x) for x in a)

    def mul(self, a, b):
        F = self.F
        if self.cyclic:
            s = self.deg
            out = [F.zero] * s
            for i, x in enumerate(a):
                if x == F.zero:
                    continue
                for j, y in enumerate(b):
                    if y != F.zero:
                        k = (i + j) % s
                        out[k] = F.add(out[k], F.mul(x, y))
            return tuple(out)
        return self.reduce(_poly.mul(F, self.lift(a), self.lift(b)))

    def is_unit(self, a) -> bool:
        return _poly.deg(_poly.gcd(self.F, self.lift(a), self.modulus)) == 0

    def inv(self, a):
        lifted = self.lift(a)
        if not lifted or _poly.deg(_poly.gcd(self.F, lifted, self.modulus)) != 0:
            raise NotUnitError("element is not a unit of the quotient ring")
        return self.reduce(_poly.inv_mod(self.F, lifted, self.modulus))

    def elements(self) -> Iterator[tuple]:
        F = self.F
        for code in range(F.size ** self.deg):
            out = []
            for _ in range(self.deg):
                code, r = divmod(code, F.size)
                out.append(F.from_code(r))
            yield tuple(out)

    def random(self, rng: random.Random):
        return tuple(self.F.random_raw(rng) for _ in range(self.deg))


@functools.lru_cache(maxsize=64)
def ring(ctx: TowerCtx) -> QuotientRing:
    F = ctx.base
    return QuotientRing(F, [F.neg(F.one)] + [F.zero] * (ctx.s - 1) + [F.one])


class RPoly:
    """An element of R_{q,s}; ``coeffs[i]`` is the coefficient of x^i."""

    __slots__ = ("ctx", "c")

    def __init__(self, ctx: TowerCtx, coeffs=()):
        F = ctx.base
        raw = [_coerce_base(F, x) for x in coeffs]
        if len(raw) > ctx.s:
            raise ValueError(f"R_(q,s) elements have {ctx.s} coefficients, got {len(raw)}; "
                             "use RPoly.from_poly to reduce mod x^s - 1")
        self.ctx = ctx
        self.c = tuple(raw) + (F.zero,) * (ctx.s - len(raw))

    @classmethod
    def _raw(cls, ctx: TowerCtx, c: tuple) -> RPoly:
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj.c = c
        return obj

    @classmethod
    def from_poly(cls, ctx: TowerCtx, coeffs) -> RPoly:
        """Reduce an arbitrary-degree polynomial modulo x^s - 1."""
        F = ctx.base
        return cls._raw(ctx, ring(ctx).reduce([_coerce_base(F, x) for x in coeffs]))

    @classmethod
    def zero(cls, ctx: TowerCtx) -> RPoly:
        return cls._raw(ctx, ring(ctx).zero)

    @classmethod
    def one(cls, ctx: TowerCtx) -> RPoly:
        return cls._raw(ctx, ring(ctx).one)

    @classmethod
    def x_power(cls, ctx: TowerCtx, k: int) -> RPoly:
        F = ctx.base
        c = [F.zero] * ctx.s
        c[k % ctx.s] = F.one
        return cls._raw(ctx, tuple(c))

    @classmethod
    def random(cls, ctx: TowerCtx, rng: random.Random) -> RPoly:
        return cls._raw(ctx, ring(ctx).random(rng))

    @classmethod
    def all(cls, ctx: TowerCtx) -> Iterator[RPoly]:
        for c in ring(ctx).elements():
            yield cls._raw(ctx, c)

    @property
    def coeffs(self) -> tuple[FFElem, ...]:
        F = self.ctx.base
        return tuple(FFElem(F, x) for x in self.c)

    def _other(self, other) -> tuple:
        if isinstance(other, RPoly):
            if other.ctx != self.ctx:
                raise LevelMismatchError("R_(q,s) elements from different contexts")
            return other.c
        if isinstance(other, (int, FFElem)):
            F = self.ctx.base
            return (_coerce_base(F, other),) + (F.zero,) * (self.ctx.s - 1)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RPoly._raw(self.ctx, ring(self.ctx).add(self.c, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RPoly._raw(self.ctx, ring(self.ctx).sub(self.c, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RPoly._raw(self.ctx, ring(self.ctx).sub(o, self.c))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RPoly._raw(self.ctx, ring(self.ctx).mul(self.c, o))

    __rmul__ = __mul__

    def __neg__(self):
        return RPoly._raw(self.ctx, ring(self.ctx).neg(self.c))

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = RPoly.one(self.ctx), self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, RPoly):
            return self.ctx == other.ctx and self.c == other.c
        if isinstance(other, int):
            return self == RPoly(self.ctx, [other])
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def __bool__(self):
        return self.c != ring(self.ctx).zero

    def __repr__(self):
        return f"RPoly({self.to_json()})"

    def __str__(self):
        F = self.ctx.base
        terms = []
        for i, x in enumerate(self.c):
            if x == F.zero:
                continue
            coef = str(x[0]) if F.degree == 1 else "(" + ",".join(map(str, x)) + ")"
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and coef == "1":
                terms.append(mono)
            else:
                terms.append(coef + mono)
        return " + ".join(reversed(terms)) or "0"

    def is_unit(self) -> bool:
        return is_unit(self)

    def inverse(self) -> RPoly:
        return RPoly._raw(self.ctx, ring(self.ctx).inv(self.c))

    def evaluate(self, x) -> FFElem:
        F = self.ctx.base
        return FFElem(F, _poly.evaluate(F, list(self.c), _coerce_base(F, x)))

    def to_json(self) -> list:
        return [list(x) for x in self.c]

    @classmethod
    def from_json(cls, ctx: TowerCtx, doc) -> RPoly:
        return cls(ctx, [tuple(x) if isinstance(x, list) else x for x in doc])


def _coerce_base(F: Field, x):
    if isinstance(x, FFElem):
        if x.field != F:
            raise LevelMismatchError(f"{x.level} element given where {F.name} expected")
        return x.c
    if isinstance(x, int):
        return F.scalar(x)
    x = tuple(int(v) % F.p for v in x)
    if len(x) != F.degree:
        raise ValueError(f"{F.name} coefficient vectors have length {F.degree}")
    return x


def rp_add(a: RPoly, b: RPoly) -> RPoly:
    return a + b


def rp_mul(a: RPoly, b: RPoly) -> RPoly:
    return a * b


def is_unit(c: RPoly) -> bool:
    """gcd(lift(c), x^s - 1) == 1 by the Euclidean algorithm."""
    return ring(c.ctx).is_unit(c.c)


# factorization of x^s - 1


@dataclass(frozen=True)
class CycloFactor:
    poly: tuple          # monic, raw base-field coefficients low to high
    mult: int
    degree: int


class CycloFactorization:
    """x^s - 1 = prod f_j^{s_j} over F_q, with CRT data for the local factors."""

    def __init__(self, ctx: TowerCtx, factors: Sequence[CycloFactor]):
        self.ctx = ctx
        self.factors = tuple(factors)

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)

    @property
    def q(self) -> int:
        return self.ctx.q

    @functools.cached_property
    def local_rings(self) -> tuple[QuotientRing, ...]:
        F = self.ctx.base
        return tuple(QuotientRing(F, _poly.power(F, list(f.poly), f.mult)) for f in self.factors)

    @functools.cached_property
    def _idempotents(self) -> tuple:
        F = self.ctx.base
        R = ring(self.ctx)
        out = []
        for L in self.local_rings:
            cof = _poly.divmod_(F, R.modulus, L.modulus)[0]
            e = _poly.mul(F, cof, _poly.inv_mod(F, cof, L.modulus))
            out.append(R.reduce(e))
        return tuple(out)

    def lift_local(self, j: int, raw) -> tuple:
        """The element of R_{q,s} that is ``raw`` in component j and 0 elsewhere."""
        R = ring(self.ctx)
        return R.mul(R.reduce(list(raw)), self._idempotents[j])

    def product(self) -> list:
        F = self.ctx.base
        acc = [F.one]
        for f in self.factors:
            acc = _poly.mul(F, acc, _poly.power(F, list(f.poly), f.mult))
        return acc

    def to_json(self) -> list:
        return [{"coeffs": [list(c) for c in f.poly], "mult": f.mult, "degree": f.degree}
                for f in self.factors]


def _split_p_part(s: int, p: int) -> tuple[int, int]:
    k = 0
    while s % p == 0:
        s //= p
        k += 1
    return k, s


class _Sub:
    """Embedding of a small field into a larger one, with pull-back."""

    def __init__(self, lo: Field, hi: Field, root):
        self.lo, self.hi = lo, hi
        rows, cur = [], hi.one
        for _ in range(lo.degree):
            rows.append(cur)
            cur = hi.mul(cur, root)
        self.rows = rows
        self.piv = pivot_columns_mod_p([list(r) for r in rows], hi.p)
        self.inv = inverse_mod_p([[r[c] for c in self.piv] for r in rows], hi.p)

    def embed(self, a):
        return self.hi._apply(self.rows, a)

    def restrict(self, b):
        p = self.hi.p
        sub = [b[c] for c in self.piv]
        out = tuple(sum(x * row[j] for x, row in zip(sub, self.inv)) % p for j in range(self.lo.degree))
        if self.embed(out) != tuple(b):
            raise ValueError("coefficient does not lie in the base field")
        return out


@functools.lru_cache(maxsize=64)
def factor_cyclotomic(ctx: TowerCtx) -> CycloFactorization:
    """Factor x^s - 1 over F_q through q-cyclotomic cosets.

    With s = p^k * s', x^s - 1 = (x^{s'} - 1)^{p^k}; each coset C of q mod s'
    yields the minimal polynomial prod_{c in C} (x - beta^c) of degree |C| for a
    primitive s'-th root of unity beta in F_{q^t}, t = ord_{s'}(q).
    """
    p, q, s = ctx.p, ctx.q, ctx.s
    F = ctx.base
    k, s1 = _split_p_part(s, p)
    mult = p ** k
    if s1 == 1:
        return CycloFactorization(ctx, [CycloFactor((F.neg(F.one), F.one), mult, 1)])
    t = n_order(q, s1)
    rng = random.Random(((ctx.seed or 0) << 16) ^ (s1 * 7919 + q))
    if t == 1:
        H, sub = F, None
    else:
        H = Field("scratch", p, random_irreducible(p, ctx.e * t, rng))
        sub = _Sub(F, H, _find_root(H, F.modulus, rng) if F.degree > 1 else H.scalar(0))
    beta = H.pow(H.primitive_raw, (H.size - 1) // s1)
    seen, factors = set(), []
    for c in range(s1):
        if c in seen:
            continue
        coset, x = [], c
        while x not in coset:
            coset.append(x)
            x = (x * q) % s1
        seen.update(coset)
        minpoly = [H.one]
        for j in coset:
            minpoly = _poly.mul(H, minpoly, [H.neg(H.pow(beta, j)), H.one])
        coeffs = tuple(cf if sub is None else sub.restrict(cf) for cf in minpoly)
        factors.append(CycloFactor(coeffs, mult, len(coset)))
    factors.sort(key=lambda f: (f.degree, [F.to_code(c) for c in reversed(f.poly)]))
    return CycloFactorization(ctx, factors)


def unit_group_size(fac: CycloFactorization) -> int:
    """|U(R_{q,s})| = prod_j (q^{d_j} - 1) q^{d_j (s_j - 1)}."""
    q = fac.q
    out = 1
    for f in fac:
        out *= (q ** f.degree - 1) * q ** (f.degree * (f.mult - 1))
    return out


def crt_split(c: RPoly, fac: CycloFactorization) -> list[tuple[FFElem, ...]]:
    F = c.ctx.base
    out = []
    for L in fac.local_rings:
        out.append(tuple(FFElem(F, x) for x in L.reduce(list(c.c))))
    return out


def crt_join(residues: Sequence[Sequence], fac: CycloFactorization) -> RPoly:
    ctx = fac.ctx
    F = ctx.base
    R = ring(ctx)
    if len(residues) != len(fac.local_rings):
        raise ValueError(f"expected {len(fac.local_rings)} residues, got {len(residues)}")
    acc = R.zero
    for res, L, e in zip(residues, fac.local_rings, fac._idempotents):
        raw = [_coerce_base(F, x) for x in res]
        if len(raw) != L.deg:
            raise ValueError(f"residue modulo a degree-{L.deg} factor must have {L.deg} coefficients")
        acc = R.add(acc, R.mul(R.reduce(raw), e))
    return RPoly._raw(ctx, acc)
