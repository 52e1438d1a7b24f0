"""Finite field tower F_p < F_q < F_{q^m} < F_{q^n} with n = m*s.

Every level is stored as F_p[x]/(M(x)) for an irreducible M over the prime
field; an element is its coefficient vector over F_p.  Subfields are reached
through explicit embedding matrices (images of 1, r, r^2, ... for a root r of
the lower modulus in the upper level) and pulled back by a linear solve.
"""

from __future__ import annotations

import functools
import random
from typing import Iterable, Iterator, Sequence

from sympy import factorint, isprime

from . import _poly
from ._linalg import inverse_mod_p, pivot_columns_mod_p
from .errors import LevelMismatchError, NotInSubfieldError, SearchExhaustedError

LEVELS = ("prime", "base_q", "mid_qm", "top_qn")

_IRREDUCIBLE_ATTEMPTS = 20000


class _Zp:
    """F_p on plain ints, for polynomials with prime-field coefficients."""

    def __init__(self, p: int):
        self.p = p
        self.zero = 0
        self.one = 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in F_p")
        return pow(a, self.p - 2, self.p)


def _prime_factors(n: int) -> list[int]:
    return sorted(factorint(n))


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Rabin's test for a polynomial over F_p (coefficients low to high)."""
    Z = _Zp(p)
    f = _poly.trim(Z, [c % p for c in poly])
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    f = _poly.monic(Z, f)
    x = [0, 1]

    def frob_iter(k):
        h = x
        for _ in range(k):
            h = _poly.powmod(Z, h, p, f)
        return h

    if _poly.sub(Z, frob_iter(d), x):
        return False
    for r in _prime_factors(d):
        h = _poly.sub(Z, frob_iter(d // r), x)
        if _poly.deg(_poly.gcd(Z, h, f)) != 0:
            return False
    return True


def random_irreducible(p: int, d: int, rng: random.Random) -> tuple[int, ...]:
    """Monic irreducible polynomial of degree ``d`` over F_p by seeded search."""
    if d == 1:
        return (0, 1)
    for _ in range(_IRREDUCIBLE_ATTEMPTS):
        coeffs = [rng.randrange(p) for _ in range(d)] + [1]
        if coeffs[0] == 0:
            continue
        if is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise SearchExhaustedError(f"no irreducible polynomial of degree {d} over F_{p} "
                               f"found in {_IRREDUCIBLE_ATTEMPTS} attempts")


class Field:
    """F_p[x]/(modulus) with elements as coefficient tuples."""

    def __init__(self, name: str, p: int, modulus: Sequence[int]):
        modulus = tuple(c % p for c in modulus)
        if modulus[-1] != 1:
            raise ValueError("modulus must be monic")
        self.name = name
        self.p = p
        self.modulus = modulus
        self.degree = len(modulus) - 1
        self.size = p ** self.degree
        self.zero = (0,) * self.degree
        self.one = (1,) + (0,) * (self.degree - 1)
        d = self.degree
        # reduction rows: x^(d+k) mod modulus for k = 0 .. d-2
        red = []
        cur = [(-c) % p for c in modulus[:d]]
        for _ in range(max(d - 1, 0)):
            red.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [(c - top * mc) % p for c, mc in zip(cur, modulus[:d])]
        self._red = red
        self._frob = [self._identity_rows()]
        rows_p = [self.pow(self.basis(i), p) for i in range(d)]
        for _ in range(1, d):
            prev = self._frob[-1]
            self._frob.append([self._apply(rows_p, r) for r in prev])

    def __eq__(self, other):
        return (isinstance(other, Field) and self.name == other.name
                and self.p == other.p and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.name, self.p, self.modulus))

    def __repr__(self):
        return f"Field({self.name}, p={self.p}, modulus={list(self.modulus)})"

    def _identity_rows(self):
        return [self.basis(i) for i in range(self.degree)]

    def _apply(self, rows, a):
        p = self.p
        out = [0] * self.degree
        for ai, row in zip(a, rows):
            if ai:
                for j, v in enumerate(row):
                    if v:
                        out[j] += ai * v
        return tuple(x % p for x in out)

    # raw arithmetic on coefficient tuples

    def basis(self, i: int):
        return tuple(int(j == i) for j in range(self.degree))

    def scalar(self, c: int):
        return ((c % self.p),) + (0,) * (self.degree - 1)

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
        p, d = self.p, self.degree
        if d == 1:
            return ((a[0] * b[0]) % p,)
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        res = prod[:d]
        for k, c in enumerate(prod[d:]):
            if c % p:
                for t, r in enumerate(self._red[k]):
                    if r:
                        res[t] += c * r
        return tuple(x % p for x in res)

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero field element")
        Z = _Zp(self.p)
        inv = _poly.inv_mod(Z, list(a), list(self.modulus))
        return tuple(inv) + (0,) * (self.degree - len(inv))

    def pow(self, a, k: int):
        if k < 0:
            a, k = self.inv(a), -k
        result = self.one
        while k:
            if k & 1:
                result = self.mul(result, a)
            k >>= 1
            if k:
                a = self.mul(a, a)
        return result

    def frob(self, a, t: int):
        """``a ** (p ** t)`` via the precomputed F_p-linear Frobenius maps."""
        return self._apply(self._frob[t % self.degree], a)

    def scalar_mul(self, c: int, a):
        p = self.p
        return tuple((c * x) % p for x in a)

    # encoding and enumeration

    def to_code(self, a) -> int:
        code = 0
        for c in reversed(a):
            code = code * self.p + c
        return code

    def from_code(self, code: int):
        out = []
        for _ in range(self.degree):
            code, r = divmod(code, self.p)
            out.append(r)
        return tuple(out)

    def raw_elements(self) -> Iterator[tuple]:
        for code in range(self.size):
            yield self.from_code(code)

    def random_raw(self, rng: random.Random):
        return tuple(rng.randrange(self.p) for _ in range(self.degree))

    def order(self, a) -> int:
        if a == self.zero:
            raise ZeroDivisionError("zero has no multiplicative order")
        n = self.size - 1
        for r in _prime_factors(n) if n > 1 else []:
            while n % r == 0 and self.pow(a, n // r) == self.one:
                n //= r
        return n

    @functools.cached_property
    def primitive_raw(self):
        n = self.size - 1
        if n == 1:
            return self.one
        factors = _prime_factors(n)

        def is_primitive(g):
            return g != self.zero and all(self.pow(g, n // r) != self.one for r in factors)

        if self.degree > 1 and is_primitive(self.basis(1)):
            return self.basis(1)
        for code in range(1, self.size):
            g = self.from_code(code)
            if is_primitive(g):
                return g
        raise SearchExhaustedError("no primitive element found")  # pragma: no cover

    # FFElem helpers

    def __call__(self, coeffs) -> FFElem:
        if isinstance(coeffs, FFElem):
            if coeffs.field != self:
                raise LevelMismatchError(f"{coeffs.level} element given where {self.name} expected")
            return coeffs
        if isinstance(coeffs, int):
            return FFElem(self, self.scalar(coeffs))
        coeffs = tuple(int(c) % self.p for c in coeffs)
        if len(coeffs) > self.degree:
            raise ValueError(f"{self.name} elements have {self.degree} coefficients, got {len(coeffs)}")
        return FFElem(self, coeffs + (0,) * (self.degree - len(coeffs)))

    def elements(self) -> Iterator[FFElem]:
        for raw in self.raw_elements():
            yield FFElem(self, raw)

    def random(self, rng: random.Random) -> FFElem:
        return FFElem(self, self.random_raw(rng))

    @property
    def gen(self) -> FFElem:
        """Class of x in F_p[x]/(modulus)."""
        if self.degree == 1:
            return FFElem(self, ((-self.modulus[0]) % self.p,))
        return FFElem(self, self.basis(1))

    @property
    def primitive(self) -> FFElem:
        return FFElem(self, self.primitive_raw)


class FFElem:
    """An element of one level of a tower."""

    __slots__ = ("field", "c")

    def __init__(self, field: Field, c: tuple):
        self.field = field
        self.c = c

    @property
    def level(self) -> str:
        return self.field.name

    @property
    def coeffs(self) -> tuple:
        return self.c

    def _coerce(self, other) -> tuple:
        if isinstance(other, FFElem):
            if other.field != self.field:
                raise LevelMismatchError(f"cannot combine {self.level} and {other.level} elements")
            return other.c
        if isinstance(other, int):
            return self.field.scalar(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FFElem(self.field, self.field.add(self.c, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FFElem(self.field, self.field.sub(self.c, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FFElem(self.field, self.field.sub(o, self.c))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FFElem(self.field, self.field.mul(self.c, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FFElem(self.field, self.field.mul(self.c, self.field.inv(o)))

    def __neg__(self):
        return FFElem(self.field, self.field.neg(self.c))

    def __pow__(self, k: int):
        return FFElem(self.field, self.field.pow(self.c, k))

    def inverse(self) -> FFElem:
        return FFElem(self.field, self.field.inv(self.c))

    def __eq__(self, other):
        if isinstance(other, FFElem):
            return self.field == other.field and self.c == other.c
        if isinstance(other, int):
            return self.c == self.field.scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.name, self.c))

    def __bool__(self):
        return any(self.c)

    def __repr__(self):
        return f"FFElem({self.level}, {list(self.c)})"

    def to_json(self) -> dict:
        return {"level": self.level, "coeffs": list(self.c)}


def _find_root(L: Field, poly: Sequence[int], rng: random.Random):
    """A root in ``L`` of an irreducible F_p-polynomial whose degree divides deg L.

    Cantor-Zassenhaus equal-degree splitting down to a linear factor.
    """
    g = [L.scalar(c) for c in poly]
    g = _poly.monic(L, _poly.trim(L, g))
    d = _poly.deg(g)
    if d < 1 or L.degree % d:
        raise ValueError(f"degree-{d} polynomial does not split in a degree-{L.degree} field")
    p = L.p
    for _ in range(1000 * max(d, 1)):
        if _poly.deg(g) == 1:
            return L.neg(L.mul(g[0], L.inv(g[1])))
        delta = L.random_raw(rng)
        if p == 2:
            cur = _poly.mod(L, [L.zero, delta], g)
            acc = cur
            for _ in range(L.degree - 1):
                cur = _poly.mod(L, _poly.mul(L, cur, cur), g)
                acc = _poly.add(L, acc, cur)
            cand = _poly.gcd(L, g, acc)
        else:
            h = _poly.powmod(L, [delta, L.one], (L.size - 1) // 2, g)
            cand = _poly.gcd(L, g, _poly.sub(L, h, [L.one]))
        dc = _poly.deg(cand)
        if 0 < dc < _poly.deg(g):
            other = _poly.monic(L, _poly.divmod_(L, g, cand)[0])
            g = cand if dc <= _poly.deg(other) else other
    raise SearchExhaustedError("root finding did not converge")


_EMBED_PAIRS = (("base_q", "mid_qm"), ("mid_qm", "top_qn"))


class TowerCtx:
    """Immutable tower F_p < F_q < F_{q^m} < F_{q^{ms}}.

    ``n`` is the number of linearized coefficients (m*s); ``degree_over_prime``
    is e*m*s, the top degree over F_p.
    """

    def __init__(self, p: int, e: int, m: int, s: int, moduli: dict, roots: dict,
                 seed: int | None = None, primitives: dict | None = None):
        if not isprime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if min(e, m, s) < 1:
            raise ValueError("e, m, s must be positive")
        self.p, self.e, self.m, self.s = p, e, m, s
        self.q = p ** e
        self.n = m * s
        self.degree_over_prime = e * m * s
        self.seed = seed
        degrees = {"prime": 1, "base_q": e, "mid_qm": e * m, "top_qn": e * m * s}
        self._fields = {}
        for lvl in LEVELS:
            mod = tuple(int(c) % p for c in moduli[lvl])
            if len(mod) - 1 != degrees[lvl]:
                raise ValueError(f"{lvl} modulus has degree {len(mod) - 1}, expected {degrees[lvl]}")
            if not is_irreducible(mod, p):
                raise ValueError(f"{lvl} modulus {list(mod)} is not irreducible over F_{p}")
            self._fields[lvl] = Field(lvl, p, mod)
        self._roots = {}
        self._embed = {}
        for lvl in LEVELS:
            F = self._fields[lvl]
            self._embed[(lvl, lvl)] = F._identity_rows()
            if lvl != "prime":
                self._embed[("prime", lvl)] = [F.one]
        for lo, hi in _EMBED_PAIRS:
            L, H = self._fields[lo], self._fields[hi]
            r = tuple(int(c) % p for c in roots[(lo, hi)])
            if len(r) != H.degree or _poly.evaluate(H, [H.scalar(c) for c in L.modulus], r) != H.zero:
                raise ValueError(f"recorded root for {lo}->{hi} is not a root of the {lo} modulus")
            self._roots[(lo, hi)] = r
            rows, cur = [], H.one
            for _ in range(L.degree):
                rows.append(cur)
                cur = H.mul(cur, r)
            self._embed[(lo, hi)] = rows
        T = self._fields["top_qn"]
        self._embed[("base_q", "top_qn")] = [
            T._apply(self._embed[("mid_qm", "top_qn")], row) for row in self._embed[("base_q", "mid_qm")]
        ]
        self._pullback = {}
        for (lo, hi), rows in self._embed.items():
            piv = pivot_columns_mod_p([list(r) for r in rows], p)
            sub = [[row[c] for c in piv] for row in rows]
            inv = inverse_mod_p(sub, p)
            self._pullback[(lo, hi)] = (piv, inv)
        self._primitives = {}
        for lvl, raw in (primitives or {}).items():
            F = self._fields[lvl]
            g = tuple(int(c) % p for c in raw)
            if F.order(g) != F.size - 1:
                raise ValueError(f"registered {lvl} element is not primitive")
            self._primitives[lvl] = g
        self._key = (p, e, m, s, tuple(self._fields[l].modulus for l in LEVELS),
                     tuple(self._roots[k] for k in _EMBED_PAIRS))

    def __eq__(self, other):
        return isinstance(other, TowerCtx) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"TowerCtx(p={self.p}, e={self.e}, m={self.m}, s={self.s})"

    def field(self, level: str) -> Field:
        try:
            return self._fields[level]
        except KeyError:
            raise ValueError(f"unknown level {level!r}; expected one of {LEVELS}") from None

    @property
    def prime(self) -> Field:
        return self._fields["prime"]

    @property
    def base(self) -> Field:
        return self._fields["base_q"]

    @property
    def mid(self) -> Field:
        return self._fields["mid_qm"]

    @property
    def top(self) -> Field:
        return self._fields["top_qn"]

    def primitive(self, level: str) -> FFElem:
        F = self.field(level)
        return FFElem(F, self._primitives.get(level, F.primitive_raw))

    def elem(self, level: str, coeffs) -> FFElem:
        return self.field(level)(coeffs)

    # embeddings

    def embed_raw(self, raw, lo: str, hi: str):
        if lo == hi:
            return raw
        rows = self._embed.get((lo, hi))
        if rows is None:
            raise LevelMismatchError(f"cannot embed {lo} into {hi}")
        return self._fields[hi]._apply(rows, raw)

    def embed(self, a: FFElem, level: str) -> FFElem:
        self._check_owned(a)
        return FFElem(self._fields[level], self.embed_raw(a.c, a.level, level))

    def restrict_raw(self, raw, hi: str, lo: str):
        if lo == hi:
            return raw
        key = (lo, hi)
        if key not in self._pullback:
            raise LevelMismatchError(f"{lo} is not a subfield level of {hi}")
        piv, inv = self._pullback[key]
        p = self.p
        sub = [raw[c] for c in piv]
        out = [0] * len(inv)
        for x, row in zip(sub, inv):
            if x:
                for j, v in enumerate(row):
                    out[j] += x * v
        out = tuple(v % p for v in out)
        if self.embed_raw(out, lo, hi) != tuple(raw):
            raise NotInSubfieldError(f"element of {hi} does not lie in {lo}")
        return out

    def restrict(self, a: FFElem, level: str) -> FFElem:
        """Pull an element back into a lower level; raises if it is not there."""
        self._check_owned(a)
        return FFElem(self._fields[level], self.restrict_raw(a.c, a.level, level))

    def contains(self, a: FFElem, level: str) -> bool:
        """Subfield membership as a Frobenius fixed point."""
        self._check_owned(a)
        t = self._fields[level].degree
        return a.field.frob(a.c, t) == a.c

    def _check_owned(self, a: FFElem):
        if self._fields.get(a.level) != a.field:
            raise LevelMismatchError(f"{a!r} does not belong to this tower")

    # Frobenius and trace

    def frob_q_raw(self, raw, level: str, k: int):
        return self._fields[level].frob(raw, self.e * k)

    def frobenius_q(self, a: FFElem, k: int) -> FFElem:
        self._check_owned(a)
        if k < 0:
            raise ValueError("Frobenius exponent must be non-negative")
        return FFElem(a.field, a.field.frob(a.c, self.e * k))

    def trace(self, a: FFElem, from_level: str, to_level: str) -> FFElem:
        self._check_owned(a)
        if a.level != from_level:
            raise LevelMismatchError(f"element is at {a.level}, not {from_level}")
        i, j = LEVELS.index(from_level), LEVELS.index(to_level)
        if j > i:
            raise ValueError(f"{to_level} is not below {from_level}")
        F = a.field
        t = self._fields[to_level].degree
        acc = F.zero
        for k in range(F.degree // t):
            acc = F.add(acc, F.frob(a.c, t * k))
        return FFElem(self._fields[to_level], self.restrict_raw(acc, from_level, to_level))

    def log(self, a: FFElem) -> int | None:
        """Discrete log to the registered primitive element (small levels only)."""
        self._check_owned(a)
        if not a:
            return None
        table = _log_table(a.field, self.primitive(a.level).c)
        if table is None:
            return None
        return table[a.c]

    # serialization

    def to_json(self) -> dict:
        return {
            "p": self.p, "e": self.e, "m": self.m, "s": self.s, "seed": self.seed,
            "moduli": {lvl: list(self._fields[lvl].modulus) for lvl in LEVELS},
            "embeddings": {f"{lo}->{hi}": list(self._roots[(lo, hi)]) for lo, hi in _EMBED_PAIRS},
            "primitive": {lvl: list(c) for lvl, c in self._primitives.items()},
        }

    @classmethod
    def from_json(cls, doc: dict) -> TowerCtx:
        roots = {}
        for lo, hi in _EMBED_PAIRS:
            roots[(lo, hi)] = doc["embeddings"][f"{lo}->{hi}"]
        return cls(int(doc["p"]), int(doc["e"]), int(doc["m"]), int(doc["s"]),
                   moduli=doc["moduli"], roots=roots, seed=doc.get("seed"),
                   primitives=doc.get("primitive") or None)

    @property
    def ctx_id(self) -> str:
        import hashlib
        import json
        blob = json.dumps({k: v for k, v in self.to_json().items() if k not in ("seed", "primitive")},
                          sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()[:12]


@functools.lru_cache(maxsize=32)
def _log_table(F: Field, g: tuple):
    if F.size > 1 << 16:
        return None
    table = {}
    cur = F.one
    for k in range(F.size - 1):
        table[cur] = k
        cur = F.mul(cur, g)
    return table


def make_tower(p: int, e: int, m: int, s: int, seed: int = 0,
               moduli: dict | None = None, primitives: dict | None = None) -> TowerCtx:
    """Build a tower by seeded search for irreducible moduli and embedding roots.

    ``moduli`` may pin the defining polynomial of any level (coefficients low to
    high); the remaining levels are drawn in the order base, mid, top.  A level
    whose degree equals the one below it reuses that modulus.
    """
    if not isprime(p):
        raise ValueError(f"characteristic {p} is not prime")
    if min(e, m, s) < 1:
        raise ValueError("e, m, s must be positive")
    rng = random.Random(seed)
    moduli = dict(moduli or {})
    degrees = {"prime": 1, "base_q": e, "mid_qm": e * m, "top_qn": e * m * s}
    chosen = {"prime": (0, 1)}
    for lower, lvl in zip(LEVELS, LEVELS[1:]):
        if lvl in moduli:
            chosen[lvl] = tuple(int(c) % p for c in moduli[lvl])
        elif degrees[lvl] == degrees[lower]:
            chosen[lvl] = chosen[lower]
        else:
            chosen[lvl] = random_irreducible(p, degrees[lvl], rng)
    if "prime" in moduli and tuple(moduli["prime"]) != (0, 1):
        chosen["prime"] = tuple(int(c) % p for c in moduli["prime"])
    roots = {}
    for lo, hi in _EMBED_PAIRS:
        H = Field(hi, p, chosen[hi])
        if chosen[lo] == chosen[hi]:
            roots[(lo, hi)] = H.gen.c
        elif degrees[lo] == 1:
            roots[(lo, hi)] = H.scalar(-chosen[lo][0])
        else:
            roots[(lo, hi)] = _find_root(H, chosen[lo], rng)
    return TowerCtx(p, e, m, s, chosen, roots, seed=seed, primitives=primitives)


# functional API mirroring the element operators


def _same(a: FFElem, b: FFElem):
    if a.field != b.field:
        raise LevelMismatchError(f"cannot combine {a.level} and {b.level} elements")


def add(a: FFElem, b: FFElem) -> FFElem:
    _same(a, b)
    return a + b


def mul(a: FFElem, b: FFElem) -> FFElem:
    _same(a, b)
    return a * b


def neg(a: FFElem) -> FFElem:
    return -a


def inv(a: FFElem) -> FFElem:
    return a.inverse()


def power(a: FFElem, k: int) -> FFElem:
    return a ** k


def frobenius_q(ctx: TowerCtx, a: FFElem, k: int) -> FFElem:
    return ctx.frobenius_q(a, k)


def trace(ctx: TowerCtx, a: FFElem, from_level: str, to_level: str) -> FFElem:
    return ctx.trace(a, from_level, to_level)


def elements(F: Field) -> Iterable[FFElem]:
    return F.elements()
