"""Linearized polynomials sum a_i x^{q^i} over F_{q^n} with coefficients in F_{q^m}."""

from __future__ import annotations

import functools
import os
import random
from typing import Sequence

import numpy as np

from ._linalg import rank_mod_p
from .errors import BruteForceBoundError, LevelMismatchError
from .fields import FFElem, TowerCtx

DEFAULT_BRUTE_BOUND = 1 << 20


class LinPoly:
    """``a[i]`` is the coefficient of x^{q^i}, for i < n = m*s."""

    __slots__ = ("ctx", "a")

    def __init__(self, ctx: TowerCtx, coeffs: Sequence = ()):
        F = ctx.mid
        raw = []
        for x in coeffs:
            if isinstance(x, FFElem):
                if x.field != F:
                    raise LevelMismatchError(f"linearized coefficients must be mid_qm, got {x.level}")
                raw.append(x.c)
            else:
                raw.append(F(x).c)
        if len(raw) > ctx.n:
            raise ValueError(f"expected at most {ctx.n} coefficients, got {len(raw)}")
        self.ctx = ctx
        self.a = tuple(raw) + (F.zero,) * (ctx.n - len(raw))

    @classmethod
    def _raw(cls, ctx: TowerCtx, a: tuple) -> LinPoly:
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj.a = a
        return obj

    @classmethod
    def zero(cls, ctx: TowerCtx) -> LinPoly:
        return cls._raw(ctx, (ctx.mid.zero,) * ctx.n)

    @classmethod
    def identity(cls, ctx: TowerCtx) -> LinPoly:
        return cls.monomial(ctx, 0)

    @classmethod
    def monomial(cls, ctx: TowerCtx, i: int, c=1) -> LinPoly:
        """c * x^{q^i}, with i reduced mod n."""
        F = ctx.mid
        a = [F.zero] * ctx.n
        a[i % ctx.n] = F(c).c if not isinstance(c, FFElem) else c.c
        return cls(ctx, [FFElem(F, x) for x in a])

    @classmethod
    def random(cls, ctx: TowerCtx, rng: random.Random) -> LinPoly:
        return cls._raw(ctx, tuple(ctx.mid.random_raw(rng) for _ in range(ctx.n)))

    @property
    def coeffs(self) -> tuple[FFElem, ...]:
        return tuple(FFElem(self.ctx.mid, x) for x in self.a)

    def _check(self, other: LinPoly):
        if not isinstance(other, LinPoly) or other.ctx != self.ctx:
            raise LevelMismatchError("linearized polynomials from different contexts")

    def __add__(self, other: LinPoly) -> LinPoly:
        return lp_add(self, other)

    def __sub__(self, other: LinPoly) -> LinPoly:
        self._check(other)
        F = self.ctx.mid
        return LinPoly._raw(self.ctx, tuple(F.sub(x, y) for x, y in zip(self.a, other.a)))

    def __neg__(self) -> LinPoly:
        F = self.ctx.mid
        return LinPoly._raw(self.ctx, tuple(F.neg(x) for x in self.a))

    def __matmul__(self, other: LinPoly) -> LinPoly:
        """``f @ g`` is the composition f(g(x))."""
        return lp_compose(self, other)

    def __call__(self, x: FFElem) -> FFElem:
        return evaluate(self, x)

    def __eq__(self, other):
        return isinstance(other, LinPoly) and self.ctx == other.ctx and self.a == other.a

    def __hash__(self):
        return hash(self.a)

    def __bool__(self):
        return any(any(x) for x in self.a)

    def __repr__(self):
        return f"LinPoly({[list(x) for x in self.a]})"

    def scale(self, c: FFElem) -> LinPoly:
        """Left multiplication by a constant of F_{q^m} (or of F_q, embedded)."""
        ctx = self.ctx
        if c.field == ctx.base:
            c = ctx.embed(c, "mid_qm")
        elif c.field != ctx.mid:
            raise LevelMismatchError(f"cannot scale by a {c.level} element")
        F = ctx.mid
        return LinPoly._raw(ctx, tuple(F.mul(c.c, x) for x in self.a))

    def to_json(self) -> dict:
        return {"ctx_id": self.ctx.ctx_id, "coeffs": [list(x) for x in self.a]}

    @classmethod
    def from_json(cls, ctx: TowerCtx, doc) -> LinPoly:
        coeffs = doc["coeffs"] if isinstance(doc, dict) else doc
        if isinstance(doc, dict) and doc.get("ctx_id") not in (None, ctx.ctx_id):
            raise LevelMismatchError("polynomial was serialized against a different tower")
        return cls(ctx, coeffs)


def evaluate(f: LinPoly, x: FFElem) -> FFElem:
    """sum a_i x^{q^i} on the top field, by iterated q-Frobenius."""
    ctx = f.ctx
    T = ctx.top
    if x.field != T:
        raise LevelMismatchError(f"evaluation point must be top_qn, got {x.level}")
    acc, cur = T.zero, x.c
    for i, a in enumerate(f.a):
        if i:
            cur = ctx.frob_q_raw(cur, "top_qn", 1)
        if any(a):
            acc = T.add(acc, T.mul(ctx.embed_raw(a, "mid_qm", "top_qn"), cur))
    return FFElem(T, acc)


eval_ = evaluate


def lp_add(f: LinPoly, g: LinPoly) -> LinPoly:
    f._check(g)
    F = f.ctx.mid
    return LinPoly._raw(f.ctx, tuple(F.add(x, y) for x, y in zip(f.a, g.a)))


def lp_compose(f: LinPoly, g: LinPoly) -> LinPoly:
    """(f o g)_k = sum_{i+j = k mod n} a_i b_j^{q^i}."""
    f._check(g)
    ctx = f.ctx
    F, n, m = ctx.mid, ctx.n, ctx.m
    out = [F.zero] * n
    for i, a in enumerate(f.a):
        if not any(a):
            continue
        for j, b in enumerate(g.a):
            if any(b):
                k = (i + j) % n
                out[k] = F.add(out[k], F.mul(a, ctx.frob_q_raw(b, "mid_qm", i % m)))
    return LinPoly._raw(ctx, tuple(out))


def split_blocks(f: LinPoly) -> list[list[FFElem]]:
    """Block i holds the coefficients of g_i(x) = sum_r a_{im+r} x^{q^r}."""
    m = f.ctx.m
    c = f.coeffs
    return [list(c[i * m:(i + 1) * m]) for i in range(f.ctx.s)]


def join_blocks(ctx: TowerCtx, blocks: Sequence[Sequence]) -> LinPoly:
    if len(blocks) != ctx.s or any(len(b) != ctx.m for b in blocks):
        raise ValueError(f"expected {ctx.s} blocks of length {ctx.m}")
    return LinPoly(ctx, [x for b in blocks for x in b])


def _top_prime_basis(ctx: TowerCtx):
    T = ctx.top
    return [T.basis(i) for i in range(T.degree)]


def is_permutation(f: LinPoly) -> bool:
    """f is F_p-linear on F_{q^n}; it permutes iff its matrix on an F_p-basis is invertible.

    F_p-rank equals the F_q-rank condition: both say the kernel is trivial.
    """
    ctx = f.ctx
    T = ctx.top
    rows = [evaluate(f, FFElem(T, b)).c for b in _top_prime_basis(ctx)]
    return rank_mod_p(rows, ctx.p) == T.degree


def brute_bound() -> int:
    raw = os.environ.get("LINPERM_BRUTE_BOUND")
    return int(raw) if raw else DEFAULT_BRUTE_BOUND


@functools.lru_cache(maxsize=8)
def _tables(T, g: tuple):
    """exp/log tables of the top field as numpy arrays indexed by element codes."""
    N = T.size
    codes = np.empty(N - 1, dtype=np.int64)
    cur = T.one
    for k in range(N - 1):
        codes[k] = T.to_code(cur)
        cur = T.mul(cur, g)
    log = np.full(N, -1, dtype=np.int64)
    log[codes] = np.arange(N - 1, dtype=np.int64)
    # additive structure: code of a vector from digit arrays
    weights = T.p ** np.arange(T.degree, dtype=np.int64)
    digits = (np.arange(N, dtype=np.int64)[:, None] // weights[None, :]) % T.p
    return codes, log, digits, weights


def is_permutation_bruteforce(f: LinPoly, bound: int | None = None) -> bool:
    """Evaluate f at every element of F_{q^n} and look for a repeated value.

    Independent of the rank test: it multiplies through discrete logs and adds
    base-p digit vectors.
    """
    ctx = f.ctx
    T = ctx.top
    bound = brute_bound() if bound is None else bound
    if T.size > bound:
        raise BruteForceBoundError(f"field has {T.size} elements, exhaustive bound is {bound}")
    N, p, order = T.size, T.p, T.size - 1
    codes, log, digits, weights = _tables(T, T.primitive_raw)
    xs = np.arange(N, dtype=np.int64)
    lx = log[xs]
    acc = np.zeros((N, T.degree), dtype=np.int64)
    for i, a in enumerate(f.a):
        if not any(a):
            continue
        la = int(log[T.to_code(ctx.embed_raw(a, "mid_qm", "top_qn"))])
        mult = pow(ctx.q, i, order) if order > 1 else 0
        # a * x^{q^i}: log = la + q^i * log x, and zero stays zero
        val = np.where(lx >= 0, codes[(la + mult * np.maximum(lx, 0)) % order], 0)
        acc = (acc + digits[val]) % p
    values = acc @ weights
    return np.unique(values).size == N
