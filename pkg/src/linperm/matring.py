"""m x m matrices over R_{q,s}.

Storage rows and columns are indexed 0..m-1 in the order of the normal basis
alpha, alpha^q, ..., alpha^{q^{m-1}}.  The elementary-matrix constructors take
1-based labels j, k in 1..m that enter the closed forms as the exponent q^j;
since alpha^{q^m} = alpha, label j sits at storage index j mod m (so label m is
storage 0).
"""

from __future__ import annotations

import functools
import itertools
import random
from dataclasses import dataclass
from typing import Iterator, Sequence

from .cyclring import RPoly, factor_cyclotomic, ring
from .errors import LevelMismatchError, NotUnitError, SingularMatrixError
from .fields import TowerCtx

MAX_DET_SIZE = 6


def label_to_index(ctx: TowerCtx, j: int) -> int:
    if not 1 <= j <= ctx.m:
        raise ValueError(f"index {j} outside 1..{ctx.m}")
    return j % ctx.m


def index_to_label(ctx: TowerCtx, a: int) -> int:
    return a if a else ctx.m


class RMatrix:
    __slots__ = ("ctx", "rows")

    def __init__(self, ctx: TowerCtx, rows: Sequence[Sequence]):
        m = ctx.m
        if len(rows) != m or any(len(r) != m for r in rows):
            raise ValueError(f"expected an {m}x{m} matrix")
        out = []
        for r in rows:
            row = []
            for c in r:
                if isinstance(c, RPoly):
                    if c.ctx != ctx:
                        raise LevelMismatchError("matrix entry from a different context")
                    row.append(c)
                elif isinstance(c, int):
                    row.append(RPoly(ctx, [c]))
                else:
                    row.append(RPoly(ctx, c))
            out.append(tuple(row))
        self.ctx = ctx
        self.rows = tuple(out)

    @classmethod
    def _raw(cls, ctx: TowerCtx, rows) -> RMatrix:
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj.rows = tuple(tuple(r) for r in rows)
        return obj

    @classmethod
    def identity(cls, ctx: TowerCtx) -> RMatrix:
        one, zero = RPoly.one(ctx), RPoly.zero(ctx)
        return cls._raw(ctx, [[one if i == j else zero for j in range(ctx.m)] for i in range(ctx.m)])

    @classmethod
    def zero(cls, ctx: TowerCtx) -> RMatrix:
        zero = RPoly.zero(ctx)
        return cls._raw(ctx, [[zero] * ctx.m for _ in range(ctx.m)])

    @classmethod
    def random(cls, ctx: TowerCtx, rng: random.Random) -> RMatrix:
        return cls._raw(ctx, [[RPoly.random(ctx, rng) for _ in range(ctx.m)] for _ in range(ctx.m)])

    def __getitem__(self, idx) -> RPoly:
        i, j = idx
        return self.rows[i][j]

    def label(self, j: int, k: int) -> RPoly:
        """Entry addressed by 1-based labels (label j is storage j mod m)."""
        return self.rows[label_to_index(self.ctx, j)][label_to_index(self.ctx, k)]

    def _check(self, other: RMatrix):
        if not isinstance(other, RMatrix) or other.ctx != self.ctx:
            raise LevelMismatchError("matrices from different contexts")

    def __add__(self, other: RMatrix) -> RMatrix:
        return mat_add(self, other)

    def __sub__(self, other: RMatrix) -> RMatrix:
        self._check(other)
        return RMatrix._raw(self.ctx, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> RMatrix:
        return RMatrix._raw(self.ctx, [[-a for a in r] for r in self.rows])

    def __mul__(self, other) -> RMatrix:
        if isinstance(other, RMatrix):
            return mat_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other) -> RMatrix:
        return self.scale(other)

    def scale(self, c) -> RMatrix:
        return RMatrix._raw(self.ctx, [[a * c for a in r] for r in self.rows])

    def __eq__(self, other):
        return isinstance(other, RMatrix) and self.ctx == other.ctx and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "RMatrix([" + ", ".join("[" + ", ".join(str(a) for a in r) + "]" for r in self.rows) + "])"

    def det(self) -> RPoly:
        return det(self)

    def slice(self, i: int) -> list[list]:
        """The F_q-matrix G_i of x^i coefficients (raw base-field entries)."""
        return [[a.c[i] for a in r] for r in self.rows]

    def to_json(self) -> list:
        return [[a.to_json() for a in r] for r in self.rows]

    @classmethod
    def from_json(cls, ctx: TowerCtx, doc) -> RMatrix:
        return cls(ctx, [[RPoly.from_json(ctx, a) for a in r] for r in doc])


def mat_add(A: RMatrix, B: RMatrix) -> RMatrix:
    A._check(B)
    return RMatrix._raw(A.ctx, [[a + b for a, b in zip(r, s)] for r, s in zip(A.rows, B.rows)])


def mat_mul(A: RMatrix, B: RMatrix) -> RMatrix:
    A._check(B)
    ctx = A.ctx
    R = ring(ctx)
    m = ctx.m
    out = []
    for i in range(m):
        row = []
        for j in range(m):
            acc = R.zero
            for k in range(m):
                acc = R.add(acc, R.mul(A.rows[i][k].c, B.rows[k][j].c))
            row.append(RPoly._raw(ctx, acc))
        out.append(row)
    return RMatrix._raw(ctx, out)


def det(A: RMatrix) -> RPoly:
    """Laplace expansion along rows, memoised on the set of remaining columns.

    No division is used, so it is valid over R_{q,s} despite zero divisors.
    """
    ctx = A.ctx
    m = ctx.m
    if m > MAX_DET_SIZE:
        raise ValueError(f"determinant supported for m <= {MAX_DET_SIZE}")
    R = ring(ctx)
    F = ctx.base
    entries = [[a.c for a in r] for r in A.rows]

    @functools.lru_cache(maxsize=None)
    def minor(cols: tuple) -> tuple:
        row = m - len(cols)
        if not cols:
            return R.one
        acc = R.zero
        for pos, c in enumerate(cols):
            e = entries[row][c]
            if not any(x != F.zero for x in e):
                continue
            term = R.mul(e, minor(cols[:pos] + cols[pos + 1:]))
            acc = R.sub(acc, term) if pos % 2 else R.add(acc, term)
        return acc

    return RPoly._raw(ctx, minor(tuple(range(m))))


def is_invertible(A: RMatrix) -> bool:
    return det(A).is_unit()


def _is_upper(A: RMatrix) -> bool:
    return all(not A.rows[i][j] for i in range(A.ctx.m) for j in range(i))


def _is_diagonal(A: RMatrix) -> bool:
    return all(not A.rows[i][j] for i in range(A.ctx.m) for j in range(A.ctx.m) if i != j)


def classify(A: RMatrix) -> set[str]:
    d = det(A)
    if not d.is_unit():
        return set()
    tags = {"GL"}
    if d == 1:
        tags.add("SL")
    if _is_upper(A):
        tags.add("Borel")
    if _is_diagonal(A):
        tags.add("Diagonal")
    return tags


# elementary matrices (1-based labels)


def _coerce_poly(ctx: TowerCtx, c) -> RPoly:
    if isinstance(c, RPoly):
        return c
    if isinstance(c, int):
        return RPoly(ctx, [c])
    return RPoly(ctx, c)


def unit(ctx: TowerCtx, j: int, k: int, c=1) -> RMatrix:
    """c * O_jk."""
    a, b = label_to_index(ctx, j), label_to_index(ctx, k)
    c = _coerce_poly(ctx, c)
    zero = RPoly.zero(ctx)
    return RMatrix._raw(ctx, [[c if (i, t) == (a, b) else zero for t in range(ctx.m)] for i in range(ctx.m)])


def transvection(ctx: TowerCtx, j: int, k: int, c) -> RMatrix:
    """chi_jk(c) = I + c O_jk with j != k."""
    if j == k:
        raise ValueError("a transvection needs j != k")
    return RMatrix.identity(ctx) + unit(ctx, j, k, c)


def dilation(ctx: TowerCtx, l: int, c) -> RMatrix:
    """D_l(c): the identity with diagonal entry l replaced by the unit c."""
    c = _coerce_poly(ctx, c)
    if not c.is_unit():
        raise NotUnitError("dilation entry must be a unit of R_(q,s)")
    return RMatrix.identity(ctx) + unit(ctx, l, l, c - 1)


# samplers


def _random_unit(ctx: TowerCtx, rng: random.Random) -> RPoly:
    while True:
        c = RPoly.random(ctx, rng)
        if c.is_unit():
            return c


def sample_gl(ctx: TowerCtx, seed: int = 0) -> RMatrix:
    """Rejection sampling: random matrices until the determinant is a unit."""
    rng = random.Random(seed)
    while True:
        A = RMatrix.random(ctx, rng)
        if is_invertible(A):
            return A


def sample_sl(ctx: TowerCtx, seed: int = 0) -> RMatrix:
    """D_1(det^-1) * A for a GL sample A, which has determinant 1."""
    A = sample_gl(ctx, seed)
    return dilation(ctx, 1, det(A).inverse()) * A


def sample_borel(ctx: TowerCtx, seed: int = 0) -> RMatrix:
    rng = random.Random(seed)
    m = ctx.m
    zero = RPoly.zero(ctx)
    rows = [[_random_unit(ctx, rng) if i == j else RPoly.random(ctx, rng) if j > i else zero
             for j in range(m)] for i in range(m)]
    return RMatrix._raw(ctx, rows)


def sample_diag(ctx: TowerCtx, seed: int = 0) -> RMatrix:
    rng = random.Random(seed)
    m = ctx.m
    zero = RPoly.zero(ctx)
    rows = [[_random_unit(ctx, rng) if i == j else zero for j in range(m)] for i in range(m)]
    return RMatrix._raw(ctx, rows)


def all_matrices(ctx: TowerCtx) -> Iterator[RMatrix]:
    """Every matrix of M_m(R_{q,s}); only sensible for tiny parameters."""
    elems = list(RPoly.all(ctx))
    m = ctx.m
    for entries in itertools.product(elems, repeat=m * m):
        yield RMatrix._raw(ctx, [entries[i * m:(i + 1) * m] for i in range(m)])


# elementary decomposition


@dataclass(frozen=True)
class ElemFactor:
    """A transvection chi_jk(poly) or a dilation D_l(poly), with 1-based labels."""

    kind: str
    poly: RPoly
    j: int | None = None
    k: int | None = None
    l: int | None = None

    def matrix(self) -> RMatrix:
        ctx = self.poly.ctx
        if self.kind == "transvection":
            return transvection(ctx, self.j, self.k, self.poly)
        if self.kind == "dilation":
            return dilation(ctx, self.l, self.poly)
        raise ValueError(f"unknown factor kind {self.kind!r}")

    def to_json(self) -> dict:
        doc = {"kind": self.kind, "poly": self.poly.to_json()}
        if self.kind == "transvection":
            doc.update(j=self.j, k=self.k)
        else:
            doc["l"] = self.l
        return doc

    @classmethod
    def from_json(cls, ctx: TowerCtx, doc: dict) -> ElemFactor:
        poly = RPoly.from_json(ctx, doc["poly"])
        if doc["kind"] == "transvection":
            return cls("transvection", poly, j=int(doc["j"]), k=int(doc["k"]))
        return cls("dilation", poly, l=int(doc["l"]))


def product(factors: Sequence[ElemFactor], ctx: TowerCtx | None = None) -> RMatrix:
    """Left-to-right product of the factor matrices."""
    if ctx is None:
        if not factors:
            raise ValueError("empty factor list needs an explicit context")
        ctx = factors[0].poly.ctx
    acc = RMatrix.identity(ctx)
    for f in factors:
        acc = acc * f.matrix()
    return acc


def _local_sl_ops(L, M):
    """Reduce M in SL_m(L), L a local ring, to the identity by row transvections.

    Returns (ops, tail): ops are (a, b, c) meaning row a += c * row b applied in
    order, and tail is a list of (a, b, c) transvections whose product is the
    diagonal matrix left after elimination.  Then M = inv(ops) * tail.
    """
    m = len(M)
    M = [list(r) for r in M]
    F = L.F
    ops = []

    def nonzero(x):
        return any(v != F.zero for v in x)

    def row_add(a, b, c):
        if not nonzero(c):
            return
        ops.append((a, b, c))
        M[a] = [L.add(x, L.mul(c, y)) for x, y in zip(M[a], M[b])]

    for col in range(m):
        if not L.is_unit(M[col][col]):
            r = next((r for r in range(col + 1, m) if L.is_unit(M[r][col])), None)
            if r is None:
                raise SingularMatrixError("matrix is not invertible over a local component")
            row_add(col, r, L.one)
        pinv = L.inv(M[col][col])
        for r in range(m):
            if r != col and nonzero(M[r][col]):
                row_add(r, col, L.neg(L.mul(M[r][col], pinv)))
    # M is now diagonal with unit entries d_0..d_{m-1} whose product is 1
    tail = []
    d = [M[i][i] for i in range(m)]
    for i in range(m - 1):
        u = d[i]
        if u != L.one:
            tail.extend(_whitehead(L, i, i + 1, u))
            d[i + 1] = L.mul(d[i + 1], u)
            d[i] = L.one
    return ops, tail


def _whitehead(L, a, b, u):
    """Transvections (a, b, c) whose product is diag(u, u^-1) on rows a, b.

    diag(u, u^-1) = w(u) w(-1) with w(v) = e_ab(v) e_ba(-v^-1) e_ab(v).
    """
    uinv = L.inv(u)
    minus_one = L.neg(L.one)
    return [(a, b, u), (b, a, L.neg(uinv)), (a, b, u),
            (a, b, minus_one), (b, a, L.one), (a, b, minus_one)]


def decompose_elementary(A: RMatrix) -> list[ElemFactor]:
    """Factor an invertible matrix into elementary matrices, product left to right.

    The determinant is peeled off as a single dilation D_1(det A); the SL part
    is split by CRT into local rings F_q[x]/(f_j^{s_j}), reduced there by row
    transvections, and each local factor is lifted back as an element that
    vanishes in the other components.
    """
    ctx = A.ctx
    d = det(A)
    if not d.is_unit():
        raise SingularMatrixError("matrix is not invertible over R_(q,s)")
    factors: list[ElemFactor] = []
    B = A
    if d != 1:
        factors.append(ElemFactor("dilation", d, l=1))
        B = dilation(ctx, 1, d.inverse()) * A
    fac = factor_cyclotomic(ctx)
    m = ctx.m
    for jdx, L in enumerate(fac.local_rings):
        M = [[L.reduce(list(B.rows[i][t].c)) for t in range(m)] for i in range(m)]
        ops, tail = _local_sl_ops(L, M)
        # B_j = chi(-c_1) ... chi(-c_t) * tail
        seq = [(a, b, L.neg(c)) for a, b, c in ops] + tail
        for a, b, c in seq:
            poly = RPoly._raw(ctx, fac.lift_local(jdx, c))
            if poly:
                factors.append(ElemFactor("transvection", poly,
                                          j=index_to_label(ctx, a), k=index_to_label(ctx, b)))
    return factors
