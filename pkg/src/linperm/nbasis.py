"""Normal elements, dual normal bases and self-dual normal bases of F_{q^m}/F_q."""

from __future__ import annotations

import random
from dataclasses import dataclass

from ._linalg import rank_mod_p, solve
from .errors import LevelMismatchError, NotNormalError, SearchExhaustedError
from .fields import FFElem, TowerCtx

_EXHAUSTIVE_LIMIT = 1 << 16
_RANDOM_ATTEMPTS = 20000


@dataclass(frozen=True)
class NormalPair:
    """A normal element ``alpha`` of the middle field and its dual generator ``u``."""

    ctx: TowerCtx
    alpha: FFElem
    u: FFElem
    self_dual: bool = False

    @property
    def m(self) -> int:
        return self.ctx.m

    def alpha_conj(self, i: int) -> FFElem:
        """alpha^{q^i}, exponent taken mod m."""
        return self.ctx.frobenius_q(self.alpha, i % self.ctx.m)

    def u_conj(self, i: int) -> FFElem:
        return self.ctx.frobenius_q(self.u, i % self.ctx.m)

    def to_json(self) -> dict:
        return {"alpha": list(self.alpha.c), "u": list(self.u.c), "self_dual": self.self_dual}

    @classmethod
    def from_json(cls, ctx: TowerCtx, doc: dict) -> NormalPair:
        pair = cls(ctx, ctx.mid(doc["alpha"]), ctx.mid(doc["u"]), bool(doc.get("self_dual", False)))
        if gram_matrix(ctx, pair.alpha, pair.u) != _identity(ctx):
            raise NotNormalError("stored pair is not a dual pair")
        return pair


def _check_mid(ctx: TowerCtx, a: FFElem):
    if a.field != ctx.mid:
        raise LevelMismatchError(f"expected a mid_qm element, got {a.level}")


def _conjugates(ctx: TowerCtx, a: FFElem) -> list[FFElem]:
    return [ctx.frobenius_q(a, i) for i in range(ctx.m)]


def is_normal(ctx: TowerCtx, alpha: FFElem) -> bool:
    """The m conjugates alpha^{q^i} are F_q-independent.

    Tested over F_p: with b_1..b_e an F_p-basis of F_q, the e*m products
    b_t * alpha^{q^i} must have full F_p-rank e*m.
    """
    _check_mid(ctx, alpha)
    F = ctx.mid
    base = [ctx.embed(ctx.base(ctx.base.basis(t)), "mid_qm").c for t in range(ctx.e)]
    rows = [F.mul(b, c.c) for c in _conjugates(ctx, alpha) for b in base]
    return rank_mod_p(rows, ctx.p) == F.degree


def _trace_raw(ctx: TowerCtx, raw) -> tuple:
    return ctx.trace(FFElem(ctx.mid, raw), "mid_qm", "base_q").c


def gram_matrix(ctx: TowerCtx, alpha: FFElem, u: FFElem) -> list[list[FFElem]]:
    """Entry (i, j) is Tr(alpha^{q^i} u^{q^j}) in F_q."""
    A, U = _conjugates(ctx, alpha), _conjugates(ctx, u)
    return [[ctx.trace(a * b, "mid_qm", "base_q") for b in U] for a in A]


def _identity(ctx: TowerCtx):
    B = ctx.base
    return [[B(int(i == j)) for j in range(ctx.m)] for i in range(ctx.m)]


def dual_basis(ctx: TowerCtx, alpha: FFElem) -> NormalPair:
    """Solve for u = sum y_k alpha^{q^k} with Tr(alpha^{q^i} u) = delta_{i0}.

    The remaining duality relations follow by applying Frobenius.
    """
    _check_mid(ctx, alpha)
    if not is_normal(ctx, alpha):
        raise NotNormalError("element is not normal over F_q")
    m = ctx.m
    B = ctx.base
    conj = _conjugates(ctx, alpha)
    T = [[ctx.trace(conj[i] * conj[k], "mid_qm", "base_q").c for k in range(m)] for i in range(m)]
    rhs = [B.one] + [B.zero] * (m - 1)
    y = solve(B, T, rhs)
    if y is None:  # pragma: no cover - T is invertible for a normal element
        raise NotNormalError("trace form is degenerate on the conjugates")
    u = ctx.mid.zero
    for yk, ck in zip(y, conj):
        u = ctx.mid.add(u, ctx.mid.mul(ctx.embed_raw(yk, "base_q", "mid_qm"), ck.c))
    u = FFElem(ctx.mid, u)
    if gram_matrix(ctx, alpha, u) != _identity(ctx):  # pragma: no cover
        raise NotNormalError("dual basis failed verification")
    return NormalPair(ctx, alpha, u, u == alpha)


def _candidates(ctx: TowerCtx, seed: int):
    """Seeded order over nonzero mid elements: full shuffle when small, else random draws."""
    F = ctx.mid
    rng = random.Random(seed)
    if F.size <= _EXHAUSTIVE_LIMIT:
        codes = list(range(1, F.size))
        rng.shuffle(codes)
        for c in codes:
            yield FFElem(F, F.from_code(c))
        return
    for _ in range(_RANDOM_ATTEMPTS):
        raw = F.random_raw(rng)
        if raw != F.zero:
            yield FFElem(F, raw)


def find_normal(ctx: TowerCtx, seed: int = 0) -> FFElem:
    for a in _candidates(ctx, seed):
        if is_normal(ctx, a):
            return a
    raise SearchExhaustedError("no normal element found within the search bound")


def self_dual_exists(q: int, m: int) -> bool:
    """F_{q^m}/F_q has a self-dual normal basis iff m and q are odd, or q is even and 4 does not divide m."""
    return (m % 2 == 1 and q % 2 == 1) or (q % 2 == 0 and m % 4 != 0)


def find_self_dual_normal(ctx: TowerCtx, seed: int = 0) -> NormalPair | None:
    """A self-dual normal pair, or ``None`` when none exists for (q, m)."""
    if not self_dual_exists(ctx.q, ctx.m):
        return None
    for a in _candidates(ctx, seed):
        # self-dual normal <=> Tr(a^{1+q^r}) = delta_{r0}
        if ctx.trace(a * a, "mid_qm", "base_q") != 1:
            continue
        if any(ctx.trace(a * ctx.frobenius_q(a, r), "mid_qm", "base_q") for r in range(1, ctx.m)):
            continue
        if is_normal(ctx, a):
            return NormalPair(ctx, a, a, True)
    raise SearchExhaustedError("no self-dual normal element found within the search bound")


def normal_pair(ctx: TowerCtx, alpha: FFElem | None = None, seed: int = 0,
                prefer_self_dual: bool = True) -> NormalPair:
    """Convenience: a dual pair for ``alpha``, or a freshly found one."""
    if alpha is not None:
        return dual_basis(ctx, alpha)
    if prefer_self_dual:
        pair = find_self_dual_normal(ctx, seed)
        if pair is not None:
            return pair
    return dual_basis(ctx, find_normal(ctx, seed))
