"""The isomorphism phi: R_m -> M_m(R_{q,s}) and its inverse psi.

A linearized polynomial g = sum_i g_i(x^{q^{mi}}) is sent to sum_i [g_i]_B x^i,
where [g_i]_B is the F_q-matrix of g_i on the normal basis B: column k holds
the B-coordinates of g_i(alpha^{q^k}).  Coordinates come from the dual basis:
the coefficient of v on alpha^{q^j} is Tr(v u^{q^j}).
"""

from __future__ import annotations

from typing import Sequence

from .cyclring import RPoly, is_unit
from .errors import LevelMismatchError, NotUnitError
from .fields import FFElem
from .linpoly import LinPoly, lp_add
from .matring import RMatrix, label_to_index
from .nbasis import NormalPair


def coeffs_from_values(values: Sequence[FFElem], pair: NormalPair) -> list[FFElem]:
    """Recover a_0..a_{m-1} of h = sum a_r x^{q^r} from values[l] = h(alpha^{q^l}).

    a_r = sum_l u^{q^{r+l}} h(alpha^{q^l}).
    """
    ctx = pair.ctx
    m = ctx.m
    if len(values) != m:
        raise ValueError(f"expected {m} values")
    F = ctx.mid
    uc = [pair.u_conj(i).c for i in range(m)]
    out = []
    for r in range(m):
        acc = F.zero
        for l, v in enumerate(values):
            if v.field != F:
                raise LevelMismatchError("values must be mid_qm elements")
            acc = F.add(acc, F.mul(uc[(r + l) % m], v.c))
        out.append(FFElem(F, acc))
    return out


def _eval_block(ctx, block_raw, y):
    """g_i(y) = sum_r a_r y^{q^r} for y in the middle field (raw)."""
    F = ctx.mid
    acc, cur = F.zero, y
    for r, a in enumerate(block_raw):
        if r:
            cur = ctx.frob_q_raw(cur, "mid_qm", 1)
        acc = F.add(acc, F.mul(a, cur))
    return acc


def phi(f: LinPoly, pair: NormalPair) -> RMatrix:
    ctx = f.ctx
    if pair.ctx != ctx:
        raise LevelMismatchError("normal pair belongs to a different tower")
    m, s = ctx.m, ctx.s
    F, B = ctx.mid, ctx.base
    ac = [pair.alpha_conj(k).c for k in range(m)]
    uc = [pair.u_conj(j).c for j in range(m)]
    entries = [[[B.zero] * s for _ in range(m)] for _ in range(m)]
    for i in range(s):
        block = f.a[i * m:(i + 1) * m]
        if not any(any(a) for a in block):
            continue
        for k in range(m):
            v = _eval_block(ctx, block, ac[k])
            for j in range(m):
                coord = ctx.trace(FFElem(F, F.mul(v, uc[j])), "mid_qm", "base_q")
                entries[j][k][i] = coord.c
    return RMatrix._raw(ctx, [[RPoly._raw(ctx, tuple(e)) for e in row] for row in entries])


def psi(M: RMatrix, pair: NormalPair) -> LinPoly:
    ctx = M.ctx
    if pair.ctx != ctx:
        raise LevelMismatchError("normal pair belongs to a different tower")
    m, s = ctx.m, ctx.s
    F = ctx.mid
    ac = [pair.alpha_conj(j).c for j in range(m)]
    coeffs = []
    for i in range(s):
        G = M.slice(i)
        values = []
        for k in range(m):
            acc = F.zero
            for j in range(m):
                if any(G[j][k]):
                    acc = F.add(acc, F.mul(ctx.embed_raw(G[j][k], "base_q", "mid_qm"), ac[j]))
            values.append(FFElem(F, acc))
        coeffs.extend(coeffs_from_values(values, pair))
    return LinPoly(ctx, coeffs)


def psi_unit(j: int, k: int, c: RPoly, pair: NormalPair) -> LinPoly:
    """psi(O_jk c) = sum_i sum_r c_i alpha^{q^j} u^{q^{k+r}} x^{q^{mi+r}} (labels 1..m)."""
    ctx = c.ctx
    m, s = ctx.m, ctx.s
    label_to_index(ctx, j)
    label_to_index(ctx, k)
    F = ctx.mid
    aj = pair.alpha_conj(j).c
    coeffs = [F.zero] * (m * s)
    for r in range(m):
        w = F.mul(aj, pair.u_conj(k + r).c)
        for i, ci in enumerate(c.c):
            if any(ci):
                coeffs[m * i + r] = F.mul(ctx.embed_raw(ci, "base_q", "mid_qm"), w)
    return LinPoly._raw(ctx, tuple(coeffs))


def psi_transvection(j: int, k: int, c: RPoly, pair: NormalPair) -> LinPoly:
    """psi(chi_jk(c)) = x + psi(O_jk c)."""
    if j == k:
        raise ValueError("a transvection needs j != k")
    return lp_add(LinPoly.identity(c.ctx), psi_unit(j, k, c, pair))


def psi_dilation(l: int, c: RPoly, pair: NormalPair) -> LinPoly:
    """psi(D_l(c)) = x + psi(O_ll (c - 1))."""
    if not is_unit(c):
        raise NotUnitError("dilation entry must be a unit of R_(q,s)")
    return lp_add(LinPoly.identity(c.ctx), psi_unit(l, l, c - 1, pair))
