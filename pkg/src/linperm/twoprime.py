"""Linear polynomials of F_{q^{2p}} (p an odd prime) with coefficients in F_{q^2}.

With m = 2 and s = p, a polynomial is described by four coefficient vectors
f11, f12, f21, f22 over F_q of length p; they are the entries of phi(g) in
label order (label 2 is the storage index 0).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from sympy import isprime, n_order

from .cyclring import RPoly, _coerce_base, is_unit
from .errors import HypothesisError, LevelMismatchError
from .fields import FFElem, TowerCtx, make_tower
from .linpoly import LinPoly
from .nbasis import NormalPair


class Verdict(enum.Enum):
    PP = "PP"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class PrescribedCoeffs:
    p: int
    f11: tuple
    f12: tuple
    f21: tuple
    f22: tuple

    def __post_init__(self):
        for name in ("f11", "f12", "f21", "f22"):
            v = tuple(getattr(self, name))
            if len(v) != self.p:
                raise ValueError(f"{name} must have length p = {self.p}, got {len(v)}")
            object.__setattr__(self, name, v)

    @classmethod
    def zero(cls, p: int) -> PrescribedCoeffs:
        z = (0,) * p
        return cls(p, z, z, z, z)

    @classmethod
    def identity(cls, p: int) -> PrescribedCoeffs:
        one = (1,) + (0,) * (p - 1)
        z = (0,) * p
        return cls(p, one, z, z, one)

    def to_json(self) -> dict:
        def enc(v):
            return [x.to_json()["coeffs"] if isinstance(x, FFElem) else x for x in v]
        return {"p": self.p, "f11": enc(self.f11), "f12": enc(self.f12),
                "f21": enc(self.f21), "f22": enc(self.f22)}

    @classmethod
    def from_json(cls, doc: dict) -> PrescribedCoeffs:
        return cls(int(doc["p"]), *(tuple(doc[k]) for k in ("f11", "f12", "f21", "f22")))


def twoprime_tower(q: int, p: int, seed: int = 0, mid_modulus=None) -> TowerCtx:
    """The tower F_q < F_{q^2} < F_{q^{2p}} used throughout this module."""
    from .families import prime_power

    if not isprime(p) or p == 2:
        raise ValueError("p must be an odd prime")
    char, e = prime_power(q)
    moduli = {"mid_qm": mid_modulus} if mid_modulus is not None else None
    return make_tower(char, e, 2, p, seed=seed, moduli=moduli)


def _check_shape(c: PrescribedCoeffs, ctx: TowerCtx):
    if ctx.m != 2 or ctx.s != c.p:
        raise ValueError(f"tower has (m, s) = ({ctx.m}, {ctx.s}); need (2, {c.p})")


def _vec(ctx: TowerCtx, v: Sequence) -> list:
    return [_coerce_base(ctx.base, x) for x in v]


def assemble_g(c: PrescribedCoeffs, pair: NormalPair) -> LinPoly:
    """g = sum_i g_i(x^{q^{2i}}) with

    g_i = [(f12 a^q + f22 a) u + (f11 a^q + f21 a) u^q] x
        + [(f11 a^q + f21 a) u + (f12 a^q + f22 a) u^q] x^q.
    """
    ctx = pair.ctx
    _check_shape(c, ctx)
    F = ctx.mid
    a, aq = pair.alpha.c, pair.alpha_conj(1).c
    u, uq = pair.u.c, pair.u_conj(1).c
    f11, f12, f21, f22 = (_vec(ctx, v) for v in (c.f11, c.f12, c.f21, c.f22))

    def lift(x):
        return ctx.embed_raw(x, "base_q", "mid_qm")

    coeffs = []
    for i in range(c.p):
        s1 = F.add(F.mul(lift(f12[i]), aq), F.mul(lift(f22[i]), a))
        s2 = F.add(F.mul(lift(f11[i]), aq), F.mul(lift(f21[i]), a))
        coeffs.append(F.add(F.mul(s1, u), F.mul(s2, uq)))
        coeffs.append(F.add(F.mul(s2, u), F.mul(s1, uq)))
    return LinPoly(ctx, [FFElem(F, x) for x in coeffs])


def det_poly(c: PrescribedCoeffs, ctx: TowerCtx) -> RPoly:
    """sum_i (sum_{r+s = i mod p} f11_r f22_s - f12_r f21_s) x^i."""
    _check_shape(c, ctx)
    a11, a12, a21, a22 = (RPoly(ctx, _vec(ctx, v)) for v in (c.f11, c.f12, c.f21, c.f22))
    return a11 * a22 - a12 * a21


def is_pp_exact(c: PrescribedCoeffs, ctx: TowerCtx) -> bool:
    """gcd(det_poly(c), x^p - 1) = 1."""
    return is_unit(det_poly(c, ctx))


def _check_primitive(ctx: TowerCtx, p: int):
    if ctx.q % p == 0:
        raise HypothesisError(f"p = {p} is the characteristic of F_q")
    if n_order(ctx.q, p) != p - 1:
        raise HypothesisError(f"q = {ctx.q} is not a primitive element modulo {p}")


def _pair_sum(ctx: TowerCtx, c: PrescribedCoeffs, pairs) -> FFElem:
    B = ctx.base
    f11, f12, f21, f22 = (_vec(ctx, v) for v in (c.f11, c.f12, c.f21, c.f22))
    acc = B.zero
    for r, s in pairs:
        acc = B.add(acc, B.sub(B.mul(f11[r], f22[s]), B.mul(f12[r], f21[s])))
    return FFElem(B, acc)


def excluded_set(c: PrescribedCoeffs, ctx: TowerCtx, sound: bool = False) -> tuple[FFElem, set]:
    """(D(1), {0, p * S0}).

    S0 is the sum over 0 <= r <= s <= p-1 with r + s = 0 mod p by default;
    ``sound=True`` uses every pair with r + s = 0 mod p instead, i.e. the full
    constant coefficient of det_poly.
    """
    _check_shape(c, ctx)
    p = c.p
    D1 = det_poly(c, ctx).evaluate(ctx.base.one)
    if sound:
        pairs = [(r, (-r) % p) for r in range(p)]
    else:
        pairs = [(r, s) for r in range(p) for s in range(r, p) if (r + s) % p == 0]
    S0 = _pair_sum(ctx, c, pairs)
    return D1, {ctx.base(0), S0 * p}


def is_pp_sufficient(c: PrescribedCoeffs, ctx: TowerCtx, sound: bool = False) -> Verdict:
    """PP when D(1) avoids the excluded set; inconclusive otherwise.

    Requires q to be a primitive root modulo p.
    """
    _check_shape(c, ctx)
    _check_primitive(ctx, c.p)
    D1, excluded = excluded_set(c, ctx, sound)
    return Verdict.INCONCLUSIVE if D1 in excluded else Verdict.PP


def corgusta_check(f: Sequence, p: int, ctx: TowerCtx) -> bool:
    """Both conditions sum_j f_j != 0 and -(1/p) sum_{j>=1} f_j + (1 - 1/p) f_0 != 0 over F_q."""
    if not isprime(p) or p == 2:
        raise ValueError("p must be an odd prime")
    _check_primitive(ctx, p)
    B = ctx.base
    if len(f) != p:
        raise ValueError(f"expected {p} coefficients")
    v = []
    for x in f:
        if isinstance(x, FFElem) and x.field != B:
            raise LevelMismatchError("coefficients must lie in F_q")
        v.append(B(x))
    inv_p = B(p).inverse()
    total = sum(v[1:], B(0))
    cond1 = (total + v[0]) != 0
    cond2 = (-(inv_p * total) + (1 - inv_p) * v[0]) != 0
    return cond1 and cond2


def corgusta_poly(f: Sequence, ctx: TowerCtx) -> LinPoly:
    """sum_j f_j x^{q^j} as an element of R_2 over F_{q^{2p}}."""
    B = ctx.base
    return LinPoly(ctx, [ctx.embed(B(x), "mid_qm") for x in f])
