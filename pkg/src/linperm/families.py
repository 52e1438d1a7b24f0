"""Named families of linearized polynomials from matrix subgroups, and group orders.

Tags describe where phi(f) lands: PP for GL, SPP for SL, BPP for invertible
upper triangular, DPP for invertible diagonal, SBPP and SDPP for their
intersections with SL.  Upper triangular is taken in storage order (rows and
columns indexed by alpha^{q^0}, ..., alpha^{q^{m-1}}).
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass

from sympy import factorint

from .cyclring import CycloFactorization, RPoly, factor_cyclotomic
from .errors import NotUnitError
from .fields import TowerCtx, make_tower
from .iso import phi, psi_dilation, psi_transvection, psi_unit
from .linpoly import LinPoly, lp_add, lp_compose
from .matring import RMatrix, all_matrices, classify, index_to_label
from .nbasis import NormalPair

FAMILIES = ("PP", "SPP", "BPP", "SBPP", "DPP", "SDPP")


def _random_unit(ctx: TowerCtx, rng: random.Random) -> RPoly:
    while True:
        c = RPoly.random(ctx, rng)
        if c.is_unit():
            return c


def gen_spp(pair: NormalPair, t: int = 3, seed: int = 0) -> LinPoly:
    """Compose t random transvection images x + psi(O_jk c)."""
    if t < 1:
        raise ValueError("t must be at least 1")
    ctx = pair.ctx
    rng = random.Random(seed)
    f = LinPoly.identity(ctx)
    if ctx.m < 2:
        return f
    for _ in range(t):
        j, k = rng.sample(range(1, ctx.m + 1), 2)
        f = lp_compose(f, psi_transvection(j, k, RPoly.random(ctx, rng), pair))
    return f


def gen_pp(h: LinPoly, t: RPoly, pair: NormalPair) -> LinPoly:
    """psi(D_1(t + 1)) o h."""
    if not (t + 1).is_unit():
        raise NotUnitError("t + 1 must be a unit of R_(q,s)")
    return lp_compose(psi_dilation(1, t + 1, pair), h)


def _diagonal(ctx: TowerCtx, rng: random.Random, det_one: bool) -> list[RPoly]:
    d = [_random_unit(ctx, rng) for _ in range(ctx.m)]
    if det_one:
        prod = RPoly.one(ctx)
        for x in d[:-1]:
            prod = prod * x
        d[-1] = prod.inverse()
    return d


def _triangular_matrix(ctx: TowerCtx, seed: int, upper: bool, det_one: bool) -> RMatrix:
    rng = random.Random(seed)
    m = ctx.m
    d = _diagonal(ctx, rng, det_one)
    zero = RPoly.zero(ctx)
    rows = [[d[i] if i == j else (RPoly.random(ctx, rng) if upper and j > i else zero)
             for j in range(m)] for i in range(m)]
    return RMatrix._raw(ctx, rows)


def family_matrix(family: str, pair: NormalPair, seed: int = 0) -> RMatrix:
    """The matrix certificate behind gen_bpp / gen_sbpp / gen_dpp / gen_sdpp."""
    family = family.upper()
    ctx = pair.ctx
    if family == "BPP":
        return _triangular_matrix(ctx, seed, True, False)
    if family == "SBPP":
        return _triangular_matrix(ctx, seed, True, True)
    if family == "DPP":
        return _triangular_matrix(ctx, seed, False, False)
    if family == "SDPP":
        return _triangular_matrix(ctx, seed, False, True)
    raise ValueError(f"no matrix sampler for family {family!r}")


def assemble_upper(M: RMatrix, pair: NormalPair) -> LinPoly:
    """sum over a <= b (storage order) of psi_unit on the matching labels.

    Equal to psi(M) for upper triangular M, but built from the closed form.
    """
    ctx = M.ctx
    f = LinPoly.zero(ctx)
    for a in range(ctx.m):
        for b in range(a, ctx.m):
            if M[a, b]:
                f = lp_add(f, psi_unit(index_to_label(ctx, a), index_to_label(ctx, b), M[a, b], pair))
    return f


def gen_bpp(pair: NormalPair, seed: int = 0) -> LinPoly:
    return assemble_upper(family_matrix("BPP", pair, seed), pair)


def gen_sbpp(pair: NormalPair, seed: int = 0) -> LinPoly:
    return assemble_upper(family_matrix("SBPP", pair, seed), pair)


def gen_dpp(pair: NormalPair, seed: int = 0) -> LinPoly:
    return assemble_upper(family_matrix("DPP", pair, seed), pair)


def gen_sdpp(pair: NormalPair, seed: int = 0) -> LinPoly:
    return assemble_upper(family_matrix("SDPP", pair, seed), pair)


def tags_for(groups: set[str]) -> set[str]:
    tags = set()
    if "GL" in groups:
        tags.add("PP")
        if "SL" in groups:
            tags.add("SPP")
        if "Borel" in groups:
            tags.add("BPP")
            if "SL" in groups:
                tags.add("SBPP")
        if "Diagonal" in groups:
            tags.add("DPP")
            if "SL" in groups:
                tags.add("SDPP")
    return tags


def classify_family(f: LinPoly, pair: NormalPair) -> set[str]:
    return tags_for(classify(phi(f, pair)))


@dataclass(frozen=True)
class FamilyMember:
    family: str
    poly: LinPoly
    matrix: RMatrix
    tags: frozenset

    def to_json(self) -> dict:
        return {"family": self.family, "tags": sorted(self.tags),
                "linpoly": self.poly.to_json(), "matrix": self.matrix.to_json()}


def generate(family: str, pair: NormalPair, seed: int = 0, t: int = 3) -> FamilyMember:
    """One member of a family with its matrix certificate phi(f)."""
    family = family.upper()
    ctx = pair.ctx
    if family == "SPP":
        f = gen_spp(pair, t, seed)
    elif family == "PP":
        rng = random.Random(seed)
        h = gen_spp(pair, t, seed)
        while True:
            tt = RPoly.random(ctx, rng)
            if (tt + 1).is_unit():
                break
        f = gen_pp(h, tt, pair)
    elif family in ("BPP", "SBPP", "DPP", "SDPP"):
        f = assemble_upper(family_matrix(family, pair, seed), pair)
    else:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    M = phi(f, pair)
    return FamilyMember(family, f, M, frozenset(tags_for(classify(M))))


# group orders


def _factor_data(fac: CycloFactorization):
    return fac.q, fac.ctx.s, [f.degree for f in fac], [f.mult for f in fac]


def size_units(fac: CycloFactorization) -> int:
    q, _, ds, ss = _factor_data(fac)
    out = 1
    for d, sj in zip(ds, ss):
        out *= (q ** d - 1) * q ** (d * (sj - 1))
    return out


def size_gl(fac: CycloFactorization, m: int) -> int:
    """q^{m^2 s} prod_j prod_{i=1}^m (1 - q^{-i d_j}), in integers."""
    q, s, ds, _ = _factor_data(fac)
    out = 1
    for d in ds:
        for i in range(1, m + 1):
            out *= q ** (i * d) - 1
    return out * q ** (m * m * s - m * (m + 1) // 2 * sum(ds))


def size_sl(fac: CycloFactorization, m: int) -> int:
    gl, u = size_gl(fac, m), size_units(fac)
    assert gl % u == 0
    return gl // u


def size_borel(fac: CycloFactorization, m: int) -> int:
    return fac.q ** (fac.ctx.s * m * (m - 1) // 2) * size_units(fac) ** m


def size_diag(fac: CycloFactorization, m: int) -> int:
    return size_units(fac) ** m


def prime_power(q: int) -> tuple[int, int]:
    f = factorint(q)
    if q < 2 or len(f) != 1:
        raise ValueError(f"{q} is not a prime power")
    (p, e), = f.items()
    return p, e


def sizes(q: int, m: int, s: int) -> dict:
    """All five group orders for M_m(R_{q,s})."""
    p, e = prime_power(q)
    fac = factor_cyclotomic(make_tower(p, e, 1, s))
    return {"gl": size_gl(fac, m), "sl": size_sl(fac, m), "borel": size_borel(fac, m),
            "diag": size_diag(fac, m), "units": size_units(fac)}


def census(ctx: TowerCtx) -> dict:
    """Exhaustive subgroup counts over all of M_m(R_{q,s}) (tiny parameters only)."""
    counts = Counter()
    for A in all_matrices(ctx):
        groups = classify(A)
        counts.update(groups)
        if {"SL", "Borel"} <= groups:
            counts["SL&Borel"] += 1
        if {"SL", "Diagonal"} <= groups:
            counts["SL&Diagonal"] += 1
    return {"gl": counts["GL"], "sl": counts["SL"], "borel": counts["Borel"],
            "diag": counts["Diagonal"], "sl_borel": counts["SL&Borel"],
            "sl_diag": counts["SL&Diagonal"]}


def units_census(ctx: TowerCtx) -> int:
    return sum(1 for c in RPoly.all(ctx) if c.is_unit())

