import math

import pytest

from linperm.cyclring import RPoly, factor_cyclotomic
from linperm.families import (FAMILIES, census, classify_family, gen_pp, gen_sdpp, gen_spp, generate,
                              prime_power, size_gl, sizes, tags_for, units_census)
from linperm.iso import phi
from linperm.linpoly import LinPoly, is_permutation

from conftest import f8_tower, pair_for, tower


def classical_gl(q, m):
    return math.prod(q ** m - q ** i for i in range(m))


def test_sizes_small_case():
    assert sizes(2, 2, 2) == {"gl": 96, "sl": 48, "borel": 16, "diag": 4, "units": 2}


@pytest.mark.parametrize("q,m", [(2, 2), (2, 3), (3, 2), (4, 2), (5, 3)])
def test_s_equal_one_is_classical(q, m):
    out = sizes(q, m, 1)
    assert out["gl"] == classical_gl(q, m)
    assert out["units"] == q - 1
    assert out["sl"] == classical_gl(q, m) // (q - 1)


def test_units_r36():
    assert sizes(3, 1, 6)["units"] == 324


@pytest.mark.parametrize("params", [(2, 1, 2, 2), (3, 1, 2, 1), (2, 1, 2, 3)])
def test_census_matches_formulas(params):
    ctx = tower(*params)
    got = census(ctx)
    want = sizes(ctx.q, ctx.m, ctx.s)
    assert units_census(ctx) == want["units"]
    for key in ("gl", "sl", "borel", "diag"):
        assert got[key] == want[key], key
    assert got["gl"] == got["sl"] * want["units"]
    assert got["sl_diag"] == want["units"] ** (ctx.m - 1)


def test_size_gl_nonprime_q():
    ctx = tower(2, 2, 1, 3)
    fac = factor_cyclotomic(ctx)
    # x^3 - 1 over F_4 splits into three linear factors
    assert size_gl(fac, 2) == ((4 ** 1 - 1) * (4 ** 2 - 1)) ** 3 * 4 ** (4 * 3 - 3 * 3)


def test_prime_power():
    assert prime_power(9) == (3, 2)
    with pytest.raises(ValueError):
        prime_power(12)


def test_tags_for():
    assert tags_for(set()) == set()
    assert tags_for({"GL", "SL", "Borel", "Diagonal"}) == set(FAMILIES)
    assert tags_for({"GL", "Borel"}) == {"PP", "BPP"}


def test_identity_and_example_one_tags():
    ctx, pair = f8_tower()
    assert classify_family(LinPoly.identity(ctx), pair) == set(FAMILIES)
    a = ctx.mid.gen
    assert classify_family(LinPoly(ctx, [a ** 6, a ** 5, a ** 5, 1, 0, 0]), pair) == {"PP"}


@pytest.mark.parametrize("family", ["BPP", "SBPP", "DPP", "SDPP"])
@pytest.mark.parametrize("params", [(2, 1, 3, 2), (5, 1, 2, 3), (2, 2, 2, 2)])
def test_matrix_families_carry_their_tag(family, params):
    pair = pair_for(*params)
    for seed in range(4):
        assert family in generate(family, pair, seed).tags


@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("params", [(2, 1, 3, 2), (3, 1, 2, 3), (2, 1, 2, 4)])
def test_members_are_permutations_when_s_is_power_of_p(family, params):
    pair = pair_for(*params)
    for seed in range(4):
        assert is_permutation(generate(family, pair, seed).poly)


def test_composed_families_can_lose_their_tag():
    # phi does not turn composition into matrix product once m, s > 1
    pair = pair_for(3, 1, 2, 3)
    member = generate("SPP", pair, 0)
    assert is_permutation(member.poly)
    assert "SPP" not in member.tags


def test_sdpp_has_determinant_one():
    pair = pair_for(3, 1, 3, 2)
    for seed in range(5):
        assert phi(gen_sdpp(pair, seed), pair).det() == 1


def test_gen_pp_with_zero_shift_is_h():
    pair = pair_for(2, 1, 3, 2)
    h = gen_spp(pair, 2, seed=1)
    assert gen_pp(h, RPoly.zero(pair.ctx), pair) == h


def test_unknown_family():
    with pytest.raises(ValueError):
        generate("XPP", pair_for(2, 1, 2, 2))
