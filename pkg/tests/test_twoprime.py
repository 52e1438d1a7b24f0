import random

import pytest

from linperm.errors import HypothesisError
from linperm.iso import phi
from linperm.linpoly import LinPoly, is_permutation, is_permutation_bruteforce
from linperm.nbasis import normal_pair
from linperm.twoprime import (PrescribedCoeffs, Verdict, assemble_g, corgusta_check, corgusta_poly, det_poly,
                              excluded_set, is_pp_exact, is_pp_sufficient, twoprime_tower)


def setup(q=5, p=3, seed=0):
    ctx = twoprime_tower(q, p, seed)
    return ctx, normal_pair(ctx)


def random_coeffs(rng, q, p):
    return PrescribedCoeffs(p, *(tuple(rng.randrange(q) for _ in range(p)) for _ in range(4)))


def test_identity_assembles_to_x():
    ctx, pair = setup()
    assert assemble_g(PrescribedCoeffs.identity(3), pair) == LinPoly.identity(ctx)
    assert assemble_g(PrescribedCoeffs.zero(3), pair) == LinPoly.zero(ctx)


@pytest.mark.parametrize("q,p", [(5, 3), (3, 5), (2, 3)])
def test_phi_recovers_prescribed_entries(q, p):
    ctx, pair = setup(q, p)
    rng = random.Random(0)
    for _ in range(10):
        c = random_coeffs(rng, q, p)
        M = phi(assemble_g(c, pair), pair)
        for (j, k), v in {(1, 1): c.f11, (1, 2): c.f12, (2, 1): c.f21, (2, 2): c.f22}.items():
            assert [int(x.c[0]) for x in M.label(j, k).coeffs] == list(v)
        assert det_poly(c, ctx) == M.det()


def test_det_poly_convolution():
    ctx, _ = setup()
    c = PrescribedCoeffs(3, (1, 2, 0), (0, 1, 0), (3, 0, 0), (0, 0, 1))
    # (1 + 2x) x^2 - x * 3 = x^2 + 2x^3 - 3x = x^2 + 2 - 3x
    assert [int(a.c[0]) for a in det_poly(c, ctx).coeffs] == [2, 2, 1]


def test_det_criterion_matches_brute_force_in_characteristic_p():
    ctx, pair = setup(3, 3)
    rng = random.Random(1)
    for _ in range(60):
        c = random_coeffs(rng, 3, 3)
        assert is_pp_exact(c, ctx) == is_permutation_bruteforce(assemble_g(c, pair))


def test_det_criterion_disagrees_with_brute_force_otherwise():
    # here p does not divide q, so x^p - 1 is separable and the unit test is not exact
    ctx, pair = setup(2, 3)
    rng = random.Random(1)
    disagreements = sum(is_pp_exact(c, ctx) != is_permutation_bruteforce(assemble_g(c, pair))
                        for c in (random_coeffs(rng, 2, 3) for _ in range(60)))
    assert disagreements > 0


def test_sufficient_simple_cases():
    ctx, _ = setup()
    assert is_pp_sufficient(PrescribedCoeffs.identity(3), ctx) is Verdict.PP
    assert is_pp_sufficient(PrescribedCoeffs.zero(3), ctx) is Verdict.INCONCLUSIVE
    D1, excluded = excluded_set(PrescribedCoeffs.identity(3), ctx)
    assert D1 == 1 and excluded == {ctx.base(0), ctx.base(3)}


def test_sufficient_requires_primitive_root():
    ctx = twoprime_tower(2, 7)
    with pytest.raises(HypothesisError):
        is_pp_sufficient(PrescribedCoeffs.identity(7), ctx)
    ctx = twoprime_tower(3, 3)
    with pytest.raises(HypothesisError):
        is_pp_sufficient(PrescribedCoeffs.identity(3), ctx)


def test_literal_sufficient_test_can_be_wrong():
    ctx, _ = setup()
    rng = random.Random(2)
    wrong = 0
    for _ in range(300):
        c = random_coeffs(rng, 5, 3)
        if is_pp_sufficient(c, ctx) is Verdict.PP and not is_pp_exact(c, ctx):
            wrong += 1
    assert wrong > 0


@pytest.mark.parametrize("q,p", [(5, 3), (2, 3), (3, 5)])
def test_sound_variant_implies_exact(q, p):
    ctx, _ = setup(q, p)
    rng = random.Random(3)
    for _ in range(200):
        c = random_coeffs(rng, q, p)
        if is_pp_sufficient(c, ctx, sound=True) is Verdict.PP:
            assert is_pp_exact(c, ctx)


def test_prescribed_validation_and_json():
    with pytest.raises(ValueError):
        PrescribedCoeffs(3, (1, 2), (0, 0, 0), (0, 0, 0), (0, 0, 0))
    c = PrescribedCoeffs(3, (3, 3, 1), (3, 1, 4), (1, 1, 2), (1, 1, 4))
    assert PrescribedCoeffs.from_json(c.to_json()) == c
    with pytest.raises(ValueError):
        twoprime_tower(5, 2)


def test_corgusta_examples():
    ctx, _ = setup()
    assert corgusta_check([1, 0, 0], 3, ctx)
    assert is_permutation(corgusta_poly([1, 0, 0], ctx))
    assert not corgusta_check([0, 0, 0], 3, ctx)


def test_corgusta_check_can_accept_a_non_permutation():
    # x + x^5 over F_{5^6}: any root of x^4 = -1 lies in the kernel
    ctx, _ = setup()
    assert corgusta_check([1, 1, 0], 3, ctx)
    assert not is_permutation(corgusta_poly([1, 1, 0], ctx))
    root = next(z for z in ctx.top.elements() if z and z ** 4 == -1)
    assert root + root ** 5 == 0
