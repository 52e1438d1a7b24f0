import pytest

from linperm._linalg import inverse_mod_p
from linperm.errors import LevelMismatchError, NotNormalError
from linperm.fields import make_tower
from linperm.nbasis import (dual_basis, find_normal, find_self_dual_normal, gram_matrix, is_normal,
                            self_dual_exists)

from conftest import f8_tower, f25_tower, f27_tower, tower


def test_f4_generator_is_normal():
    ctx = tower(2, 1, 2, 1)
    assert is_normal(ctx, ctx.mid.gen)


def test_one_is_not_normal():
    ctx = tower(3, 1, 3, 1)
    assert not is_normal(ctx, ctx.mid(1))


def test_gamma_squared_in_f27():
    ctx, pair = f27_tower()
    g = ctx.mid.gen
    assert ctx.mid.order(g.c) == 26
    assert is_normal(ctx, g ** 2)
    assert pair.u == g ** 21
    assert [ctx.log(pair.u_conj(i)) for i in range(3)] == [21, 11, 7]
    assert [ctx.log(pair.alpha_conj(i)) for i in range(3)] == [2, 6, 18]


def test_f25_dual_is_alpha_to_the_fourth():
    ctx, pair = f25_tower()
    a = ctx.mid.gen
    assert pair.u == a ** 4
    assert pair.u_conj(1) == a ** 20


def test_example_one_basis_is_self_dual():
    ctx, pair = f8_tower()
    assert pair.self_dual and pair.u == pair.alpha


def test_self_dual_search():
    assert find_self_dual_normal(make_tower(2, 1, 3, 1)) is not None
    assert find_self_dual_normal(make_tower(2, 1, 4, 1)) is None
    pair = find_self_dual_normal(make_tower(3, 1, 1, 2))
    assert pair.alpha == 1 and pair.u == 1
    assert self_dual_exists(3, 3) and not self_dual_exists(3, 2) and self_dual_exists(2, 6)


def test_self_dual_trace_condition():
    ctx = make_tower(2, 1, 5, 1)
    pair = find_self_dual_normal(ctx, seed=2)
    a = pair.alpha
    traces = [ctx.trace(a * ctx.frobenius_q(a, r), "mid_qm", "base_q") for r in range(5)]
    assert traces == [ctx.base(1)] + [ctx.base(0)] * 4


@pytest.mark.parametrize("q,m", [(2, 3), (3, 3), (5, 2)])
def test_duality_is_an_involution(q, m):
    ctx = make_tower(q, 1, m, 1)
    identity = [[ctx.base(int(i == j)) for j in range(m)] for i in range(m)]
    for x in ctx.mid.elements():
        if x and is_normal(ctx, x):
            pair = dual_basis(ctx, x)
            assert gram_matrix(ctx, pair.alpha, pair.u) == identity
            assert is_normal(ctx, pair.u)
            assert dual_basis(ctx, pair.u).u == x


def test_dual_matches_inverse_of_conjugate_matrix():
    # the matrix of u-conjugates is the inverse of the matrix of alpha-conjugates
    ctx = make_tower(2, 1, 4, 1, seed=1)
    alpha = find_normal(ctx, seed=3)
    pair = dual_basis(ctx, alpha)
    m, F = ctx.m, ctx.mid
    A = [[ctx.frobenius_q(alpha, (i + j) % m) for j in range(m)] for i in range(m)]
    U = [[ctx.frobenius_q(pair.u, (i + j) % m) for j in range(m)] for i in range(m)]
    prod = [[sum((A[i][k] * U[k][j] for k in range(m)), F(0)) for j in range(m)] for i in range(m)]
    assert prod == [[F(int(i == j)) for j in range(m)] for i in range(m)]


def test_normality_via_prime_field_rank_nonprime_q():
    ctx = make_tower(2, 2, 3, 1, seed=2)
    a = find_normal(ctx)
    # independent check: the m x m matrix of conjugate coordinates over F_p has full rank e*m
    rows = []
    for i in range(ctx.m):
        c = ctx.frobenius_q(a, i)
        for t in range(ctx.e):
            b = ctx.embed(ctx.base(ctx.base.basis(t)), "mid_qm")
            rows.append(list((b * c).c))
    assert inverse_mod_p(rows, 2) is not None


def test_errors():
    ctx = tower(2, 1, 3, 1)
    with pytest.raises(NotNormalError):
        dual_basis(ctx, ctx.mid(1))
    with pytest.raises(LevelMismatchError):
        is_normal(ctx, ctx.top.gen)
