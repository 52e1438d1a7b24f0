import functools

import pytest

from linperm.fields import make_tower
from linperm.nbasis import dual_basis, normal_pair


@functools.lru_cache(maxsize=None)
def tower(p, e, m, s, seed=0):
    return make_tower(p, e, m, s, seed=seed)


@functools.lru_cache(maxsize=None)
def pair_for(p, e, m, s, seed=0):
    return normal_pair(tower(p, e, m, s, seed))


@functools.lru_cache(maxsize=None)
def f8_tower():
    """F_2 < F_8 = F_2[x]/(x^3+x^2+1) < F_64, alpha = class of x."""
    ctx = make_tower(2, 1, 3, 2, moduli={"mid_qm": [1, 0, 1, 1]})
    return ctx, dual_basis(ctx, ctx.mid.gen)


@functools.lru_cache(maxsize=None)
def f27_tower():
    """F_3 < F_27 = F_3[x]/(x^3+2x+1) < F_{3^18}, gamma = class of x, alpha = gamma^2."""
    ctx = make_tower(3, 1, 3, 6, moduli={"mid_qm": [1, 2, 0, 1]}, primitives={"mid_qm": [0, 1, 0]})
    return ctx, dual_basis(ctx, ctx.mid.gen ** 2)


@functools.lru_cache(maxsize=None)
def f25_tower():
    """F_5 < F_25 = F_5[x]/(x^2+4x+2) < F_{5^6}, alpha = class of x."""
    ctx = make_tower(5, 1, 2, 3, moduli={"mid_qm": [2, 4, 1]}, primitives={"mid_qm": [0, 1]})
    return ctx, dual_basis(ctx, ctx.mid.gen)


@pytest.fixture
def f8():
    return f8_tower()


@pytest.fixture
def f27():
    return f27_tower()


@pytest.fixture
def f25():
    return f25_tower()
