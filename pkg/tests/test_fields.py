import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from linperm import fields
from linperm.errors import LevelMismatchError, NotInSubfieldError
from linperm.fields import TowerCtx, is_irreducible, make_tower

from conftest import f8_tower, tower


def brute_irreducible(poly, p):
    """No root-free factorization shortcut: trial division by every monic poly of degree <= d/2."""
    from itertools import product
    from linperm import _poly
    Z = fields._Zp(p)
    f = _poly.trim(Z, [c % p for c in poly])
    d = len(f) - 1
    for k in range(1, d // 2 + 1):
        for tail in product(range(p), repeat=k):
            g = list(tail) + [1]
            if not _poly.mod(Z, f, g):
                return False
    return d >= 1


def test_rabin_matches_trial_division():
    for p, d in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)]:
        from itertools import product
        for tail in product(range(p), repeat=d):
            poly = list(tail) + [1]
            assert is_irreducible(poly, p) == brute_irreducible(poly, p), poly


def test_example_tower_relations():
    ctx, _ = f8_tower()
    a = ctx.mid.gen
    assert a ** 3 == a ** 2 + 1
    assert a ** 6 == a ** 2 + a
    assert ctx.mid.order(a.c) == 7


def test_trace_of_alpha_squared_in_f8():
    # Tr(a^2) = a^2 + a^4 + a^8 = a^2 + a^4 + a = 1 for x^3 + x^2 + 1
    ctx, _ = f8_tower()
    a = ctx.mid.gen
    assert ctx.trace(a * a, "mid_qm", "prime") == ctx.prime(1)
    assert ctx.trace(a, "mid_qm", "base_q") == ctx.base(1)


def test_frobenius_q_is_qth_power():
    ctx = tower(2, 2, 2, 2)
    rng = random.Random(3)
    for _ in range(50):
        x = ctx.top.random(rng)
        assert ctx.frobenius_q(x, 1) == x ** ctx.q
        assert ctx.frobenius_q(x, ctx.n) == x


def test_embed_restrict_round_trip_and_membership():
    ctx = tower(3, 2, 2, 2)
    rng = random.Random(0)
    for _ in range(30):
        b = ctx.base.random(rng)
        y = ctx.embed(b, "top_qn")
        assert ctx.restrict(y, "base_q") == b
        assert ctx.contains(y, "base_q")
        assert ctx.embed(ctx.embed(b, "mid_qm"), "top_qn") == y


def test_restrict_rejects_outside_subfield():
    ctx = tower(2, 1, 3, 2)
    with pytest.raises(NotInSubfieldError):
        ctx.restrict(ctx.top.gen, "mid_qm")


def test_level_mismatch():
    ctx = tower(2, 1, 3, 2)
    with pytest.raises(LevelMismatchError):
        ctx.mid.gen + ctx.top.gen


def test_trace_is_additive_and_lands_in_base():
    ctx = tower(5, 1, 2, 3)
    rng = random.Random(1)
    for _ in range(30):
        x, y = ctx.top.random(rng), ctx.top.random(rng)
        t = ctx.trace(x + y, "top_qn", "base_q")
        assert t == ctx.trace(x, "top_qn", "base_q") + ctx.trace(y, "top_qn", "base_q")


def test_json_round_trip_and_ctx_id():
    ctx = make_tower(3, 1, 3, 2, seed=7)
    doc = json.loads(json.dumps(ctx.to_json()))
    back = TowerCtx.from_json(doc)
    assert back == ctx
    assert back.ctx_id == ctx.ctx_id


def test_make_tower_is_deterministic():
    assert make_tower(2, 2, 3, 2, seed=4) == make_tower(2, 2, 3, 2, seed=4)


def test_nonprime_characteristic_rejected():
    with pytest.raises(ValueError):
        make_tower(4, 1, 2, 2)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 63), st.integers(0, 63), st.integers(0, 63))
def test_field_axioms_f64(a, b, c):
    T = tower(2, 1, 3, 2).top
    x, y, z = (fields.FFElem(T, T.from_code(v)) for v in (a, b, c))
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)
    if x:
        assert x * x.inverse() == 1
