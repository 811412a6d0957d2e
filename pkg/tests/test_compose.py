import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from labyrinth import Pattern, compose, compose_seq, find_exits, parse_pattern, validate
from labyrinth.compose import HARD_CAP, CapExceededError, LevelSet
from labyrinth.generators import random_labyrinth, special_cross

import oracles
from corpus import corpus


def small_patterns(max_m=5):
    return st.integers(1, max_m).flatmap(
        lambda m: st.lists(st.booleans(), min_size=m * m, max_size=m * m).map(
            lambda bits: np.array(bits, dtype=bool).reshape(m, m)
        )
    ).filter(lambda g: g.any()).map(Pattern)


def test_plus3_squared(plus3):
    q = compose(plus3, plus3)
    assert q.width == 9
    assert len(q) == 25
    assert oracles.white_set(q) == oracles.oracle_compose(oracles.white_set(plus3), 3, oracles.white_set(plus3), 3)


def test_cross_composition_width():
    assert compose(special_cross(5), special_cross(6)).width == 143


@given(small_patterns(), small_patterns())
@settings(max_examples=150)
def test_compose_matches_definition(p, q):
    r = compose(p, q)
    assert r.width == p.width * q.width
    assert len(r) == len(p) * len(q)
    assert oracles.white_set(r) == oracles.oracle_compose(oracles.white_set(p), p.width, oracles.white_set(q), q.width)


@given(small_patterns(4), small_patterns(4), small_patterns(4))
@settings(max_examples=60)
def test_associative(a, b, c):
    assert compose(compose(a, b), c) == compose(a, compose(b, c))


def test_compose_seq_base_case(plus3):
    level = compose_seq([plus3], 1)
    assert level.level == 1 and level.widths == (3,) and level.pattern == plus3


def test_compose_seq_records_widths(plus3):
    level = compose_seq([plus3, special_cross(5), plus3], 3)
    assert level.widths == (3, 11, 3)
    assert level.pattern.width == 99
    assert level.pattern == compose(compose(plus3, special_cross(5)), plus3)


def test_compose_seq_nests_levels(plus3):
    seq = [special_cross(5), plus3]
    coarse = compose_seq(seq, 1).pattern
    fine = compose_seq(seq, 2).pattern
    for c in fine.white:
        assert coarse.is_white(c.col // 3, c.row // 3)


def test_compose_seq_errors(plus3):
    with pytest.raises(ValueError):
        compose_seq([], 1)
    with pytest.raises(ValueError):
        compose_seq([plus3], 2)
    with pytest.raises(ValueError):
        compose_seq([plus3], 0)


def test_width_twenty_composition():
    a1 = random_labyrinth(4, seed=1)
    a2 = random_labyrinth(5, seed=2)
    level = compose_seq([a1, a2], 2)
    assert level.pattern.width == 20
    assert validate(level.pattern).is_labyrinth


def test_plus3_level_two_is_labyrinth(plus3):
    assert validate(compose_seq([plus3, plus3], 2).pattern).is_labyrinth


def test_cap_is_enforced():
    big = special_cross(40)  # width 81
    with pytest.raises(CapExceededError):
        compose(big, big, cap=81 * 80)
    with pytest.raises(CapExceededError):
        compose_seq([big, big], 2, cap=1000)
    with pytest.raises(ValueError):
        compose(big, big, cap=HARD_CAP + 1)


def test_default_cap():
    p = special_cross(31)  # width 63, 63**2 = 3969 fits
    assert compose(p, p).width == 3969
    q = special_cross(32)  # width 65, 65**2 = 4225 does not
    with pytest.raises(CapExceededError):
        compose(q, q)


@pytest.mark.parametrize("name_a, a", corpus()[:8])
@pytest.mark.parametrize("name_b, b", corpus()[:8])
def test_exit_inheritance(name_a, a, name_b, b):
    if a.width * b.width > 400:
        pytest.skip("width product above the brute-force limit")
    ea, eb, ec = find_exits(a), find_exits(b), find_exits(compose(a, b))
    m = b.width
    for side in ("top", "bottom"):
        assert getattr(ec, side)[0].col == getattr(ea, side)[0].col * m + getattr(eb, side)[0].col
    for side in ("left", "right"):
        assert getattr(ec, side)[0].row == getattr(ea, side)[0].row * m + getattr(eb, side)[0].row


def test_levelset_sidecar_round_trip(tmp_path, plus3, schemas):
    level = compose_seq([plus3, special_cross(5)], 2)
    pat = tmp_path / "w2.pat"
    level.write(pat)
    sidecar = json.loads((tmp_path / "w2.pat.json").read_text())
    assert sidecar == {"level": 2, "widths": [3, 11]}
    schemas("level_set", sidecar)
    again = LevelSet.read(pat)
    assert again == level
    assert parse_pattern(pat.read_text()) == level.pattern


def test_levelset_checks_width(plus3):
    with pytest.raises(ValueError):
        LevelSet(1, (5,), plus3)
