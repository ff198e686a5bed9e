"""Cross-module invariants not pinned elsewhere."""

import pytest

from conftest import random_linear
from matroidlab import (UniformMatroid, bits, is_projective_geometry,
                        max_line_minor, pg, popcount, theta)
from matroidlab.harness import catalogs as cat


def test_epsilon_at_most_nonloops():
    for seed in range(8):
        m = random_linear(2, 3, 9, seed)
        nonloops = popcount(m.live & ~m.loops())
        assert m.epsilon() <= nonloops
        assert m.epsilon() == m.simplify().epsilon()


def test_epsilon_within_matches_restriction():
    m = random_linear(3, 4, 11, seed=21)
    for mask in (0b10110, 0b1111, m.live, 0):
        assert m.epsilon(mask) == m.restrict(mask).epsilon()


@pytest.mark.parametrize("q,n,expect", [(3, 4, 4), (4, 4, 5)])
def test_pg_rank4_line_minor(q, n, expect):
    res = max_line_minor(pg(n, q))
    assert res.exact and res.points == expect == q + 1


@pytest.mark.parametrize("q", [2, 3, 4])
def test_pg_rank2_line_minor_trivial(q):
    res = max_line_minor(pg(2, q))
    assert res.exact and res.points == q + 1 and res.certificate.contract == 0


def test_minor_view_size_and_rank_formulas():
    m = pg(4, 2)
    for contract, delete in ((0b1, 0b10110), (0b1100, 0b1), (0, 0b111)):
        view = m.minor(contract=contract, delete=delete)
        assert view.size == m.size - popcount(contract) - popcount(delete)
        assert view.rank_full == m.rank(m.live & ~delete) - m.rank(contract)
        assert view.rank_full <= m.rank_full - m.rank(contract)


def test_recognizer_pg52():
    assert is_projective_geometry(pg(5, 2)).order == 2


def test_every_registry_catalog_builds_deterministically():
    for name in sorted(cat.REGISTRY):
        one = cat.registry_catalog(name)
        two = cat.registry_catalog(name)
        assert [m.key for m in one.members] == [m.key for m in two.members]
        assert len(one.members) > 0


def test_pg34_sample_catalog_contains_full_plane():
    c = cat.registry_catalog("pg3q4-restrictions-sample")
    full = (1 << 21) - 1
    assert any(m.meta.get("subset") == full for m in c.members)
    assert all(popcount(m.meta["subset"]) >= 18 for m in c.members)


def test_cache_dir_env_var(monkeypatch, tmp_path):
    monkeypatch.setenv("MATROIDLAB_CACHE_DIR", str(tmp_path))
    assert cat.cache_dir_from_env() == str(tmp_path)
    monkeypatch.delenv("MATROIDLAB_CACHE_DIR")
    assert cat.cache_dir_from_env("fallback") == "fallback"


def test_uniform_rank2_pairs_independent():
    u = UniformMatroid(2, 6)
    for a in bits(u.live):
        for b in bits(u.live):
            if a < b:
                assert u.rank((1 << a) | (1 << b)) == 2


def test_pg_every_line_q_plus_1_points():
    for q, n in ((3, 3), (4, 3), (5, 3)):
        m = pg(n, q)
        assert all(m.epsilon(line) == q + 1 for line in m.flats_of_rank(2))
        assert len(m.flats_of_rank(2)) == theta(q, n)  # rank-3 duality: lines = points
