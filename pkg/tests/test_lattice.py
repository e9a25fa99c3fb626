import random
from itertools import combinations

import pytest
from conftest import SMALL

from oracles import dual_rank_table, fixed_point_flats, naive_pm_triple_loop, rank_table, violates_with_oracle
from sparsepaving import (
    build_mk,
    build_tictactoe,
    build_vamos,
    ch_coline_incidence,
    colines,
    dualize,
    enumerate_flats,
    is_pseudomodular_naive,
    is_pseudomodular_pruned,
    random_sparse_paving,
    validate,
)
from sparsepaving.errors import ForeignFlat, TooLarge
from sparsepaving.lattice import PmWitness


def test_flat_counts_m3(m3):
    lat = enumerate_flats(m3)
    assert len(lat) == 107
    assert lat.counts_by_rank() == [1, 9, 36, 60, 1]


def test_flat_counts_tictactoe(ttt):
    lat = enumerate_flats(ttt)
    assert len(lat) == 225
    assert lat.counts_by_rank() == [1, 9, 36, 84, 94, 1]


def test_boolean_lattice():
    assert len(enumerate_flats(validate(3, 3, []))) == 8


def test_structural_flats_equal_fixed_point_flats(small):
    flats, rank = fixed_point_flats(small.n, small.r, small.chs)
    lat = enumerate_flats(small)
    assert set(lat.flats) == flats
    assert len(lat.flats) == len(flats)
    assert all(rank[f] == rk for f, rk in zip(lat.flats, lat.ranks))
    bottom = [f for f, rk in zip(lat.flats, lat.ranks) if rk == 0]
    top = [f for f, rk in zip(lat.flats, lat.ranks) if rk == small.r]
    assert bottom == [small.closure(0)] and top == [small.ground]


def test_flat_cap(ttt):
    with pytest.raises(TooLarge):
        enumerate_flats(ttt, cap=100)


def test_join_and_meet_examples(m3, ttt):
    lat = enumerate_flats(m3)
    a1, b2 = lat.flat(m3.set_of("a1")), lat.flat(m3.set_of("b2"))
    j = lat.join(a1, b2)
    assert j.rank == 2 and j.set == m3.set_of("a1,b2")
    f = lat.flat(m3.set_of("a1,a2,b1,b2"))
    assert lat.meet(lat.flat(m3.ground), f) == f

    tl = enumerate_flats(ttt)
    x = tl.flat(ttt.ground - ttt.set_of("a1,a2,b1,b2"))
    y = tl.flat(ttt.ground - ttt.set_of("a1,a2,c1,c2"))
    meet = tl.meet(x, y)
    assert meet.set == ttt.set_of("a3,b3,c3") and meet.rank == 3
    assert rank_table(9, 5, ttt.chs)[meet.set] == 3


def test_foreign_flat(m3):
    lat = enumerate_flats(m3)
    with pytest.raises(ForeignFlat):
        lat.join(m3.set_of("a1,a2,b1"), m3.set_of("c1"))


@pytest.mark.parametrize("name", ["M3", "M3*", "vamos", "rand-2", "rand-3"])
def test_lattice_laws(name):
    m = SMALL[name]
    lat = enumerate_flats(m)
    flats = list(lat)
    rng = random.Random(5)
    for _ in range(400):
        a, b, c = (rng.choice(flats) for _ in range(3))
        assert lat.join(a, b) == lat.join(b, a) and lat.meet(a, b) == lat.meet(b, a)
        assert lat.join(lat.join(a, b), c) == lat.join(a, lat.join(b, c))
        assert lat.meet(lat.meet(a, b), c) == lat.meet(a, lat.meet(b, c))
        assert lat.join(a, lat.meet(a, b)) == a and lat.meet(a, lat.join(a, b)) == a


@pytest.mark.parametrize("name", ["M3", "M3*", "vamos", "rand-1", "rand-4"])
def test_submodularity_and_strict_rank(name):
    m = SMALL[name]
    lat = enumerate_flats(m)
    join, meet, rank = lat.tables()
    size = len(lat)
    for i in range(size):
        for j in range(size):
            assert rank[join[i, j]] + rank[meet[i, j]] <= rank[i] + rank[j]
            fi, fj = lat.flats[i], lat.flats[j]
            if fi != fj and fi & ~fj == 0:
                assert rank[i] < rank[j]


# -- pseudomodularity ------------------------------------------------------------


def test_tictactoe_is_pseudomodular(ttt):
    naive = is_pseudomodular_naive(ttt)
    assert naive.pseudomodular and naive.method == "naive"
    assert naive.triples_examined == 225**3
    pruned = is_pseudomodular_pruned(ttt)
    assert pruned.pseudomodular and pruned.method == "pruned"
    assert pruned.triples_examined <= 8 * 7 * 6


def test_free_matroid_is_pseudomodular():
    assert is_pseudomodular_naive(validate(4, 4, [])).pseudomodular
    assert is_pseudomodular_pruned(validate(4, 4, [])).pseudomodular


def test_vamos_against_triple_loop(vamos):
    report = is_pseudomodular_naive(vamos)
    oracle = naive_pm_triple_loop(vamos.n, vamos.r, vamos.chs)
    assert report.pseudomodular == (oracle is None)
    assert not report.pseudomodular
    assert report.witness.revalidate(vamos)


def test_witness_reproduces_ranks(vamos):
    w = is_pseudomodular_pruned(vamos).witness
    rank = rank_table(vamos.n, vamos.r, vamos.chs)
    assert violates_with_oracle(rank, vamos.n, w.a, w.b, w.c)
    for key, flat in w.flats.items():
        assert rank[flat] == w.ranks[key]
    assert w.ranks["a"] == rank[w.a] and w.ranks["b"] == rank[w.b] and w.ranks["c"] == rank[w.c]


def test_tampered_witness_fails_revalidation(vamos):
    w = is_pseudomodular_pruned(vamos).witness
    ranks = dict(w.ranks, a=w.ranks["a"] + 1)
    assert not PmWitness(w.a, w.b, w.c, w.flats, ranks).revalidate(vamos)


def test_checkers_agree_on_small_instances(small):
    naive = is_pseudomodular_naive(small)
    pruned = is_pseudomodular_pruned(small)
    assert naive.verdict == pruned.verdict
    for rep in (naive, pruned):
        if rep.witness is not None:
            assert rep.witness.revalidate(small)


@pytest.mark.parametrize("seed", range(10))
def test_naive_agrees_with_plain_triple_loop(seed):
    m = random_sparse_paving(6 + seed % 2, 3 + seed % 2, 8, seed)
    oracle = naive_pm_triple_loop(m.n, m.r, m.chs)
    report = is_pseudomodular_naive(m)
    assert report.pseudomodular == (oracle is None)


def test_naive_witness_is_least_in_canonical_order(vamos):
    lat = enumerate_flats(vamos)
    report = is_pseudomodular_naive(vamos, lattice=lat)
    rank = rank_table(vamos.n, vamos.r, vamos.chs)
    a, b, c = (lat.position(x) for x in (report.witness.a, report.witness.b, report.witness.c))
    size = len(lat)
    assert report.triples_examined == (a * size + b) * size + c + 1
    flats = lat.flats
    for i in range(a + 1):
        for j in range(size if i < a else b + 1):
            upto = size if (i, j) < (a, b) else c
            for t in range(upto):
                assert not violates_with_oracle(rank, vamos.n, flats[i], flats[j], flats[t])


def test_naive_is_schedule_independent(m3, vamos):
    for m in (m3, vamos, build_tictactoe()):
        assert is_pseudomodular_naive(m, jobs=1) == is_pseudomodular_naive(m, jobs=3)


def test_naive_cap(ttt):
    with pytest.raises(TooLarge):
        is_pseudomodular_naive(ttt, cap=200)


@pytest.mark.parametrize("k", [4, 5])
def test_mk_dual_violation_confirmed_by_independent_oracle(k):
    """M_k* for k >= 4 has a violating triple; check it from primal ranks alone."""
    primal = build_mk(k)
    dual = dualize(primal)
    report = is_pseudomodular_pruned(dual)
    assert not report.pseudomodular
    w = report.witness
    assert w.revalidate(dual)
    rank = dual_rank_table(primal.n, primal.r, primal.chs)
    assert violates_with_oracle(rank, dual.n, w.a, w.b, w.c)
    assert (w.ranks["a|b|c"], w.ranks["a|b"], w.ranks["a|c"], w.ranks["a"]) == (3 * k - 4, 3 * k - 5, 3 * k - 5, 3 * k - 6)
    assert w.ranks["(a|c)&(b|c)"] - w.ranks["a&b"] == 2


def test_m4_dual_three_ab_hyperplanes_through_a1_b1():
    primal = build_mk(4)
    dual = dualize(primal)
    x, y, z = (dual.ground - primal.set_of(s) for s in ("a1,a2,b1,b2", "a1,a3,b1,b3", "a1,a4,b1,b4"))
    rank = dual_rank_table(primal.n, primal.r, primal.chs)
    assert violates_with_oracle(rank, dual.n, x & y, x & z, y & z)


def test_primal_m3_is_not_pseudomodular(m3):
    assert not is_pseudomodular_naive(m3).pseudomodular
    assert not is_pseudomodular_pruned(m3).pseudomodular


# -- colines ---------------------------------------------------------------------


def test_colines_of_tictactoe(ttt):
    lat = enumerate_flats(ttt)
    cl = colines(lat)
    assert len(cl) == 84
    assert all(f.rank == 3 and len(f.set) == 3 for f in cl)


def test_ch_coline_incidence(ttt):
    table = ch_coline_incidence(ttt)
    for i, j in combinations(range(1, 4), 2):
        if (i, j) == (1, 3):
            continue
        h1 = ttt.ground - ttt.set_of(f"a{i},a{j},b{i},b{j}")
        h2 = ttt.ground - ttt.set_of(f"a{i},a{j},c{i},c{j}")
        key = (h1, h2) if list(h1) < list(h2) else (h2, h1)
        assert table[key] == ttt.ground - ttt.set_of(f"a{i},a{j},b{i},b{j},c{i},c{j}")
    lat = enumerate_flats(ttt)
    assert all(lat.flat(c).rank == ttt.r - 2 for c in table.values())
    assert ch_coline_incidence(validate(5, 3, [])) == {}


@pytest.mark.slow
def test_naive_on_m4_dual_finds_violation():
    dual = dualize(build_mk(4))
    report = is_pseudomodular_naive(dual, cap=5000)
    assert not report.pseudomodular
    assert report.witness.revalidate(dual)
    w = report.witness.to_dict(dual)
    assert w["a"] == ["a1", "a2", "a3", "a4", "b1", "c1"]
    assert w["b"] == ["a1", "a2", "a3", "a4", "b2", "c2"]
    assert w["c"] == ["b3"]
