import itertools

import pytest

import finorder as fo


def test_version_and_suites():
    assert fo.__version__ == "0.1.0"
    assert "lemma31" in fo.suite_names


def test_hierarchy_sizes():
    report, code = fo.hierarchy_stats("thm33", 2)
    assert code == 0
    assert report["facts"]["level_sizes"] == [4, 8, 22]
    report, _ = fo.hierarchy_stats("antichain3", 1)
    assert report["facts"]["fresh_sizes"] == [3, 4]


def test_budget_exit_code():
    report, code = fo.hierarchy_stats("thm33", 3, budget=100)
    assert code == 2
    assert report["status"] == "budget_exhausted"


def test_poset_counts():
    assert [len(fo.enumerate_posets(n)) for n in range(1, 5)] == [1, 2, 5, 16]
    assert [len(fo.enumerate_preorders(n)) for n in range(1, 4)] == [1, 4, 29]


def test_open_map_characterizations_agree():
    s = fo.sierpinski()
    pool = [p for n in (1, 2) for p in fo.enumerate_preorders(n)]
    for p, q in itertools.product(pool, pool):
        for f in itertools.product(range(q.size), repeat=p.size):
            f = list(f)
            if fo.is_monotone(p, q, f):
                a = fo.is_open_by_images(p, q, f)
                assert a == fo.is_open_by_down_sets(p, q, f) == fo.is_open_by_up_sets(p, q, f)
    assert fo.open_maps(fo.singleton(), s) == [[0]]


def test_heyting():
    alg = fo.DownsetAlgebra(fo.sierpinski())
    assert alg.neg(alg.neg(1)) == alg.top
    p = fo.product(fo.sierpinski(), fo.sierpinski())
    alg = fo.DownsetAlgebra(p)
    for a in alg.elements:
        for b in alg.elements:
            assert alg.implies(a, b) == fo.implies_by_search(alg, a, b)
    assert fo.verify_adjunction_unit(p)
    assert fo.fullness_check(fo.sierpinski(), fo.sierpinski())["ok"]


def test_kripke():
    irreflexive = fo.Frame.from_relation_bits(2, "0100")
    states, order = fo.coreflect(irreflexive)
    assert states == []
    chain = fo.frame_of_opposite(fo.Preorder.chain(3))
    assert chain.is_preorder()
    assert fo.is_closure_algebra(chain)
    assert fo.verify_bao_adjunction(irreflexive)
    for code in range(16):
        assert fo.closure_iff_preorder(fo.Frame.from_code(2, code))


def test_obstruct_and_verify():
    report, code = fo.obstruct(["product2x2", "singleton"])
    assert code == 0
    assert report["facts"]["refuted"] == report["facts"]["candidate_count"] == 26
    report, code = fo.verify("lemma31", max_size=3, samples=200)
    assert code == 0 and report["violation_count"] == 0


def test_errors():
    with pytest.raises(ValueError):
        fo.Preorder.from_relation_bits(2, "0110")
    with pytest.raises(ValueError):
        fo.named_poset("nonsense")
