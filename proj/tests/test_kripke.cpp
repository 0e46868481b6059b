#include "finorder/kripke.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace finorder;

TEST_CASE("frames and relations")
{
    const auto f = KripkeFrame::from_relation_bits(3, "110011001");
    CHECK(f.related(0, 1));
    CHECK_FALSE(f.related(1, 0));
    CHECK(f.successors(1) == 0b110);
    CHECK(f.predecessors(1) == 0b011);
    CHECK(f.is_reflexive());
    CHECK_FALSE(f.is_transitive());
    CHECK(f.relation_bits() == "110011001");
    CHECK(KripkeFrame::from_code(2, 0b1011) == KripkeFrame::from_relation_bits(2, "1101"));
    CHECK_THROWS(KripkeFrame::from_relation_bits(2, "11"));

    const auto op = frame_of_opposite(sierpinski());
    CHECK(op.successors(1) == 0b11);
    CHECK(op.successors(0) == 0b01);
    CHECK(op.is_preorder());
    CHECK(frame_from_json(to_json(f)) == f);
    CHECK(to_dot(f).find("digraph F") == 0);
}

TEST_CASE("p-morphisms")
{
    const auto f = KripkeFrame::from_relation_bits(2, "1101");
    CHECK(is_pmorphism(f, f, identity_map(2)));
    const auto loop = KripkeFrame::from_relation_bits(1, "0");
    CHECK_FALSE(is_pmorphism(f, loop, MapTable{0, 0}));

    std::mt19937_64 rng(9);
    for (int i = 0; i < 300; ++i) {
        const auto a = random_frame(1 + static_cast<int>(rng() % 3), rng);
        const auto b = random_frame(1 + static_cast<int>(rng() % 3), rng);
        std::size_t count = 0;
        for (const auto& h : oracle::all_functions(a.size(), b.size())) {
            const bool ref = oracle::is_pmorphism(a, b, h);
            CHECK(is_pmorphism(a, b, h) == ref);
            CHECK(is_pmorphism_by_preimages(a, b, h) == ref);
            count += ref ? 1 : 0;
        }
        CHECK(enumerate_pmorphisms(a, b).size() == count);
    }
}

TEST_CASE("open maps are p-morphisms between opposite frames")
{
    std::vector<FinitePreorder> pool;
    for (int n = 1; n <= 3; ++n)
        for (auto& p : enumerate_preorders(n, false))
            pool.push_back(p);
    for (const auto& p : pool)
        for (const auto& q : pool) {
            const auto fp = frame_of_opposite(p), fq = frame_of_opposite(q);
            for (const auto& h : oracle::all_functions(p.size(), q.size()))
                if (is_monotone(p, q, h))
                    CHECK(is_open_by_down_sets(p, q, h) == is_pmorphism(fp, fq, h));
        }
}

TEST_CASE("coreflection onto preorders")
{
    // 0 -> 1 with a loop on 1 only: the carrier is {1}.
    const auto f = KripkeFrame::from_relation_bits(2, "0101");
    const auto c = coreflect(f);
    CHECK(c.carrier == 0b10);
    CHECK(c.states == std::vector<int>{1});

    CHECK(coreflect(KripkeFrame::from_relation_bits(2, "0100")).carrier == 0);
    const auto pre = frame_of_opposite(FinitePreorder::chain(3));
    CHECK(coreflect(pre).carrier == pre.states());
    CHECK(poset_iso(coreflect(pre).order, FinitePreorder::chain(3)).has_value());

    for (int n = 1; n <= 3; ++n)
        for (std::uint64_t code = 0; code < (std::uint64_t{1} << (n * n)); ++code) {
            const auto g = KripkeFrame::from_code(n, code);
            const Mask carrier = coreflect(g).carrier;
            CHECK(carrier == oracle::coreflector(g));
            CHECK(carrier == coreflect_carrier_exhaustive(g));
        }

    std::mt19937_64 rng(21);
    for (int i = 0; i < 100; ++i) {
        const auto g = random_frame(4, rng);
        for (int n = 1; n <= 2; ++n)
            for (const auto& p : enumerate_preorders(n, true)) {
                const auto r = verify_coreflection(g, p);
                CHECK(r.ok());
            }
    }
}

TEST_CASE("complex algebras")
{
    const auto op = frame_of_opposite(sierpinski());
    const auto a = complex_algebra(op);
    CHECK(a.atoms() == 2);
    CHECK(a.diamond(0b01) == 0b11);
    CHECK(a.diamond(0b10) == 0b10);
    CHECK(a.diamond(0) == 0);
    CHECK(is_closure_algebra(a));

    // Not reflexive, then not transitive.
    CHECK_FALSE(is_closure_algebra(complex_algebra(KripkeFrame::from_relation_bits(2, "0101"))));
    CHECK_FALSE(is_closure_algebra(complex_algebra(KripkeFrame::from_relation_bits(3, "110011001"))));

    for (int n = 1; n <= 3; ++n)
        for (std::uint64_t code = 0; code < (std::uint64_t{1} << (n * n)); ++code) {
            const auto g = KripkeFrame::from_code(n, code);
            CHECK(closure_iff_preorder(g));
            const auto ca = complex_algebra(g);
            CHECK(is_closure_algebra(ca) == is_closure_algebra_by_elements(ca));
            CHECK(verify_bao_adjunction(g));
        }

    // Functoriality: a p-morphism pulls back diamonds.
    std::mt19937_64 rng(4);
    for (int i = 0; i < 100; ++i) {
        const auto g = random_frame(3, rng), h = random_frame(2, rng);
        const auto cg = complex_algebra(g), ch = complex_algebra(h);
        for (const auto& m : enumerate_pmorphisms(g, h))
            for (Mask u = 0; u < 4; ++u)
                CHECK(preimage(m, ch.diamond(u)) == cg.diamond(preimage(m, u)));
    }
}

TEST_CASE("box and diamond")
{
    const auto a = complex_algebra(KripkeFrame::from_relation_bits(3, "011001100"));
    const auto r = box_diamond_inequality(a);
    CHECK(r.ok());
    CHECK(r.pairs_checked == 64);

    // An operator that is not additive on elements cannot be stored; the
    // atoms-only form is always additive, so every 2-atom operator passes.
    for (Mask d0 = 0; d0 < 4; ++d0)
        for (Mask d1 = 0; d1 < 4; ++d1)
            CHECK(box_diamond_inequality(FiniteBAO({d0, d1})).ok());

    const FiniteBAO wide(std::vector<Mask>(10, 0b1));
    const auto sampled = box_diamond_inequality(wide, 3, 500);
    CHECK(sampled.pairs_checked == 500);
    CHECK(sampled.ok());
    CHECK(bao_from_json(to_json(wide)).diamond(0b11) == wide.diamond(0b11));
}

TEST_CASE("dual frames")
{
    const auto g = KripkeFrame::from_relation_bits(3, "011001100");
    const auto d = bao_dual(complex_algebra(g));
    CHECK(d.s == 0b111);
    CHECK(d.s_is_fixed);
    CHECK(frame_iso(d.frame, g).has_value());

    const auto id = bao_dual(FiniteBAO({0b01, 0b10}));
    CHECK(frame_iso(id.frame, KripkeFrame::from_relation_bits(2, "1001")).has_value());

    const auto empty = bao_dual(FiniteBAO(std::vector<Mask>{}));
    CHECK(empty.frame.size() == 0);

    const auto cyc = KripkeFrame::from_relation_bits(3, "010001100");
    const auto rev = KripkeFrame::from_relation_bits(3, "001100010");
    const auto iso = frame_iso(cyc, rev);
    REQUIRE(iso.has_value());
    CHECK(is_pmorphism(cyc, rev, *iso));
    CHECK_FALSE(frame_iso(cyc, KripkeFrame::from_relation_bits(3, "110011001")).has_value());

    const auto bf = bao_fullness_check(g, KripkeFrame::from_relation_bits(1, "1"));
    CHECK(bf.ok());
    CHECK(bf.pmorphisms == 1);
}
