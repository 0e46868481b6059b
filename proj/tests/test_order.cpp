#include "finorder/order.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace finorder;

TEST_CASE("preorder construction and validation")
{
    const auto s = sierpinski();
    CHECK(s.size() == 2);
    CHECK(s.leq(0, 1));
    CHECK_FALSE(s.leq(1, 0));
    CHECK(s.relation_bits() == "1101");
    CHECK(FinitePreorder::from_relation_bits(2, "1101") == s);
    CHECK_THROWS_AS(FinitePreorder::from_relation_bits(2, "0101"), std::invalid_argument);
    CHECK_THROWS_AS(FinitePreorder::from_relation_bits(2, "110"), std::invalid_argument);
    CHECK_THROWS_AS(FinitePreorder::from_relation_bits(3, "110011001"), std::invalid_argument);  // not transitive
    CHECK_THROWS_AS(FinitePreorder::discrete(65), SizeLimitError);

    const std::vector<std::pair<int, int>> pairs = {{0, 1}, {1, 2}};
    const auto c = FinitePreorder::generated(3, pairs);
    CHECK(c == FinitePreorder::chain(3));
    CHECK(c.opposite().leq(2, 0));

    const auto loop = FinitePreorder::from_relation_bits(2, "1111");
    CHECK_FALSE(loop.is_poset());
    CHECK_FALSE(is_wellfounded(loop));
    CHECK(loop.less(0, 1) == false);
}

TEST_CASE("closures and downsets")
{
    const auto s = sierpinski();
    CHECK(down_closure(s, 0) == 0);
    CHECK(down_closure(s, 0b10) == 0b11);
    CHECK(up_closure(s, 0b01) == 0b11);
    CHECK(all_downsets(s) == std::vector<Mask>{0b00, 0b01, 0b11});
    CHECK(all_downsets(FinitePreorder::discrete(3)).size() == 8);

    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const int n = 1 + static_cast<int>(rng() % 6);
        const auto p = i % 2 ? random_preorder(n, rng) : random_poset(n, rng);
        CHECK(all_downsets(p) == oracle::downsets(p));
        for (Mask m = 0; m < (Mask{1} << n); ++m) {
            CHECK(is_downset(p, m) == oracle::is_downset(p, m));
            CHECK(is_upset(p, m) == oracle::is_downset(p.opposite(), m));
        }
    }
}

TEST_CASE("stage posets of the four-point base")
{
    auto b = hsets::four_point_base(hsets::BaseMode::abstract);
    const auto h = hierarchy::build(b.universe, b.base, 2);
    const auto s0 = materialize(b.universe, h, 0);
    CHECK(s0.poset.size() == 4);
    CHECK(all_downsets(s0.poset).size() == 9);
    const int m0 = s0.index_of(b.m0);
    for (hsets::Id mi : {b.m1, b.m2, b.m3})
        CHECK(s0.poset.less(m0, s0.index_of(mi)));

    const auto s1 = materialize(b.universe, h, 1);
    CHECK(s1.poset.size() == 8);
    CHECK(s1.poset.is_poset());
    CHECK(covers(s1.poset).size() == 12);

    // Down-closure of {m1, m2} in the first stage.
    const hsets::Id m12 = *b.universe.find({b.m1, b.m2});
    const int k = s1.index_of(m12);
    const std::vector<hsets::Id> expect = {b.m0, b.m1, b.m2, m12};
    CHECK(down_closure(s1.poset, bit(k)) == s1.mask_of(expect));

    const auto s2 = materialize(b.universe, h, 2);
    CHECK(s2.poset.size() == 22);
    CHECK(is_wellfounded(s2.poset));

    auto t = hsets::antichain3_base();
    const auto ht = hierarchy::build(t.universe, t.base, 0);
    CHECK(materialize(t.universe, ht, 0).poset == FinitePreorder::discrete(3));

    const auto big = hierarchy::build(b.universe, b.base, 3);
    CHECK_THROWS_AS(materialize(b.universe, big, 3), SizeLimitError);
}

TEST_CASE("isomorphism search")
{
    const auto s = sierpinski();
    CHECK(poset_iso(s, s) == std::optional<std::vector<int>>(std::vector<int>{0, 1}));
    CHECK_FALSE(poset_iso(s, FinitePreorder::discrete(2)).has_value());

    auto b = hsets::four_point_base(hsets::BaseMode::abstract);
    const auto h = hierarchy::build(b.universe, b.base, 1);
    const auto p = materialize(b.universe, h, 1).poset;
    std::vector<int> perm(p.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::mt19937_64 rng(3);
    for (int round = 0; round < 20; ++round) {
        for (int i = p.size() - 1; i > 0; --i)
            std::swap(perm[i], perm[rng() % static_cast<std::uint64_t>(i + 1)]);
        const auto q = permuted(p, perm);
        const auto iso = poset_iso(p, q);
        REQUIRE(iso.has_value());
        for (int x = 0; x < p.size(); ++x)
            for (int y = 0; y < p.size(); ++y)
                CHECK(p.leq(x, y) == q.leq((*iso)[x], (*iso)[y]));
    }
    CHECK_THROWS_AS(poset_iso(FinitePreorder::discrete(13), FinitePreorder::discrete(13)), SizeLimitError);
}

TEST_CASE("enumeration counts")
{
    const std::vector<std::size_t> posets = {1, 2, 5, 16, 63};
    for (int n = 1; n <= 5; ++n)
        CHECK(enumerate_posets(n).size() == posets[n - 1]);
    for (int n = 1; n <= 5; ++n)
        CHECK(oracle::poset_classes(n) == posets[n - 1]);

    CHECK(enumerate_preorders(1, false).size() == 1);
    CHECK(enumerate_preorders(2, false).size() == 4);
    CHECK(enumerate_preorders(3, false).size() == 29);
    CHECK(enumerate_preorders(3, true).size() == 9);
    CHECK(enumerate_posets(0).size() == 1);
    CHECK_THROWS_AS(enumerate_posets(6), SizeLimitError);

    for (const auto& p : enumerate_posets(4))
        CHECK(p.is_poset());
}

TEST_CASE("products and serialization")
{
    const auto sq = product(sierpinski(), sierpinski());
    CHECK(sq.size() == 4);
    CHECK(sq.leq(0, 3));
    CHECK_FALSE(sq.leq(1, 2));
    CHECK(all_downsets(sq).size() == 6);

    const auto j = to_json(sq);
    CHECK(j.at("size") == 4);
    CHECK(preorder_from_json(j) == sq);
    const auto dot = to_dot(sq);
    CHECK(dot.find("digraph P") == 0);
    CHECK_THROWS(preorder_from_json(nlohmann::json{{"size", 2}}));
}
