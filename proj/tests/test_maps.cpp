#include "finorder/maps.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace finorder;

namespace {

const MapTable kP1 = {0, 0, 1, 1};
const MapTable kP2 = {0, 1, 0, 1};

std::vector<FinitePreorder> small_preorders(int up_to)
{
    std::vector<FinitePreorder> out;
    for (int n = 1; n <= up_to; ++n)
        for (auto& p : enumerate_preorders(n, false))
            out.push_back(p);
    return out;
}

} // namespace

TEST_CASE("basic map operations")
{
    const MapTable f = {1, 1, 0};
    CHECK(image(f, 0b011) == 0b10);
    CHECK(preimage(f, 0b10) == 0b011);
    CHECK(is_injective_on(f, 0b101));
    CHECK_FALSE(is_injective_on(f, 0b011));
    CHECK(compose(MapTable{1, 0}, f) == MapTable{0, 0, 1});
    CHECK(identity_map(3) == MapTable{0, 1, 2});

    const auto s = sierpinski();
    CHECK(is_monotone(s, s, identity_map(2)));
    CHECK_FALSE(is_monotone(s, s, MapTable{1, 0}));
    CHECK_FALSE(is_total(s, s, MapTable{0, 2}));
    CHECK_FALSE(is_total(s, s, MapTable{0}));
}

TEST_CASE("three openness conditions agree with the topological oracle")
{
    const auto pool = small_preorders(3);
    std::size_t monotone = 0;
    for (const auto& p : pool)
        for (const auto& q : pool)
            for (const auto& f : oracle::all_functions(p.size(), q.size())) {
                const bool ref = oracle::is_open(p, q, f);
                CHECK(is_open_by_images(p, q, f) == ref);
                if (!is_monotone(p, q, f))
                    continue;
                ++monotone;
                CHECK(is_open_by_down_sets(p, q, f) == ref);
                CHECK(is_open_by_up_sets(p, q, f) == ref);
            }
    CHECK(monotone > 0);

    std::mt19937_64 rng(5);
    for (int i = 0; i < 300; ++i) {
        const auto p = random_preorder(4 + static_cast<int>(rng() % 2), rng);
        const auto q = random_preorder(2 + static_cast<int>(rng() % 3), rng);
        MapTable f(p.size());
        for (auto& v : f)
            v = static_cast<int>(rng() % static_cast<std::uint64_t>(q.size()));
        const bool ref = oracle::is_open(p, q, f);
        CHECK(is_open_by_images(p, q, f) == ref);
        if (is_monotone(p, q, f)) {
            CHECK(is_open_by_down_sets(p, q, f) == ref);
            CHECK(is_open_by_up_sets(p, q, f) == ref);
        }
    }
}

TEST_CASE("open map enumeration")
{
    const auto s = sierpinski();
    CHECK(enumerate_open_maps(s, s).maps.size() == 2);
    CHECK(enumerate_open_maps(FinitePreorder::discrete(2), s).maps.size() == 1);
    CHECK(enumerate_open_maps(product(s, s), singleton()).maps.size() == 1);
    CHECK(enumerate_open_maps(singleton(), s).maps == std::vector<MapTable>{{0}});

    const auto pool = small_preorders(3);
    for (const auto& p : pool)
        for (const auto& q : pool)
            CHECK(enumerate_open_maps(p, q).maps == oracle::open_maps(p, q));

    std::vector<Mask> allowed = {0b01, 0b11};
    CHECK(enumerate_open_maps(s, s, allowed).maps == std::vector<MapTable>{{0, 0}, {0, 1}});
    allowed = {0b01, 0b10};
    CHECK(enumerate_open_maps(s, s, allowed).maps == std::vector<MapTable>{{0, 1}});
    CHECK_THROWS_AS(enumerate_open_maps(FinitePreorder::discrete(6), FinitePreorder::discrete(6), {}, 10),
                    BudgetExceeded);

    // Streaming with injectivity on the whole domain keeps only injective maps.
    const auto d3 = FinitePreorder::discrete(3);
    std::size_t seen = 0;
    for_each_open_map(d3, d3, {}, kDefaultNodeBudget, d3.points(), [&](const MapTable& f) {
        CHECK(is_injective_on(f, d3.points()));
        ++seen;
    });
    CHECK(seen == 6);
}

TEST_CASE("projection probes on the four-point stages")
{
    const auto s = four_point_setup(hsets::BaseMode::abstract, 2);
    const auto sier = sierpinski();
    for (std::size_t a = 0; a <= 2; ++a) {
        const auto& q = s.stages[a].poset;
        const auto f1 = projection_probe(s, a, 1);
        const auto f2 = projection_probe(s, a, 2);
        CHECK(oracle::is_open(q, sier, f1));
        CHECK(oracle::is_open(q, sier, f2));
        const auto& st = s.stages[a];
        CHECK(f1[st.index_of(s.base.m0)] == 0);
        CHECK(f1[st.index_of(s.base.m1)] == 0);
        CHECK(f1[st.index_of(s.base.m2)] == 1);
        CHECK(f2[st.index_of(s.base.m2)] == 0);
        CHECK(f2[st.index_of(s.base.m3)] == 1);
    }
    CHECK_THROWS_AS(projection_probe(s, 0, 3), std::invalid_argument);

    // The pairing into S x S separates the base points.
    const auto& st = s.stages[0];
    const auto f1 = projection_probe(s, 0, 1), f2 = projection_probe(s, 0, 2);
    MapTable pairing(st.poset.size());
    for (int x = 0; x < st.poset.size(); ++x)
        pairing[x] = f1[x] * 2 + f2[x];
    CHECK(is_injective_on(pairing, s.base_mask(0)));
    CHECK(is_monotone(st.poset, product(sier, sier), pairing));
    // Not open: the image of the downset of m3 is {(0,0), (1,1)}.
    CHECK_FALSE(oracle::is_open(st.poset, product(sier, sier), pairing));
}

TEST_CASE("mediating maps and the obstruction search")
{
    const auto s = four_point_setup(hsets::BaseMode::abstract, 2);
    const auto sq = product(sierpinski(), sierpinski());

    // Brute force over all 4^4 functions: nothing from stage 0 commutes.
    const auto& q0 = s.stages[0].poset;
    const auto g1 = projection_probe(s, 0, 1), g2 = projection_probe(s, 0, 2);
    std::size_t brute = 0;
    for (const auto& f : oracle::all_functions(q0.size(), sq.size())) {
        bool commutes = true;
        for (int x = 0; x < q0.size(); ++x)
            commutes = commutes && kP1[f[x]] == g1[x] && kP2[f[x]] == g2[x];
        brute += commutes && oracle::is_open(q0, sq, f) ? 1 : 0;
    }
    CHECK(brute == 0);
    CHECK(mediating_search(q0, g1, g2, sq, kP1, kP2).maps.empty());

    const auto v = product_obstruction(s, sq, kP1, kP2, 1, 2);
    CHECK(v.refuted());
    CHECK(v.kind == CertificateKind::empty_mediating_set);
    CHECK(v.stage == std::optional<std::size_t>(1));
    CHECK_FALSE(v.anomaly);
    CHECK(std::string(to_string(v.kind)) == "empty_mediating_set");
    CHECK(to_json(v).at("certificate_kind") == "empty_mediating_set");

    const auto one = product_obstruction(s, singleton(), MapTable{0}, MapTable{0}, 1, 2);
    CHECK(one.refuted());

    CHECK_THROWS_AS(product_obstruction(s, sq, MapTable{1, 0, 1, 0}, kP2, 1, 2), std::invalid_argument);
    CHECK_THROWS_AS(product_obstruction(s, sq, kP1, kP2, 1, 3), std::invalid_argument);
}

TEST_CASE("injectivity on the base forces injectivity")
{
    const auto s = four_point_setup(hsets::BaseMode::abstract, 2);
    const auto sier = sierpinski();
    const auto cube = product(product(sier, sier), sier);
    const auto r1 = injectivity_experiment(s.stages[1].poset, s.base_mask(1), cube);
    CHECK(r1.ok());
    const auto r11 = injectivity_experiment(s.stages[1].poset, s.base_mask(1), s.stages[1].poset);
    const auto r12 = injectivity_experiment(s.stages[1].poset, s.base_mask(1), s.stages[2].poset);
    const auto r22 = injectivity_experiment(s.stages[2].poset, s.base_mask(2), s.stages[2].poset);
    CHECK(r1.injective_on_base == 0);
    // The six permutations of m1, m2, m3.
    CHECK(r11.injective_on_base == 6);
    CHECK(r12.injective_on_base == 6);
    CHECK(r22.injective_on_base == 6);
    CHECK((r11.ok() && r12.ok() && r22.ok()));

    // Cross-check against the unconstrained enumeration.
    for (const auto* target : {&cube, &s.stages[1].poset}) {
        std::size_t ref = 0;
        for (const auto& f : enumerate_open_maps(s.stages[1].poset, *target).maps)
            ref += is_injective_on(f, s.base_mask(1)) ? 1 : 0;
        CHECK(ref == injectivity_experiment(s.stages[1].poset, s.base_mask(1), *target).injective_on_base);
    }

    for (const auto& p : enumerate_posets(4))
        CHECK(injectivity_experiment(s.stages[1].poset, s.base_mask(1), p).injective_on_base == 0);
}
