#include "finorder/suites.hpp"

#include <doctest.h>

using namespace finorder;
using namespace finorder::suites;

TEST_CASE("every suite passes at default settings")
{
    RunConfig c;
    for (const auto& name : suite_names()) {
        CAPTURE(name);
        const auto r = verify(name, c);
        CHECK(r.exit_code == exit_ok);
        CHECK(r.json.at("status") == "ok");
        CHECK(r.json.at("violation_count") == 0);
        CHECK(r.json.at("schema") == kSchemaVersion);
        CHECK_FALSE(r.json.contains("elapsed_seconds"));
    }
    CHECK_THROWS_AS(verify("nosuch", c), std::invalid_argument);
}

TEST_CASE("reports are deterministic")
{
    RunConfig c;
    c.seed = 99;
    CHECK(verify("bao", c).json.dump() == verify("bao", c).json.dump());
    CHECK(verify("lemma31", c).json.dump() == verify("lemma31", c).json.dump());

    const nlohmann::json cfg = {{"depth", 2}, {"seed", 1}};
    CHECK(config_hash(cfg) == config_hash(nlohmann::json::parse(cfg.dump())));
    CHECK(config_hash(cfg).size() == 16);
    CHECK(config_hash(cfg) != config_hash(nlohmann::json{{"depth", 3}, {"seed", 1}}));

    RunConfig d = c;
    d.seed = 100;
    CHECK(verify("bao", c).json.at("config_hash") != verify("bao", d).json.at("config_hash"));
}

TEST_CASE("hierarchy commands")
{
    RunConfig c;
    const auto r = hierarchy_stats(c);
    CHECK(r.exit_code == exit_ok);
    CHECK(r.json.at("facts").at("level_sizes") == nlohmann::json{4, 8, 22});

    c.depth = 3;
    c.budget = 100;
    const auto b = hierarchy_build(c);
    CHECK(b.exit_code == exit_budget);
    CHECK(b.json.at("status") == "budget_exhausted");

    RunConfig e;
    e.depth = 1;
    const auto dot = hierarchy_export(e, 1, false);
    CHECK(dot.find("digraph") == 0);
    const auto j = nlohmann::json::parse(hierarchy_export(e, 1, true));
    CHECK(j.at("levels").size() == 2);

    CHECK_THROWS(load_base("nosuch"));
    CHECK_THROWS(load_base("file:/nonexistent/base.json"));
    CHECK(load_base("antichain3").base.size() == 3);
}

TEST_CASE("obstruction command")
{
    RunConfig c;
    const auto r = obstruct({named_poset("product2x2"), named_poset("singleton")}, c);
    CHECK(r.exit_code == exit_ok);
    CHECK(r.json.at("facts").at("candidate_count") == 26);
    CHECK(r.json.at("facts").at("refuted") == 26);
    CHECK(posets_up_to(3).size() == 8);
    CHECK_THROWS_AS(named_poset("nonsense"), std::invalid_argument);
}
