#include "qlogic/verify.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace qlogic::verify;

TEST_CASE("verdicts do not depend on the seed", "[verify]") {
    for (std::uint64_t seed : {1ULL, 2ULL, 42ULL, 9999ULL}) {
        Config c;
        c.max_dim = 3;
        c.trials = 100;
        c.seed = seed;
        for (const auto& r : run_all(c)) {
            INFO(r.module << "/" << r.name << " d=" << r.dim << " seed=" << seed);
            CHECK(r.passed());
            CHECK(r.failure_kind == FailureKind::none);
        }
    }
}

TEST_CASE("an unreachable tolerance is classed as rounding", "[verify]") {
    Config c;
    c.trials = 50;
    c.tol = 1e-16;
    int failed = 0;
    for (const auto& r : run_all(c)) {
        if (r.passed()) continue;
        ++failed;
        INFO(r.module << "/" << r.name);
        CHECK(r.failure_kind == FailureKind::tolerance);
    }
    CHECK(failed > 0);
}

TEST_CASE("suite json lists every suite", "[verify]") {
    const auto results = run_all(Config{});
    const auto j = to_json(results);
    REQUIRE(j.size() == results.size());
    CHECK(j[0].contains("failure_kind"));
    CHECK(j[0]["module"] == "logic_core");
}
