#include "bmlab/verify.hpp"

#include <set>

#include "test_util.hpp"

using namespace bmlab;
using namespace bmlab::verify;

static const PrecisionContext ctx;

TEST_CASE("registry structure") {
    const auto& recs = registry();
    CHECK(recs.size() >= 35);
    std::set<std::string> ids;
    for (const auto& r : recs) {
        CHECK(!r.id.empty());
        CHECK(!r.paper_anchor.empty());
        CHECK(!r.description.empty());
        CHECK(ids.insert(r.id).second);  // unique
    }
    // every suite letter is populated
    for (const char* prefix : {"S", "B", "L", "H", "E", "W"}) {
        bool found = false;
        for (const auto& r : recs)
            if (r.id.rfind(prefix, 0) == 0) found = true;
        CHECK(found);
    }
}

TEST_CASE("tolerances") {
    CHECK(tight_tolerance(ctx) == pow10(-32, ctx.work_bits()));
    CHECK(loose_tolerance(ctx) == pow10(-15, ctx.work_bits()));
    PrecisionContext lo(24);
    CHECK(tight_tolerance(lo) == pow10(-16, lo.work_bits()));
    CHECK(loose_tolerance(lo) == pow10(-12, lo.work_bits()));
}

TEST_CASE("run single identities") {
    auto r = run("B1_bologna", ctx);
    CHECK(r.pass);
    CHECK(r.abs_residual < r.tolerance);
    CHECK(r.seconds >= 0);
    CHECK_THROWS_AS(run("nonexistent", ctx), std::invalid_argument);
}

TEST_CASE("run_suite filtering and determinism under parallelism") {
    CHECK(run_suite("nonexistent", ctx, 1).empty());
    auto seq = run_suite("B1", ctx, 1);
    auto par = run_suite("B1", ctx, 2);
    REQUIRE(seq.size() == par.size());
    for (size_t i = 0; i < seq.size(); ++i) {
        CHECK(seq[i].id == par[i].id);
        CHECK(seq[i].lhs.re == par[i].lhs.re);
        CHECK(seq[i].rhs.re == par[i].rhs.re);
        CHECK(seq[i].pass == par[i].pass);
    }
}

TEST_CASE("failures are structured, not thrown, in suites") {
    // every result carries a residual or an error; the suite never aborts
    auto rs = run_suite("S3", ctx, 1);
    REQUIRE(rs.size() == 1);
    CHECK(rs[0].error.empty());
    CHECK(rs[0].pass);
}

TEST_CASE("a cheap cross-section of every suite passes at digits 24") {
    PrecisionContext lo(24);
    for (const char* id : {"S1_sumrule_m3n1_even", "B10_ikm121", "B11_ikm131", "L3_241_Lf46_3",
                           "E1_id240", "E7_241_f46_vertical", "H4_jikk_2f1", "W3_iikk_x"}) {
        auto r = run(id, lo);
        CAPTURE(id);
        CHECK(r.pass);
    }
}
