#include "doctest.h"
#include "kglab/chromatic.hpp"
#include "kglab/constructions.hpp"
#include "kglab/invariants.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace kglab;

TEST_CASE("chromatic_number examples") {
    const auto r = chromatic_number(support::petersen());
    CHECK(r.value == ChromaticValue::finite(3));
    REQUIRE(r.coloring);
    CHECK(is_proper(support::petersen(), *r.coloring));
    CHECK(r.coloring->color_count() == 3);

    CHECK(chromatic_number(kneser(complete_uniform(7, 2), 3)).value == ChromaticValue::finite(2));
    const auto loop = Hypergraph::from_lists(3, {{1}, {2, 3}});
    CHECK(chromatic_number(loop).value == ChromaticValue::infinite());
    CHECK(chromatic_number(Hypergraph(0, {})).value == ChromaticValue::finite(1));
    CHECK(chromatic_number(support::edgeless(4)).value == ChromaticValue::finite(1));

    const auto capped = chromatic_number(kneser(complete_uniform(6, 2), 2), 3);
    CHECK(capped.value == ChromaticValue::exceeds(3));
    CHECK_FALSE(capped.coloring);
    CHECK(capped.value.to_string() == "EXCEEDS(3)");
}

TEST_CASE("solver agrees with exhaustive colouring for n <= 8") {
    oracle::Rng rng(8);
    for (int trial = 0; trial < 150; ++trial) {
        const auto h = oracle::random_hypergraph(rng, 8, 14, 3);
        const auto got = chromatic_number(h);
        const auto want = oracle::chromatic(h, 8);
        if (!want) {
            CHECK(got.value == ChromaticValue::infinite());
        } else {
            CHECK(got.value == ChromaticValue::finite(*want));
            REQUIRE(got.coloring);
            CHECK(is_proper(h, *got.coloring));
        }
    }
}

TEST_CASE("formula_kneser matches the solver") {
    CHECK(formula_kneser(5, 2, 2) == 3);
    CHECK(formula_kneser(7, 2, 3) == 2);
    for (int r = 2; r <= 4; ++r)
        for (int k = 1; k <= 3; ++k) CHECK(formula_kneser(r * k, k, r) == 2);
    CHECK(support::code_of([] { formula_kneser(5, 3, 2); }) == ErrorCode::OutOfProvenRange);

    // C(n,k) <= 25; (k = 1, r = 3) stops at n = 12 where the refutation
    // turns into a large pigeonhole search
    const int binom[9][4] = {{0}, {1, 1}, {1, 2, 1}, {1, 3, 3, 1}, {1, 4, 6, 4}, {1, 5, 10, 10},
                             {1, 6, 15, 20}, {1, 7, 21, 35}, {1, 8, 28, 56}};
    for (int r = 2; r <= 3; ++r)
        for (int k = 1; k <= 3; ++k)
            for (int n = r * k; n <= 25; ++n) {
                const int c = n <= 8 ? binom[n][k] : (k == 1 ? n : 100);
                if (c > 25) continue;
                if (k == 1 && r == 3 && n > 12) continue;
                const auto chi = chromatic_number(kneser(complete_uniform(n, k), r));
                CHECK_MESSAGE(chi.value == ChromaticValue::finite(formula_kneser(n, k, r)),
                              "n=" << n << " k=" << k << " r=" << r);
            }
}

TEST_CASE("formula_hnka") {
    CHECK(formula_hnka(7, 2, 3, 2) == 4);
    CHECK(formula_hnka(9, 2, 7, 3) == 1);
    CHECK(chromatic_number(kneser(hnka(9, 2, 7), 3)).value == ChromaticValue::finite(1));
    CHECK(support::code_of([] { formula_hnka(9, 2, 4, 3); }) == ErrorCode::OutOfProvenRange);

    const auto low = check_formula_hnka(7, 2, 0, 2);
    CHECK(low.formula == 6);
    REQUIRE(low.exact);
    CHECK(*low.exact == ChromaticValue::finite(5));
    CHECK(low.discrepancy);

    const auto ok = check_formula_hnka(7, 2, 3, 2);
    CHECK(ok.formula == 4);
    REQUIRE(ok.exact);
    CHECK(*ok.exact == ChromaticValue::finite(4));
    CHECK_FALSE(ok.discrepancy);
}

TEST_CASE("product_chromatic") {
    const std::vector<Hypergraph> one{support::petersen()};
    CHECK(product_chromatic(one).value == ChromaticValue::finite(3));

    const std::vector<Hypergraph> pp{support::petersen(), support::petersen()};
    const auto r = product_chromatic(pp);
    CHECK(r.value == ChromaticValue::finite(3));
    REQUIRE(r.coloring);
    CHECK(product_is_proper(pp, *r.coloring));

    const std::vector<Hypergraph> mp{kneser(complete_uniform(4, 2), 2), support::petersen()};
    CHECK(product_chromatic(mp).value == ChromaticValue::finite(2));

    // agrees with the materialised minimal product
    oracle::Rng rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<Hypergraph> factors{oracle::random_loopless(rng, 4, 4), oracle::random_loopless(rng, 4, 4)};
        const auto prod = product_minimal(factors);
        const auto implicit = product_chromatic(factors);
        CHECK(implicit.value == chromatic_number(prod).value);
        // projection colourings bound the product by the smallest factor
        const auto a = chromatic_number(factors[0]).value.value();
        const auto b = chromatic_number(factors[1]).value.value();
        CHECK(implicit.value.value() <= std::min(a, b));
    }
}

TEST_CASE("bound_report") {
    const std::vector<Hypergraph> kk{complete_uniform(5, 2), complete_uniform(5, 2)};
    const auto rep = bound_report(kk, 2, true);
    CHECK(rep.product_ecd_bound == 3);
    CHECK(rep.product_alt_bound == 3);
    REQUIRE(rep.exact);
    CHECK(*rep.exact == ChromaticValue::finite(3));
    CHECK(rep.zhu == ZhuStatus::Verified);

    const std::vector<Hypergraph> h{hnka(7, 2, 3)};
    const auto single = bound_report(h, 2, true);
    CHECK(single.product_ecd_bound == 4);
    REQUIRE(single.exact);
    CHECK(*single.exact == ChromaticValue::finite(4));
    REQUIRE(single.cd_bound);
    CHECK(*single.cd_bound <= 4);

    const std::vector<Hypergraph> with_empty{support::edgeless(3), complete_uniform(5, 2)};
    const auto e = bound_report(with_empty, 2, true);
    CHECK(e.product_ecd_bound == 0);
    REQUIRE(e.exact);
    CHECK(*e.exact == ChromaticValue::finite(1));
    CHECK(e.zhu == ZhuStatus::Verified);

    const auto j = to_json(rep);
    CHECK(j["zhu_status"] == "VERIFIED");
    CHECK(format_table(rep).find("product bound (ecd)") != std::string::npos);
}

TEST_CASE("lower bounds hold on small single factors") {
    oracle::Rng rng(404);
    for (int trial = 0; trial < 60; ++trial) {
        const auto h = oracle::random_hypergraph(rng, 7, 10);
        for (int r = 2; r <= 3; ++r) {
            const std::vector<Hypergraph> f{h};
            const auto rep = bound_report(f, r, true, 6);
            if (!rep.exact || !rep.exact->is_finite()) continue;
            const int chi = rep.exact->value();
            CHECK(rep.product_ecd_bound <= chi);
            CHECK(rep.product_alt_bound <= chi);
            CHECK(*rep.cd_bound <= *rep.alt_bound);
            CHECK(*rep.alt_bound <= chi);
            CHECK(*rep.cd_bound <= rep.product_ecd_bound);
        }
    }
}
