#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <sstream>

#include "torus/experiments.hpp"

using namespace torus;
using Catch::Approx;

TEST_CASE("fits") {
    SECTION("exact power law") {
        std::vector<double> x, y;
        for (int i = 1; i <= 9; ++i) {
            x.push_back(i);
            y.push_back(3.0 * std::pow(i, 2.5));
        }
        const FitResult f = fit_loglog(x, y);
        REQUIRE(f.slope == Approx(2.5).margin(1e-12));
        REQUIRE(f.residual < 1e-12);
        REQUIRE(f.n == 9);
    }
    SECTION("exact dyadic decay") {
        std::vector<double> j, y;
        for (int i = 0; i <= 6; ++i) {
            j.push_back(i);
            y.push_back(5.0 * std::ldexp(1.0, -i));
        }
        const FitResult f = fit_log2_vs_index(j, y);
        REQUIRE(f.slope == Approx(-1.0).margin(1e-12));
        REQUIRE(f.intercept == Approx(std::log2(5.0)).margin(1e-12));
    }
}

TEST_CASE("csv formatting") {
    SweepRecord rec;
    rec.experiment = "demo";
    rec.params = {{"n", Cell{7LL}}, {"tag", Cell{std::string("x")}}};
    rec.measures = {{"value", 0.1}};
    rec.seed = 42;
    rec.resolution = "64";
    rec.oversample = 8;
    rec.version = tool_version;
    std::stringstream ss;
    write_csv(ss, {rec});
    const std::string text = ss.str();
    REQUIRE(text.find("experiment,n,tag,value,seed,resolution,oversample,tool_version\n") == 0);
    REQUIRE(text.find("demo,7,x,0.10000000000000001,42,64,8,") != std::string::npos);  // 17 digits
    // round trip through the printed representation
    const double parsed = std::strtod("0.10000000000000001", nullptr);
    REQUIRE(parsed == 0.1);
}

TEST_CASE("baseline store pins then checks") {
    const std::string path = "/tmp/torus_test_baseline.json";
    std::remove(path.c_str());
    {
        BaselineStore store(path);
        REQUIRE(store.pin_or_check("a", 2.0, 0.05));  // pins
        store.save();
    }
    {
        BaselineStore store(path);
        REQUIRE(store.contains("a"));
        REQUIRE(store.pin_or_check("a", 2.05, 0.05));
        REQUIRE_FALSE(store.pin_or_check("a", 2.5, 0.05));
    }
    std::remove(path.c_str());
}

TEST_CASE("sweep determinism and thread independence") {
    HarnessConfig cfg;
    cfg.seed = 777;
    cfg.threads = 1;
    const SweepResult a = cww_ratio_sweep(1, {4, 8}, 6, 16, cfg);
    cfg.threads = 2;
    const SweepResult b = cww_ratio_sweep(1, {4, 8}, 6, 16, cfg);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i)
        for (std::size_t q = 0; q < a.records[i].measures.size(); ++q)
            REQUIRE(a.records[i].measures[q].second == b.records[i].measures[q].second);
    // summary (max over trials) is permutation invariant by construction
    REQUIRE(a.summary == b.summary);
}

TEST_CASE("budget errors fail loudly") {
    REQUIRE_THROWS_AS(evaluate(TrigPoly::constant(2, {1, 0}), {16, 16}, std::size_t{1} << 20), budget_error);
    HarnessConfig cfg;
    REQUIRE_THROWS_AS(sharpness_sweep(2, 4, 10, cfg), budget_error);
}

TEST_CASE("lambda_p_sweep on a singleton set: ratio 1 for all p") {
    HarnessConfig cfg;
    cfg.grid_log2_cap = 6;
    const FreqSet E(2, {{3, 5}});
    const SweepResult r = lambda_p_sweep(E, {4, 8, 16}, 3, cfg);
    for (const auto& rec : r.records) REQUIRE(rec.measures[2].second == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("lambda_p_sweep on a dominant set keeps the d/2 growth bound") {
    HarnessConfig cfg;
    cfg.grid_log2_cap = 9;
    const TrigPoly f = random_poly(2, {40, 40}, 2024, CoeffLaw::ComplexGaussian);
    const FreqSet E = dominant_set(f);
    REQUIRE(d_e_count(E) == 1);
    const SweepResult r = lambda_p_sweep(E, {4, 8, 16}, 20, cfg);
    REQUIRE(r.fits.front().second.slope <= 1.25);
}

TEST_CASE("exp_integrability") {
    SECTION("constants give e^{c1}") {
        const TrigPoly c = TrigPoly::constant(2, {0, 3});
        REQUIRE(exp_integrability(c, 0.7) == Approx(std::exp(0.7)).epsilon(1e-10));
    }
    SECTION("monotone in c1") {
        const TrigPoly f = random_poly(2, {8, 8}, 31, CoeffLaw::RandomSign);
        double prev = 0.0;
        for (double c1 : {0.01, 0.05, 0.1}) {
            const double v = exp_integrability(f, c1);
            REQUIRE(v > prev);
            prev = v;
        }
    }
    SECTION("zero polynomial is degenerate") {
        REQUIRE_THROWS_AS(exp_integrability(TrigPoly(std::vector<int>{2, 2}), 0.05), std::invalid_argument);
    }
}

TEST_CASE("sharpness sweep records the expected quantities (d = 1 smoke)") {
    HarnessConfig cfg;
    cfg.grid_log2_cap = 10;
    const SweepResult r = sharpness_sweep(1, 1, 3, cfg);
    REQUIRE(r.records.size() == 3);
    // N = 1: V_2 coefficients 1,1,1 then 1/2 at |j|=3: weighted l2 =
    // sqrt(1 + 1/2 + (1/4)/3) -- direct-summation oracle
    const double expect = std::sqrt(1.0 + 0.5 + 0.25 / 3.0);
    REQUIRE(r.records[0].measures[0].second == Approx(expect).epsilon(1e-12));
    REQUIRE(r.fits.size() == 3);
}

TEST_CASE("lemma decay sweep fits are reproducible") {
    HarnessConfig cfg;
    const SweepResult a = lemma_decay_sweep(1, 6, 0, cfg);
    const SweepResult b = lemma_decay_sweep(1, 6, 0, cfg);
    REQUIRE(a.fits[0].second.slope == b.fits[0].second.slope);
    REQUIRE(a.records.size() == 49 + 7);
}
