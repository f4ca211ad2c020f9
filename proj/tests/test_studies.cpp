#include <doctest.h>

#include <cmath>
#include <json.hpp>
#include <random>

#include "helpers.hpp"
#include "ripple/energy.hpp"
#include "ripple/studies.hpp"

using namespace ripple;
using namespace testutil;

TEST_CASE("lattice sum oracle") {
    // brute-force double sum over the retained modes of the 8x8 grid, frozen
    CHECK(lattice_sum_oracle(8) == doctest::Approx(0.3625922224232499).epsilon(1e-14));
    std::vector<double> ns, sums;
    double prev = 0.0;
    for (int n : {16, 32, 64, 128, 256}) {
        const double s = lattice_sum_oracle(n);
        CHECK(s > prev);
        prev = s;
        ns.push_back(n);
        sums.push_back(s);
    }
    CHECK(std::abs(fit_loglog(ns, sums).slope - 0.5) <= 0.1);
    CHECK_THROWS_AS(lattice_sum_oracle(9), ConfigError);
}

TEST_CASE("fit_loglog examples") {
    const std::vector<double> x{1, 2, 4, 8, 16};
    std::vector<double> y;
    for (double v : x) y.push_back(3.0 * v * v);
    const LogLogFit f = fit_loglog(x, y);
    CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(f.stderr_ < 1e-12);
    CHECK(f.intercept == doctest::Approx(std::log(3.0)));

    CHECK(std::abs(fit_loglog(x, std::vector<double>(5, 7.0)).slope) < 1e-13);

    std::mt19937_64 rng(12);
    std::normal_distribution<double> nd;
    std::vector<double> xs, ys;
    for (int i = 0; i < 12; ++i) {
        const double t = std::ldexp(1.0, -i);
        xs.push_back(t);
        ys.push_back(std::pow(t, -5.0 / 12.0) * (1.0 + 0.01 * nd(rng)));
    }
    CHECK(std::abs(fit_loglog(xs, ys).slope + 5.0 / 12.0) <= 0.02);

    CHECK_THROWS(fit_loglog({1, 2, 3}, {1, 2, 3}));
    CHECK_THROWS(fit_loglog({1, 2, 3, 4}, {1, 0, 3, 4}));
    CHECK_THROWS(fit_loglog({1, 2, 3, 4}, {1, -2, 3, 4}));
}

TEST_CASE("sample statistics") {
    CHECK(pairwise_sum({1e16, 1.0, -1e16, 1.0}) == pairwise_sum({1e16, 1.0, -1e16, 1.0}));
    std::vector<double> ones(1000, 0.1);
    CHECK(std::abs(pairwise_sum(ones) - 100.0) < 1e-12);

    const SampleSummary one = summarize({3.0});
    CHECK(one.mean == 3.0);
    CHECK(std::isnan(one.stderr_));

    const SampleSummary s = summarize({1, 2, 3, 4});
    CHECK(s.mean == doctest::Approx(2.5));
    CHECK(s.stderr_ == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));

    CHECK(moment_p({-2.0, 2.0}, 4.0).mean == doctest::Approx(2.0));
    CHECK(moment_p({1.0, -3.0}, 2.0).mean == doctest::Approx(std::sqrt(5.0)));

    CHECK(relative_spread({2.0, 3.0, 2.5}) == doctest::Approx(0.5));
    CHECK(std::isinf(relative_spread({0.0, 1.0})));
}

TEST_CASE("slope checks need resolution and monotonicity") {
    const std::vector<double> x{1, 2, 4, 8}, up{1, 2, 4, 8}, bumpy{1, 3, 2, 8};
    CHECK(detail::slope_check("ok", x, up, 1.0, 0.05, +1).passed);
    CHECK_FALSE(detail::slope_check("wrong_dir", x, up, 1.0, 0.05, -1).passed);
    CHECK_FALSE(detail::slope_check("bumpy", x, bumpy, 1.0, 0.5, +1).passed);
    CHECK_FALSE(detail::slope_check("off", x, up, 0.5, 0.05, +1).passed);
    const StudyCheck few = detail::slope_check("few", {1, 2, 4}, {1, 2, 4}, 1.0, 0.05, +1);
    CHECK_FALSE(few.passed);
    CHECK(few.note.find("under-resolved") != std::string::npos);

    std::vector<StudyRow> rows;
    detail::slope_check("ok", x, up, 1.0, 0.05, +1, &rows);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].series == "ok_fit");
    CHECK(rows[0].value == doctest::Approx(1.0));

    CHECK(detail::strictly_monotone({3, 2, 1}, -1));
    CHECK_FALSE(detail::strictly_monotone({3, 3, 1}, -1));
}

TEST_CASE("corpus fields") {
    const Grid g32(32, 32), g64(64, 64);
    const int size = 20;
    const Field a = corpus_field(g32, 3, size), b = corpus_field(g64, 3, size);
    const Spectrum sa = transform(a), sb = transform(b);
    for (int m1 = 0; m1 <= 6; ++m1)
        for (int m2 = -6; m2 <= 6; ++m2)
            CHECK(std::abs(sa.at(m1, m2 < 0 ? m2 + 32 : m2) - sb.at(m1, m2 < 0 ? m2 + 64 : m2)) < 1e-12);
    CHECK(anharmonic(corpus_field(g32, 0, size)) == doctest::Approx(1e-2).epsilon(1e-6));
    CHECK(anharmonic(corpus_field(g32, size - 1, size)) == doctest::Approx(1e2).epsilon(1e-6));
    CHECK(anharmonic(corpus_field(g32, 0, size, 0, 1e-8, 1.0)) == doctest::Approx(1e-8).epsilon(1e-6));
    CHECK(corpus_field(g32, 4, size, 1).values != corpus_field(g32, 4, size, 2).values);
    CHECK_THROWS_AS(corpus_field(Grid(12, 12), 0, size), ConfigError);
}

TEST_CASE("report plumbing") {
    StudyReport r;
    r.name = "demo";
    CHECK_FALSE(r.passed());
    r.rows.push_back({"a", 1.0, 2.0, std::nan("")});
    r.rows.push_back({"a", 2.0, 3.0, 0.5});
    r.checks.push_back({"c1", 1.0, 1.0, 0.1, true, "note"});
    CHECK(r.passed());
    CHECK(r.check("c1") != nullptr);
    CHECK(r.check("zz") == nullptr);
    const std::string csv = r.csv();
    CHECK(csv.rfind("series,param,value,stderr\n", 0) == 0);
    CHECK(csv.find("a,1,2,\n") != std::string::npos);
    const auto j = nlohmann::json::parse(r.summary());
    CHECK(j["study"] == "demo");
    CHECK(j["passed"] == true);
    CHECK(j["checks"][0]["note"] == "note");
    r.checks.push_back({"c2", 3.0, 1.0, 0.1, false, ""});
    CHECK_FALSE(r.passed());
}

TEST_CASE("registry") {
    CHECK(study_names().size() == 14);
    CHECK_THROWS_AS(run_study("nope", StudyConfig{}), ConfigError);
}

TEST_CASE("coercivity with zero noise gives C = 0") {
    StudyConfig c;
    c.zero_noise = true;
    c.n_list = {32, 64};
    c.corpus = 20;
    const StudyReport r = run_study("coercivity", c);
    REQUIRE(r.check("C_zero_for_zero_noise") != nullptr);
    CHECK(r.check("C_zero_for_zero_noise")->observed == 0.0);
    CHECK(r.passed());
}

TEST_CASE("studies are reproducible from (name, config, seed)") {
    StudyConfig c;
    c.n = 32;
    c.samples = 16;
    c.seed = 7;
    const StudyReport a = run_study("v_increments", c), b = run_study("v_increments", c);
    CHECK(a.csv() == b.csv());
    c.seed = 8;
    CHECK(run_study("v_increments", c).csv() != a.csv());
}
