#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "ripple/noise.hpp"
#include "ripple/stats.hpp"

using namespace ripple;
using namespace testutil;

namespace {

EnsembleSpec spec_of(EnsembleKind kind, const Grid& g, double ell, std::uint64_t samples) {
    EnsembleSpec s;
    s.kind = kind;
    s.grid = g;
    s.ell = ell;
    s.seed = 4242;
    s.sample_count = samples;
    return s;
}

// z-score of the sample mean against zero
double zscore(const std::vector<double>& xs) {
    const SampleSummary s = summarize(xs);
    return std::abs(s.mean) / s.stderr_;
}

}  // namespace

TEST_CASE("white noise is deterministic in (seed, index)") {
    const Grid g(32, 32);
    const Field a = sample_white(g, 9, 3), b = sample_white(g, 9, 3), c = sample_white(g, 9, 4);
    CHECK(a.values == b.values);
    CHECK(a.values != c.values);
    // low modes agree across resolutions
    const Spectrum s32 = transform(a), s64 = transform(sample_white(Grid(64, 64), 9, 3));
    CHECK(std::abs(s32.at(3, 2) - s64.at(3, 2)) < 1e-12);
    CHECK(std::abs(s32.at(2, 32 - 5) - s64.at(2, 64 - 5)) < 1e-12);
}

TEST_CASE("white noise isometry and centering") {
    const Grid g(32, 32);
    const std::size_t n = 512;
    const Field phi = Field::from_function(g, [](double x1, double) { return std::cos(kTwoPi * x1); });
    std::vector<double> pair(n), re(n), im(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Field xi = sample_white(g, 77, i);
        pair[i] = inner(xi, phi);
        const cplx c = transform(xi).at(2, 3);
        re[i] = c.real();
        im[i] = c.imag();
    }
    const SampleSummary m = summarize(pair);
    const double var = m.stderr_ * m.stderr_ * double(n);
    const double ratio = var / 0.5;  // |P phi|^2 = 1/2
    CHECK(ratio >= 0.85);
    CHECK(ratio <= 1.15);
    CHECK(std::abs(summarize(re).mean) <= 4.0 / std::sqrt(double(n)));
    CHECK(std::abs(summarize(im).mean) <= 4.0 / std::sqrt(double(n)));
}

TEST_CASE("white noise drops Nyquist modes") {
    const Grid g(16, 16);
    const Spectrum s = sample_white_spectrum(g, 1);
    for (int j2 = 0; j2 < 16; ++j2) CHECK(std::abs(s.at(8, j2)) == 0.0);
    for (int m1 = 0; m1 <= 8; ++m1) CHECK(std::abs(s.at(m1, 8)) == 0.0);
}

TEST_CASE("mollified ensemble") {
    const Grid g(32, 32);
    const Field w = sample_white(g, 4242, 5);
    CHECK(sample_approx(spec_of(EnsembleKind::gaussian_mollified, g, 0.0, 10), 5).values == w.values);

    const double ell = 0.1;
    const auto spec = spec_of(EnsembleKind::gaussian_mollified, g, ell, 512);
    std::vector<double> pw;
    for (std::size_t i = 0; i < 512; ++i) pw.push_back(std::norm(transform(sample_approx(spec, i)).at(1, 0)));
    const SampleSummary m = summarize(pw);
    const double oracle = std::exp(-2.0 * ell * ell * ell * std::pow(kTwoPi, 3));
    CHECK(std::abs(m.mean - oracle) <= 4.0 * m.stderr_);
}

TEST_CASE("lattice ensemble is centered and symmetric") {
    const Grid g(32, 32);
    const auto spec = spec_of(EnsembleKind::nongaussian_lattice, g, 0.125, 512);
    std::vector<double> x, x3;
    for (std::size_t i = 0; i < 512; ++i) {
        const double v = sample_approx(spec, i).at(5, 7);
        x.push_back(v);
        x3.push_back(v * v * v);
    }
    CHECK(zscore(x) <= 4.0);
    CHECK(zscore(x3) <= 4.0);
}

TEST_CASE("linear SGI spot check, all ensembles") {
    const Grid g(32, 32);
    const Field phi = Field::from_function(g, [](double x1, double) { return std::cos(kTwoPi * x1); });
    for (auto [kind, ell] : {std::pair{EnsembleKind::white, 0.0}, std::pair{EnsembleKind::gaussian_mollified, 0.125},
                             std::pair{EnsembleKind::nongaussian_lattice, 0.125}}) {
        const auto spec = spec_of(kind, g, ell, 512);
        std::vector<double> xs;
        for (std::size_t i = 0; i < 512; ++i) xs.push_back(inner(sample_approx(spec, i), phi));
        const SampleSummary s = summarize(xs);
        CHECK(s.stderr_ * s.stderr_ * 512.0 / 0.5 <= 1.15);
    }
}

TEST_CASE("second moments are shift invariant") {
    const Grid g(32, 32);
    std::vector<double> a, b;
    for (std::size_t i = 0; i < 1024; ++i) {
        const Field xi = sample_white(g, 3, i);
        a.push_back(xi.at(4, 4) * xi.at(5, 4));
        b.push_back(xi.at(5, 4) * xi.at(6, 4));
    }
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    CHECK(zscore(d) <= 4.0);
}

TEST_CASE("ensemble spec validation") {
    const Grid g(32, 32);
    CHECK_THROWS_AS(spec_of(EnsembleKind::white, g, 0.1, 4).validate(), ConfigError);
    CHECK_THROWS_AS(spec_of(EnsembleKind::nongaussian_lattice, g, 0.01, 4).validate(), ConfigError);
    CHECK_THROWS_AS(spec_of(EnsembleKind::nongaussian_lattice, g, 0.0, 4).validate(), ConfigError);
    CHECK_THROWS_AS(spec_of(EnsembleKind::white, g, 0.0, 0).validate(), ConfigError);
    CHECK_NOTHROW(spec_of(EnsembleKind::gaussian_mollified, g, 0.01, 4).validate());
    CHECK_THROWS_AS(sample_approx(spec_of(EnsembleKind::white, g, 0.0, 4), 4), Error);
}

TEST_CASE("odd transforms") {
    CHECK_THROWS(validate_odd_transform([](double z) { return z * z; }, "even"));
    CHECK_THROWS(validate_odd_transform([](double z) { return 2.0 * z; }, "steep"));
    CHECK_NOTHROW(validate_odd_transform([](double z) { return std::tanh(z); }, "tanh"));
    CHECK_THROWS_AS(make_transform("nope"), ConfigError);

    // E[T(Z)^2] = 1 by trapezoid quadrature against the normal density
    for (const auto& id : transform_ids()) {
        const OddTransform t = make_transform(id);
        double acc = 0.0;
        const double h = 1e-3;
        for (double z = -12.0; z <= 12.0; z += h) acc += t(z) * t(z) * std::exp(-0.5 * z * z) * h;
        CHECK(rel(acc / std::sqrt(kTwoPi), 1.0) < 1e-6);
        CHECK(t(0.7) == doctest::Approx(-t(-0.7)));
    }
}

TEST_CASE("run_ensemble") {
    const Grid g(16, 16);
    auto spec = spec_of(EnsembleKind::white, g, 0.0, 64);
    const std::vector<double> Ts{0.5, 0.1, 0.02};
    const auto stat = named_statistic("xi_T_rms", Ts);
    const auto r1 = run_ensemble(spec, Ts, stat), r2 = run_ensemble(spec, Ts, stat);
    REQUIRE(r1.size() == 3);
    for (std::size_t j = 0; j < 3; ++j) {
        CHECK(r1[j].mean == r2[j].mean);
        CHECK(r1[j].moment == r2[j].moment);
        CHECK(r1[j].n == 64);
        CHECK(r1[j].mean_stderr > 0.0);
    }
    CHECK(r1[0].mean < r1[2].mean);

    spec.sample_count = 1;
    CHECK(std::isnan(run_ensemble(spec, Ts, stat)[0].mean_stderr));

    spec.sample_count = 8;
    const SampleStatistic bad = [](const Field&, std::uint64_t i) {
        return std::vector<double>{i == 5 ? std::nan("") : 1.0};
    };
    try {
        run_ensemble(spec, {1.0}, bad);
        FAIL("expected abort");
    } catch (const NumericalAbort& e) {
        CHECK(e.sample_index() == 5);
    }
    CHECK_THROWS_AS(named_statistic("nope", Ts), ConfigError);
}
