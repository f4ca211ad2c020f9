#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "helpers.hpp"
#include "ripple/anorm.hpp"
#include "ripple/field_io.hpp"
#include "ripple/noise.hpp"

using namespace ripple;
using namespace testutil;

namespace {
Field fn(const Grid& g, double (*f)(double, double)) { return Field::from_function(g, f); }
const Grid G16(16, 16);
}  // namespace

TEST_CASE("grid rejects odd or tiny sizes") {
    CHECK_THROWS_AS(Grid(15, 16), ConfigError);
    CHECK_THROWS_AS(Grid(16, 6), ConfigError);
    CHECK_NOTHROW(Grid(8, 8));
}

TEST_CASE("transform of constant and cosine") {
    Field one = fn(G16, [](double, double) { return 1.0; });
    Spectrum s = transform(one);
    CHECK(std::abs(s.at(0, 0) - cplx(1.0, 0.0)) < 1e-14);
    double rest = 0.0;
    for (std::size_t i = 1; i < s.coeffs.size(); ++i) rest = std::max(rest, std::abs(s.coeffs[i]));
    CHECK(rest < 1e-14);

    Field c = fn(G16, [](double x1, double) { return std::cos(kTwoPi * x1); });
    Spectrum sc = transform(c);
    CHECK(std::abs(sc.at(1, 0) - cplx(0.5, 0.0)) < 1e-14);
}

TEST_CASE("round trip and Parseval") {
    Grid g(32, 16);
    Field f = random_band_limited(g, 15, 7, 3, false);
    for (auto& v : f.values) v += 0.1 * std::sin(v * 7.0);  // full-band content
    Field back = inverse(transform(f));
    CHECK(max_diff(f, back) < 1e-12 * f.max_abs());
    CHECK(rel(inner(f, f), norm2_sq(transform(f))) < 1e-12);
}

TEST_CASE("symbol values") {
    const Symbol L = symbols::lop();
    CHECK(std::abs(L.eval(kTwoPi, kTwoPi).real() - (4 * kPi * kPi + kTwoPi)) < 1e-12);
    CHECK(symbols::heat(0.3).eval(0.0, 0.0).real() == 1.0);
}

TEST_CASE("R1 examples") {
    Field s = fn(G16, [](double x1, double) { return std::sin(kTwoPi * x1); });
    Field c = fn(G16, [](double x1, double) { return std::cos(kTwoPi * x1); });
    CHECK(max_diff(hilbert_r1(s), c) < 1e-14);
    Field mc = -1.0 * s;
    CHECK(max_diff(hilbert_r1(c), mc) < 1e-14);
    Field f = random_band_limited(G16, 7, 7, 11, false);
    CHECK(max_diff(hilbert_r1(hilbert_r1(f)), -1.0 * project_p(f)) < 1e-13);
}

TEST_CASE("projection P") {
    Field one = fn(G16, [](double, double) { return 1.0; });
    CHECK(project_p(one).max_abs() < 1e-15);
    Field c2 = fn(G16, [](double, double x2) { return std::cos(kTwoPi * x2); });
    CHECK(project_p(c2).max_abs() < 1e-15);
    Field both = fn(G16, [](double x1, double x2) { return std::cos(kTwoPi * x1) + std::cos(kTwoPi * x2); });
    Field c1 = fn(G16, [](double x1, double) { return std::cos(kTwoPi * x1); });
    Field p = project_p(both);
    CHECK(max_diff(p, c1) < 1e-14);
    CHECK(p.mean_x1_zero);
    Field f = random_band_limited(G16, 7, 7, 5, false);
    Spectrum sf = transform(f);
    CHECK(project_p(project_p(sf)).coeffs == project_p(sf).coeffs);
}

TEST_CASE("solve_linear examples") {
    const double s11 = 4 * kPi * kPi + kTwoPi;
    Field c1 = fn(G16, [](double x1, double) { return std::cos(kTwoPi * x1); });
    CHECK(max_diff(solve_linear(c1), (1.0 / (4 * kPi * kPi)) * c1) < 1e-15);
    Field c2 = fn(G16, [](double, double x2) { return std::cos(kTwoPi * x2); });
    CHECK(solve_linear(c2).max_abs() < 1e-16);
    Field cc = fn(G16, [](double x1, double x2) { return std::cos(kTwoPi * x1) * std::cos(kTwoPi * x2); });
    CHECK(max_diff(solve_linear(cc), (1.0 / s11) * cc) < 1e-15);
    Field xi = sample_white(Grid(32, 32), 9);
    Field v = solve_linear(xi);
    CHECK(v.mean_x1_zero);
    CHECK(rel_diff(apply_symbol(v, symbols::lop()), project_p(xi)) < 1e-12);
}

TEST_CASE("smoothing") {
    const double T = 0.01;
    Field c2 = fn(G16, [](double, double x2) { return std::cos(kTwoPi * x2); });
    CHECK(max_diff(smooth(c2, T), std::exp(-4 * kPi * kPi * T) * c2) < 1e-15);
    Field c1 = fn(G16, [](double x1, double) { return std::cos(kTwoPi * x1); });
    CHECK(max_diff(smooth(c1, T), std::exp(-8 * kPi * kPi * kPi * T) * c1) < 1e-15);
    Field f = random_band_limited(G16, 7, 7, 2, false);
    CHECK(rel_diff(smooth(smooth(f, 0.001), 0.002), smooth(f, 0.003)) < 1e-12);
    CHECK(std::abs(transform(smooth(f, 0.5)).at(0, 0) - transform(f).at(0, 0)) < 1e-15);
    CHECK_THROWS(smooth(f, 0.0));
}

TEST_CASE("fractional derivatives") {
    Field c1 = fn(G16, [](double x1, double) { return std::cos(kTwoPi * x1); });
    CHECK(max_diff(frac_deriv(c1, 1, 0.5), std::sqrt(kTwoPi) * c1) < 1e-14);
    Field s2 = fn(G16, [](double, double x2) { return std::sin(kTwoPi * x2); });
    CHECK(max_diff(frac_deriv(s2, 2, 2.0 / 3.0), std::pow(kTwoPi, 2.0 / 3.0) * s2) < 1e-14);
    Field f = random_band_limited(G16, 7, 7, 4, true);
    CHECK(rel_diff(frac_deriv(frac_deriv(f, 1, 0.5), 1, -0.5), project_p(f)) < 1e-13);
    Field raw = random_band_limited(G16, 7, 7, 4, false);
    CHECK_THROWS_AS(frac_deriv(raw, 1, -0.5), Error);
    // singular symbols behind P only
    CHECK_THROWS_AS(apply_symbol(raw, symbols::lop()), Error);
}

TEST_CASE("dealiased product") {
    Grid g8(8, 8);
    Field c = fn(g8, [](double x1, double) { return std::cos(kTwoPi * x1); });
    Field expect = fn(g8, [](double x1, double) { return 0.5 + 0.5 * std::cos(2 * kTwoPi * x1); });
    CHECK(max_diff(dealiased_product(c, c), expect) < 1e-14);
    Field zero(g8);
    CHECK(dealiased_product(c, zero).max_abs() == 0.0);

    // sin^2 on N = 8: the true product has a k1 = +-2 mode only; compare with a 4x grid.
    Field s = fn(g8, [](double x1, double) { return std::sin(kTwoPi * x1); });
    Spectrum p = transform(dealiased_product(s, s));
    CHECK(std::abs(p.at(0, 0) - cplx(0.5, 0.0)) < 1e-15);
    Grid g32(32, 32);
    Field s32 = fn(g32, [](double x1, double) { return std::sin(kTwoPi * x1); });
    Field ref32 = s32;
    for (std::size_t i = 0; i < ref32.values.size(); ++i) ref32.values[i] *= s32.values[i];
    Spectrum r = transform(ref32);
    CHECK(std::abs(p.at(2, 0) - r.at(2, 0)) < 1e-15);

    // band-limited below N/4: agrees with the product on a 4x refined grid
    Grid g(32, 32);
    Field a = random_band_limited(g, 7, 7, 21, false), b = random_band_limited(g, 7, 7, 22, false);
    Field prod = dealiased_product(a, b);
    Spectrum pa = transform(a), pb = transform(b);
    Grid gf(128, 128);
    auto refine = [&](const Spectrum& sp) {
        Spectrum out(gf);
        for (int j2 = 0; j2 < g.n2(); ++j2) {
            const int m2 = g.mode2(j2);
            for (int m1 = 0; m1 < g.spec_cols(); ++m1) out.at(m1, m2 >= 0 ? m2 : m2 + gf.n2()) = sp.at(m1, j2);
        }
        return inverse(out);
    };
    Field fa = refine(pa), fb = refine(pb);
    for (std::size_t i = 0; i < fa.values.size(); ++i) fa.values[i] *= fb.values[i];
    Field back = refine(transform(prod));
    CHECK(rel_diff(back, fa) < 1e-10);
}

TEST_CASE("difference quotients") {
    Field one = fn(G16, [](double, double) { return 1.0; });
    CHECK(diff_quotient(one, 1, 1.0 / 16).max_abs() == 0.0);
    for (int m : {1, 3, 8}) {
        const double h = m / 16.0;
        Field s = fn(G16, [](double x1, double) { return std::sin(kTwoPi * x1); });
        const double l2 = lp_norm(diff_quotient(s, 1, h), 2.0);
        CHECK(std::abs(l2 - std::sqrt(2.0) * std::abs(std::sin(kPi * h))) < 1e-12);
    }
    Field f = random_band_limited(G16, 7, 7, 8, true);
    Field d = scaled_dq(f, 2, 1.0 / 16);
    Field e = diff_quotient(f, 2, 1.0 / 16);
    CHECK(rel_diff(d, std::pow(16.0, 2.0 / 3.0) * e) < 1e-15);
    CHECK_THROWS_AS(diff_quotient(f, 1, 0.01), Error);
}

TEST_CASE("testing identity") {
    Grid g(64, 64);
    Field xi = sample_white(g, 1);
    Spectrum v = solve_linear(transform(xi));
    Spectrum w = transform(random_band_limited(g, 20, 20, 17, true));
    const double a = inner(deriv(w, 1), deriv(v, 1));
    const double b = inner(frac_deriv(deriv(w, 2), 1, -0.5), frac_deriv(deriv(v, 2), 1, -0.5));
    const double c = inner(w, transform(xi));
    CHECK(std::abs(a + b - c) < 1e-10 * std::max({std::abs(a), std::abs(b), std::abs(c)}));
}

TEST_CASE("field file round trip") {
    const auto dir = std::filesystem::temp_directory_path() / "ripple_io_test";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "f.ripl").string();
    Field f = random_band_limited(Grid(16, 8), 5, 3, 1, false);
    write_field(path, f);
    Field g = read_field(path);
    CHECK(g.grid == f.grid);
    CHECK(std::memcmp(g.values.data(), f.values.data(), f.values.size() * sizeof(double)) == 0);

    FieldMeta m;
    m.seed = 42;
    m.ensemble = "white";
    m.t = 0.125;
    write_sidecar(path, m);
    auto back = read_sidecar(path);
    REQUIRE(back);
    CHECK(*back->seed == 42);
    CHECK(back->t == 0.125);

    const std::string bad = (dir / "bad.ripl").string();
    {
        std::ofstream os(bad, std::ios::binary);
        os << "NOPE0000000000000000";
    }
    try {
        read_field(bad);
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find(bad) != std::string::npos);
    }
    const std::string future = (dir / "future.ripl").string();
    {
        std::ofstream os(future, std::ios::binary);
        const std::uint32_t hdr[3] = {99, 16, 8};
        os.write("RIPL", 4);
        os.write(reinterpret_cast<const char*>(hdr), sizeof hdr);
    }
    CHECK_THROWS_AS(read_field(future), Error);
    const std::string trunc = (dir / "trunc.ripl").string();
    {
        std::ofstream os(trunc, std::ios::binary);
        const std::uint32_t hdr[3] = {1, 16, 8};
        os.write("RIPL", 4);
        os.write(reinterpret_cast<const char*>(hdr), sizeof hdr);
        os.write("abc", 3);
    }
    CHECK_THROWS_AS(read_field(trunc), Error);
    std::filesystem::remove_all(dir);
}
