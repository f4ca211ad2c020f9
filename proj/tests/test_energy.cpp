#include <doctest.h>

#include "helpers.hpp"
#include "ripple/anorm.hpp"
#include "ripple/energy.hpp"
#include "ripple/noise.hpp"

using namespace ripple;
using namespace testutil;

namespace {

// Refined-grid oracle: pointwise products on a 4x grid are exact for the
// low bands used here, so no dealiasing is involved.
struct Fine {
    Grid coarse, fine;
    explicit Fine(const Grid& g) : coarse(g), fine(4 * g.n1(), 4 * g.n2()) {}
    Field up(const Field& f) const {
        Spectrum s = transform(f), out(fine);
        for (int j2 = 0; j2 < coarse.n2(); ++j2) {
            const int m2 = coarse.mode2(j2);
            for (int m1 = 0; m1 < coarse.spec_cols(); ++m1) out.at(m1, m2 >= 0 ? m2 : m2 + fine.n2()) = s.at(m1, j2);
        }
        out.mean_x1_zero = f.mean_x1_zero;
        return inverse(out);
    }
};

Field mul(Field a, const Field& b) {
    for (std::size_t i = 0; i < a.values.size(); ++i) a.values[i] *= b.values[i];
    a.mean_x1_zero = false;
    return a;
}

double oracle_anharmonic(const Field& wf) {
    Field eta = deriv(wf, 2) - 0.5 * deriv(mul(wf, wf), 1);
    eta.mean_x1_zero = true;
    return inner(deriv(wf, 1), deriv(wf, 1)) + lp_norm(frac_deriv(eta, 1, -0.5), 2.0) * lp_norm(frac_deriv(eta, 1, -0.5), 2.0);
}

std::array<double, 6> oracle_g(const Field& vf, const Field& Ff, const Field& wf) {
    Field eta = deriv(wf, 2) - 0.5 * deriv(mul(wf, wf), 1);
    eta.mean_x1_zero = true;
    const Field r1eta = hilbert_r1(eta);
    const Field vw = mul(vf, wf);
    std::array<double, 6> g{};
    g[0] = inner(mul(wf, wf), hilbert_r1(deriv(vf, 2)));
    g[1] = inner(mul(vf, vf), r1eta);
    g[2] = 2.0 * inner(vw, r1eta);
    g[3] = 2.0 * inner(wf, Ff);
    g[4] = -inner(vw, hilbert_r1(deriv(mul(vf, vf), 1)));
    const Field h = hilbert_r1(frac_deriv(project_p(vw), 1, 0.5));
    g[5] = inner(h, h);
    return g;
}

}  // namespace

TEST_CASE("burgers examples") {
    Grid g(16, 16);
    CHECK(burgers(Field(g)).max_abs() == 0.0);
    Field s = Field::from_function(g, [](double x1, double) { return std::sin(kTwoPi * x1); });
    Field expect = Field::from_function(g, [](double x1, double) { return -kPi * std::sin(2 * kTwoPi * x1); });
    CHECK(max_diff(burgers(s), expect) < 1e-10);

    Field v = random_band_limited(g, 4, 4, 1), w = random_band_limited(g, 4, 4, 2);
    Field lhs = burgers(v + w);
    Field rhs = burgers(v) + burgers(w) - deriv(dealiased_product(v, w), 1);
    CHECK(rel_diff(lhs, rhs) < 1e-10);
}

TEST_CASE("anharmonic energy hand values") {
    Grid g(32, 16);
    CHECK(anharmonic(Field(g)) == 0.0);
    for (double A : {0.5, 1.0, 2.0}) {
        Field w = Field::from_function(g, [A](double x1, double) { return A * std::sin(kTwoPi * x1); });
        w.mean_x1_zero = true;
        const double expect = 2 * kPi * kPi * A * A + kPi * A * A * A * A / 8.0;
        CHECK(rel(anharmonic(w), expect) < 1e-10);
    }
    Field w = Field::from_function(g, [](double x1, double x2) { return std::sin(kTwoPi * x1) * std::cos(kTwoPi * x2); });
    w.mean_x1_zero = true;
    Fine fine(g);
    CHECK(rel(anharmonic(w), oracle_anharmonic(fine.up(w))) < 1e-8);
    Field bad = Field::from_function(g, [](double, double x2) { return std::cos(kTwoPi * x2); });
    CHECK_THROWS_AS(anharmonic(bad), Error);
}

TEST_CASE("e_tot hand value") {
    Grid g(32, 32);
    CHECK(e_tot(Field(g), Field(g)) == 0.0);
    Field xi = Field::from_function(g, [](double x1, double) { return std::cos(kTwoPi * x1); });
    Field u = (1.0 / (4 * kPi * kPi)) * xi;
    u.mean_x1_zero = true;
    const double p7 = std::pow(kPi, 7);
    const double expect = -1.0 / (8 * kPi * kPi) + 1.0 / (2048 * p7);
    CHECK(rel(e_tot(u, xi), expect) < 1e-12);
    Fine fine(g);
    const Field uf = fine.up(u);
    CHECK(rel(e_tot(u, xi), oracle_anharmonic(uf) - 2.0 * inner(fine.up(xi), uf)) < 1e-10);
}

TEST_CASE("remainder terms") {
    Grid g(16, 16);
    Field v = random_band_limited(g, 3, 3, 5), F = random_band_limited(g, 3, 3, 6), zero(g);
    zero.mean_x1_zero = true;
    EnergyBreakdown b0 = remainder_g(v, F, zero);
    for (double x : b0.g_terms) CHECK(x == 0.0);
    Field w = random_band_limited(g, 3, 3, 7);
    EnergyBreakdown bz = remainder_g(zero, zero, w);
    CHECK(std::abs(bz.g_total) == 0.0);

    Field vc = Field::from_function(g, [](double x1, double) { return std::cos(kTwoPi * x1) / (4 * kPi * kPi); });
    vc.mean_x1_zero = true;
    Field Fc = dealiased_product(vc, hilbert_r1(deriv(vc, 2)));
    CHECK(Fc.max_abs() == 0.0);
    Field ws = Field::from_function(g, [](double x1, double) { return std::sin(kTwoPi * x1); });
    ws.mean_x1_zero = true;
    Fine fine(g);
    for (auto [vv, ww] : {std::pair{vc, ws}, std::pair{v, w}}) {
        const EnergyBreakdown b = remainder_g(vv, Fc, ww);
        const auto o = oracle_g(fine.up(vv), fine.up(Fc), fine.up(ww));
        const double scale = std::max(1e-300, std::abs(o[0]) + std::abs(o[1]) + std::abs(o[2]) + std::abs(o[4]) + std::abs(o[5]));
        for (int i = 0; i < 6; ++i) CHECK(std::abs(b.g_terms[i] - o[i]) <= 1e-8 * scale);
        CHECK(b.g_terms[5] >= 0.0);
    }
}

TEST_CASE("e_ren examples") {
    Grid g(32, 32);
    Field xi = sample_white(g, 4);
    Triple tr = make_triple(xi, 0.0);
    Field zero(g);
    zero.mean_x1_zero = true;
    CHECK(e_ren(tr.v, tr.F, zero).e_ren == 0.0);
    Field w = random_band_limited(g, 6, 6, 9);
    Field z2(g);
    EnergyBreakdown b = e_ren(z2, z2, w);
    CHECK(b.e_ren == doctest::Approx(anharmonic(w)).epsilon(1e-14));
    EnergyBreakdown c = e_ren(tr.v, tr.F, w);
    double sum = c.anharmonic;
    for (double x : c.g_terms) sum += x;
    CHECK(c.e_ren == sum);
}

TEST_CASE("renormalization identity") {
    Grid g(32, 32);
    for (unsigned seed : {1u, 2u, 3u}) {
        // band-limited noise and white noise alike
        Field xi = seed == 3 ? sample_white(g, 77) : random_band_limited(g, 6, 6, seed, false, 30.0);
        Triple tr = make_triple(xi, 0.0);
        Field w = random_band_limited(g, 6, 6, seed + 10, true, 2.0);
        const double lhs = e_tot(tr.v + w, xi) - e_tot(tr.v, xi);
        const double rhs = e_ren(tr.v, tr.F, w).e_ren;
        CHECK(rel(lhs, rhs) < 1e-8);
    }
}

TEST_CASE("el_residual substitution and gradient") {
    Grid g(32, 32);
    Field z(g);
    z.mean_x1_zero = true;
    CHECK(el_residual(z, z, z).max_abs() == 0.0);

    Field xi = random_band_limited(g, 5, 5, 31, false, 20.0);
    Triple tr = make_triple(xi, 0.0);
    // w = 0 reduces to P(F - v R1 d1 v^2 / 2) + R1 d2 v^2 / 2
    Field v2 = dealiased_product(tr.v, tr.v);
    Field expect = project_p(tr.F - 0.5 * dealiased_product(tr.v, hilbert_r1(deriv(v2, 1)))) +
                   0.5 * hilbert_r1(deriv(v2, 2));
    CHECK(rel_diff(el_residual(tr.v, tr.F, z), expect) < 1e-12);

    RenProblem prob(tr.v, tr.F);
    const Spectrum w = transform(random_band_limited(g, 6, 6, 32, true, 3.0));
    const Spectrum r = prob.residual(w);
    const double eps = 1e-5;
    double worst = 0.0;
    for (unsigned k = 0; k < 20; ++k) {
        const Spectrum d = transform(random_band_limited(g, 8, 8, 100 + k));
        const double fd = (prob.energy(w + eps * d) - prob.energy(w - eps * d)) / (2 * eps);
        worst = std::max(worst, rel(fd, 2.0 * inner(r, d)));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("build_f") {
    Grid g(32, 32);
    Field v = Field::from_function(g, [](double x1, double) { return std::cos(kTwoPi * x1) / (4 * kPi * kPi); });
    v.mean_x1_zero = true;
    CHECK(build_f(v, 0.01).max_abs() == 0.0);
    CHECK(resolution_floor(Grid(128, 128)) == std::ldexp(1.0, -18));
    CHECK(resolution_floor(Grid(64, 64)) == std::ldexp(1.0, -15));

    Field xi = sample_white(g, 3);
    FLimit lim = build_f_limit(solve_linear(xi));
    CHECK(lim.cauchy_trace.size() == lim.t_values.size());
    CHECK(lim.cauchy_trace.size() >= 2);
    CHECK(lim.t_used >= resolution_floor(g));
}
