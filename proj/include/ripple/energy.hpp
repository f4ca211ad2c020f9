#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ripple/grid.hpp"
#include "ripple/spectral.hpp"

namespace ripple {

struct Triple {
    Field xi;
    Field v;
    Field F;
    double t_used = 0.0;  // 0: exact product v * d2 R1 v
    std::vector<double> cauchy_trace;
};

struct EnergyBreakdown {
    double harmonic = 0.0;
    double anharmonic = 0.0;
    std::array<double, 6> g_terms{};
    double g_total = 0.0;
    double e_ren = 0.0;
    std::optional<double> e_tot;

    static std::string csv_header();
    std::string csv_row() const;
};

Spectrum burgers(const Spectrum& w);
Field burgers(const Field& w);

double anharmonic(const Spectrum& w);
double anharmonic(const Field& w);

double e_tot(const Spectrum& u, const Spectrum& xi);
double e_tot(const Field& u, const Field& xi);

// F_t = v * d2 R1 (v_t), all on the padded grid.
Spectrum build_f(const Spectrum& v, double t);
Field build_f(const Field& v, double t);
// Exact band-limited product v * d2 R1 v.
Spectrum build_f_exact(const Spectrum& v);

struct FLimit {
    Field F;
    double t_used = 0.0;
    std::vector<double> t_values;      // t of each trace entry
    std::vector<double> cauchy_trace;  // [F_t - F_{2t}]_{-3/4-eps}
};

// Walks t = 2^{-n} down to the resolution floor. Stops early once the
// increment rises again after having started to decrease.
FLimit build_f_limit(const Field& v, double eps = 0.05, double p = 2.0);

// Smallest dyadic t with t^{1/3} >= 2 / N1: the smoothing scale spans two
// grid cells in x1.
double resolution_floor(const Grid& g);

// xi -> (xi, v, F). t < 0 picks the resolution floor, t = 0 the exact product.
Triple make_triple(const Field& xi, double t);

// Caches everything derived from (v, F) so repeated evaluations in w only
// pay for w-dependent products.
class RenProblem {
public:
    RenProblem(const Spectrum& v, const Spectrum& F);
    RenProblem(const Field& v, const Field& F);

    const Grid& grid() const { return v_.grid; }
    const Spectrum& v() const { return v_; }
    const Spectrum& F() const { return F_; }

    EnergyBreakdown breakdown(const Spectrum& w) const;
    double energy(const Spectrum& w) const;
    Spectrum residual(const Spectrum& w) const;

private:
    Padded pad_;
    Spectrum v_, F_;
    Spectrum r1d2v_;   // R1 d2 v
    Spectrum v2_;      // (v^2) truncated
    Spectrum r1d1v2_;  // R1 d1 (v^2)
    std::vector<double> v_fine_, r1d2v_fine_;
};

EnergyBreakdown remainder_g(const Field& v, const Field& F, const Field& w);
EnergyBreakdown e_ren(const Field& v, const Field& F, const Field& w);
Field el_residual(const Field& v, const Field& F, const Field& w);

// Symbol of L applied to w (k1 = 0 modes dropped).
Spectrum apply_l(const Spectrum& w);

}  // namespace ripple
