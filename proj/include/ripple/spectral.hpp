#pragma once

#include <vector>

#include "ripple/grid.hpp"

namespace ripple {

Spectrum transform(const Field& f);
Field inverse(const Spectrum& s);

// Multiplies by the symbol; zeroes Nyquist modes on axes where the symbol
// is odd. Singular-at-k1=0 symbols require no k1=0 content.
Spectrum apply_symbol(const Spectrum& s, const Symbol& sym);
Field apply_symbol(const Field& f, const Symbol& sym);

Spectrum project_p(Spectrum s);
Field project_p(const Field& f);
Spectrum hilbert_r1(const Spectrum& s);
Field hilbert_r1(const Field& f);

// v with L v = P xi.
Spectrum solve_linear(const Spectrum& xi);
Field solve_linear(const Field& xi);
// L^{-1} without the data check; input is projected first.
Spectrum apply_linv(const Spectrum& s);

Spectrum smooth(const Spectrum& s, double T);
Field smooth(const Field& f, double T);

Spectrum frac_deriv(const Spectrum& s, int axis, double exponent);
Field frac_deriv(const Field& f, int axis, double exponent);

Spectrum deriv(const Spectrum& s, int axis);
Field deriv(const Field& f, int axis);

// Zero the Nyquist row and column.
void zero_nyquist(Spectrum& s);
bool has_k1_zero_content(const Spectrum& s);
void require_mean_x1_zero(const Spectrum& s, const char* what);

// Continuous L2 pairing of the trigonometric interpolants; equals the grid
// sum by Parseval.
double inner(const Spectrum& a, const Spectrum& b);
double norm2_sq(const Spectrum& a);
double inner(const Field& a, const Field& b);

// Products on a 2x zero-padded grid, truncated back with Nyquist modes
// zeroed. The Padded form lets callers combine several pointwise products
// before a single forward transform.
class Padded {
public:
    explicit Padded(const Grid& g);
    const Grid& coarse() const { return coarse_; }
    const Grid& fine() const { return fine_; }
    std::vector<double> lift(const Spectrum& s) const;
    Spectrum drop(const std::vector<double>& fine_values) const;

private:
    Grid coarse_;
    Grid fine_;
};

Spectrum dealiased_product(const Spectrum& f, const Spectrum& g);
Field dealiased_product(const Field& f, const Field& g);

// Lattice shift h = m / N_axis; anything else is rejected.
int lattice_steps(const Grid& g, int axis, double h);
Field diff_quotient(const Field& f, int axis, double h);
// Divided by |h|^{alpha_i}, alpha_1 = 1, alpha_2 = 2/3.
Field scaled_dq(const Field& f, int axis, double h);

}  // namespace ripple
