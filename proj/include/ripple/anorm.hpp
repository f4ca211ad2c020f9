#pragma once

#include <array>
#include <limits>
#include <string>
#include <vector>

#include "ripple/grid.hpp"

namespace ripple {

enum class NormKind { holder_pos, holder_neg, besov, lp, hnorm, harmonic };

const char* to_string(NormKind k);

struct NormEstimate {
    double value = 0.0;
    NormKind kind = NormKind::lp;
    double exponent = 0.0;  // alpha, beta or s
    double p = 2.0;         // besov / lp
    int axis = 0;           // besov only
    double eps = std::numeric_limits<double>::quiet_NaN();  // set by callers passing 3/4 - eps style exponents
    std::vector<double> scanned;  // dyadic T or lattice h actually used
    double argmax = 0.0;          // T or h attaining the sup
    int n1 = 0;
    int n2 = 0;

    static std::string csv_header();
    std::string csv_row() const;
};

using Point = std::array<double, 2>;

double cc_distance(const Point& x, const Point& y);

// Largest n with 2^{-n/3} >= 2 / min(N1, N2^{2/3}).
int dyadic_nmax(const Grid& g);
std::vector<double> dyadic_times(const Grid& g);

NormEstimate holder_neg(const Field& f, double beta);
NormEstimate holder_neg(const Spectrum& f, double beta);
NormEstimate holder_pos(const Field& f, double alpha);
NormEstimate holder_pos(const Spectrum& f, double alpha);
NormEstimate besov(const Field& f, double s, double p, int axis);
NormEstimate hnorm(const Field& f, double s);
double hnorm_sq(const Spectrum& f, double s);
double harmonic_energy(const Field& f);
double harmonic_energy(const Spectrum& f);
double lp_norm(const Field& f, double p);

inline constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace ripple
