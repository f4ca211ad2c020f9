#pragma once

#include <cmath>
#include <random>

#include "ripple/grid.hpp"
#include "ripple/spectral.hpp"

namespace testutil {

using namespace ripple;

// Random real field with modes |m1| <= band1, |m2| <= band2, Nyquist-free.
inline Field random_band_limited(const Grid& g, int band1, int band2, unsigned seed, bool mean_zero = true,
                                 double amp = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    Spectrum s(g);
    for (int j2 = 0; j2 < g.n2(); ++j2) {
        const int m2 = g.mode2(j2);
        if (std::abs(m2) > band2 || g.nyquist2(j2)) continue;
        for (int m1 = 0; m1 <= band1 && m1 < g.n1() / 2; ++m1) {
            if (m1 == 0 && (mean_zero || m2 < 0)) continue;
            const double decay = amp / (1.0 + m1 * m1 + m2 * m2);
            s.at(m1, j2) = cplx(nd(rng), m1 == 0 && m2 == 0 ? 0.0 : nd(rng)) * decay;
        }
    }
    if (!mean_zero)
        for (int m2 = 1; m2 <= band2 && m2 < g.n2() / 2; ++m2) s.at(0, g.n2() - m2) = std::conj(s.at(0, m2));
    s.mean_x1_zero = mean_zero;
    return inverse(s);
}

inline double max_diff(const Field& a, const Field& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}

inline double rel_diff(const Field& a, const Field& b) {
    return max_diff(a, b) / std::max({a.max_abs(), b.max_abs(), 1e-300});
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

}  // namespace testutil
