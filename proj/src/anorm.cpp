#include "ripple/anorm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ripple/spectral.hpp"

namespace ripple {

const char* to_string(NormKind k) {
    switch (k) {
        case NormKind::holder_pos: return "holder_pos";
        case NormKind::holder_neg: return "holder_neg";
        case NormKind::besov: return "besov";
        case NormKind::lp: return "lp";
        case NormKind::hnorm: return "hnorm";
        case NormKind::harmonic: return "harmonic";
    }
    return "?";
}

std::string NormEstimate::csv_header() {
    return "kind,exponent,p,axis,eps,value,scan_min,scan_max,scan_count,argmax,n1,n2";
}

std::string NormEstimate::csv_row() const {
    std::ostringstream os;
    os.precision(17);
    const double lo = scanned.empty() ? 0.0 : *std::min_element(scanned.begin(), scanned.end());
    const double hi = scanned.empty() ? 0.0 : *std::max_element(scanned.begin(), scanned.end());
    os << to_string(kind) << ',' << exponent << ',' << p << ',' << axis << ',';
    if (!std::isnan(eps)) os << eps;
    os << ',' << value << ',' << lo << ',' << hi << ',' << scanned.size() << ',' << argmax << ',' << n1
       << ',' << n2;
    return os.str();
}

double cc_distance(const Point& x, const Point& y) {
    auto wrap = [](double d) {
        d = std::abs(d - std::floor(d));
        return std::min(d, 1.0 - d);
    };
    return wrap(x[0] - y[0]) + std::pow(wrap(x[1] - y[1]), 2.0 / 3.0);
}

int dyadic_nmax(const Grid& g) {
    const double res = std::min(double(g.n1()), std::pow(double(g.n2()), 2.0 / 3.0));
    const double bound = 2.0 / res * (1.0 - 1e-12);  // 64^{2/3} rounds below 16
    int n = 0;
    while (std::pow(2.0, -(n + 1) / 3.0) >= bound) ++n;
    return n;
}

std::vector<double> dyadic_times(const Grid& g) {
    std::vector<double> out;
    for (int n = 0; n <= dyadic_nmax(g); ++n) out.push_back(std::ldexp(1.0, -n));
    return out;
}

namespace {

bool near(double a, double b) { return std::abs(a - b) < 1e-3; }

NormEstimate start(NormKind kind, double exponent, const Grid& g) {
    NormEstimate e;
    e.kind = kind;
    e.exponent = exponent;
    e.n1 = g.n1();
    e.n2 = g.n2();
    return e;
}

}  // namespace

NormEstimate holder_neg(const Spectrum& f, double beta) {
    if (!(beta > -1.5 && beta < 0.0) || near(beta, -1.0) || near(beta, -0.5))
        throw Error("holder_neg: beta must lie in (-3/2, 0) away from the critical exponents -1 and -1/2");
    NormEstimate e = start(NormKind::holder_neg, beta, f.grid);
    e.scanned = dyadic_times(f.grid);
    for (double T : e.scanned) {
        const double v = std::pow(T, -beta / 3.0) * inverse(smooth(f, T)).max_abs();
        if (v > e.value) {
            e.value = v;
            e.argmax = T;
        }
    }
    return e;
}

NormEstimate holder_neg(const Field& f, double beta) { return holder_neg(transform(f), beta); }

NormEstimate holder_pos(const Spectrum& f, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.5) || near(alpha, 1.0))
        throw Error("holder_pos: alpha must lie in (0, 3/2) away from the critical exponent 1");
    NormEstimate e = start(NormKind::holder_pos, alpha, f.grid);
    e.scanned = dyadic_times(f.grid);
    Spectrum a = apply_symbol(f, symbols::aop());
    a.at(0, 0) = 0.0;
    for (double T : e.scanned) {
        const double v = std::pow(T, -alpha / 3.0) * T * inverse(smooth(a, T)).max_abs();
        if (v > e.value) {
            e.value = v;
            e.argmax = T;
        }
    }
    return e;
}

NormEstimate holder_pos(const Field& f, double alpha) { return holder_pos(transform(f), alpha); }

double lp_norm(const Field& f, double p) {
    if (std::isinf(p) && p > 0) return f.max_abs();
    if (!(p >= 1.0)) throw Error("lp_norm: p must be >= 1");
    double acc = 0.0;
    if (p == 2.0) {
        for (double v : f.values) acc += v * v;
    } else {
        for (double v : f.values) acc += std::pow(std::abs(v), p);
    }
    return std::pow(acc * f.grid.cell(), 1.0 / p);
}

NormEstimate besov(const Field& f, double s, double p, int axis) {
    if (!(s > 0.0 && s <= 1.0)) throw Error("besov: s must lie in (0, 1]");
    if (!(p >= 1.0)) throw Error("besov: p must be >= 1");
    NormEstimate e = start(NormKind::besov, s, f.grid);
    e.p = p;
    e.axis = axis;
    const int n = axis == 1 ? f.grid.n1() : f.grid.n2();
    for (int m = 1; m <= n; ++m) {
        const double h = double(m) / n;
        e.scanned.push_back(h);
        const double v = std::pow(h, -s) * lp_norm(diff_quotient(f, axis, h), p);
        if (v > e.value) {
            e.value = v;
            e.argmax = h;
        }
    }
    return e;
}

double hnorm_sq(const Spectrum& f, double s) {
    if (!(s > 0.0)) throw Error("hnorm: s must be positive");
    require_mean_x1_zero(f, "hnorm");
    const Grid& g = f.grid;
    double acc = 0.0;
    for (int j2 = 0; j2 < g.n2(); ++j2) {
        const double k2 = std::abs(g.k2(j2));
        const double k2s = std::pow(k2, 2.0 * s);
        for (int m1 = 1; m1 < g.spec_cols(); ++m1) {
            const double k1 = g.k1(m1);
            const double sym = std::pow(k1, 2.0 * s) + std::pow(k1, -s) * k2s;
            acc += g.weight(m1) * sym * std::norm(f.at(m1, j2));
        }
    }
    return acc;
}

NormEstimate hnorm(const Field& f, double s) {
    NormEstimate e = start(NormKind::hnorm, s, f.grid);
    e.value = std::sqrt(hnorm_sq(transform(f), s));
    return e;
}

double harmonic_energy(const Spectrum& f) {
    require_mean_x1_zero(f, "harmonic_energy");
    const Grid& g = f.grid;
    double acc = 0.0;
    for (int j2 = 0; j2 < g.n2(); ++j2) {
        const double k2 = g.k2(j2);
        for (int m1 = 1; m1 < g.spec_cols(); ++m1) {
            const double k1 = g.k1(m1);
            acc += g.weight(m1) * (k1 * k1 + k2 * k2 / k1) * std::norm(f.at(m1, j2));
        }
    }
    return acc;
}

double harmonic_energy(const Field& f) { return harmonic_energy(transform(f)); }

}  // namespace ripple
