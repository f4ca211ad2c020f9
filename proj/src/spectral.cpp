#include "ripple/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace ripple {

namespace {

struct Plans {
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
    ~Plans() {
        if (r2c) fftw_destroy_plan(r2c);
        if (c2r) fftw_destroy_plan(c2r);
    }
};

// The FFTW planner is not thread-safe; execution with new arrays is.
const Plans& plans_for(const Grid& g) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<Plans>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(g.n1(), g.n2());
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
    auto p = std::make_unique<Plans>();
    std::vector<double> re(g.size());
    std::vector<cplx> sp(g.spec_size());
    auto* cp = reinterpret_cast<fftw_complex*>(sp.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    p->r2c = fftw_plan_dft_r2c_2d(g.n2(), g.n1(), re.data(), cp, flags);
    p->c2r = fftw_plan_dft_c2r_2d(g.n2(), g.n1(), cp, re.data(), flags | FFTW_DESTROY_INPUT);
    if (!p->r2c || !p->c2r) throw Error("fftw planning failed");
    return *cache.emplace(key, std::move(p)).first->second;
}

void forward_raw(const Grid& g, const double* in, cplx* out) {
    // r2c with FFTW_ESTIMATE does not touch the input.
    fftw_execute_dft_r2c(plans_for(g).r2c, const_cast<double*>(in),
                         reinterpret_cast<fftw_complex*>(out));
}

void backward_raw(const Grid& g, std::vector<cplx>& in_destroyed, double* out) {
    fftw_execute_dft_c2r(plans_for(g).c2r, reinterpret_cast<fftw_complex*>(in_destroyed.data()), out);
}

void require_same(const Grid& a, const Grid& b, const char* what) {
    if (a != b) throw Error(std::string(what) + ": grid mismatch");
}

}  // namespace

Spectrum transform(const Field& f) {
    const Grid& g = f.grid;
    if (f.values.size() != g.size()) throw Error("transform: value count does not match grid");
    Spectrum s(g);
    forward_raw(g, f.values.data(), s.coeffs.data());
    const double scale = g.cell();
    for (auto& z : s.coeffs) z *= scale;
    s.mean_x1_zero = f.mean_x1_zero;
    return s;
}

Field inverse(const Spectrum& s) {
    const Grid& g = s.grid;
    Field f(g);
    std::vector<cplx> tmp = s.coeffs;
    backward_raw(g, tmp, f.values.data());
    f.mean_x1_zero = s.mean_x1_zero;
    return f;
}

bool has_k1_zero_content(const Spectrum& s) {
    double all = 0.0, col = 0.0;
    const Grid& g = s.grid;
    for (int j2 = 0; j2 < g.n2(); ++j2) {
        for (int m1 = 0; m1 < g.spec_cols(); ++m1) all = std::max(all, std::abs(s.at(m1, j2)));
        col = std::max(col, std::abs(s.at(0, j2)));
    }
    return col > 1e-12 * all;
}

void require_mean_x1_zero(const Spectrum& s, const char* what) {
    if (has_k1_zero_content(s))
        throw Error(std::string(what) + ": input has nonzero x1-average (apply P first)");
}

void zero_nyquist(Spectrum& s) {
    const Grid& g = s.grid;
    const int half = g.n1() / 2;
    for (int j2 = 0; j2 < g.n2(); ++j2) s.at(half, j2) = 0.0;
    for (int m1 = 0; m1 < g.spec_cols(); ++m1) s.at(m1, g.n2() / 2) = 0.0;
}

Spectrum apply_symbol(const Spectrum& s, const Symbol& sym) {
    const Grid& g = s.grid;
    if (sym.singular_at_k1_zero) require_mean_x1_zero(s, sym.name.c_str());
    Spectrum out(g);
    for (int j2 = 0; j2 < g.n2(); ++j2) {
        const double k2 = g.k2(j2);
        const bool ny2 = g.nyquist2(j2) && sym.k2_parity == Parity::odd;
        for (int m1 = 0; m1 < g.spec_cols(); ++m1) {
            if (ny2 || (g.nyquist1(m1) && sym.k1_parity == Parity::odd)) continue;
            if (m1 == 0 && sym.singular_at_k1_zero) continue;
            const cplx m = sym.eval(g.k1(m1), k2);
            if (!std::isfinite(m.real()) || !std::isfinite(m.imag()))
                throw Error("symbol " + sym.name + " is not finite at a retained mode");
            out.at(m1, j2) = s.at(m1, j2) * m;
        }
    }
    out.mean_x1_zero = s.mean_x1_zero || sym.singular_at_k1_zero || sym.k1_parity == Parity::odd;
    return out;
}

Field apply_symbol(const Field& f, const Symbol& sym) {
    return inverse(apply_symbol(transform(f), sym));
}

Spectrum project_p(Spectrum s) {
    for (int j2 = 0; j2 < s.grid.n2(); ++j2) s.at(0, j2) = 0.0;
    s.mean_x1_zero = true;
    return s;
}

Field project_p(const Field& f) { return inverse(project_p(transform(f))); }

Spectrum hilbert_r1(const Spectrum& s) { return apply_symbol(s, symbols::r1()); }
Field hilbert_r1(const Field& f) { return inverse(hilbert_r1(transform(f))); }

Spectrum apply_linv(const Spectrum& s) {
    const Grid& g = s.grid;
    Spectrum out(g);
    for (int j2 = 0; j2 < g.n2(); ++j2) {
        const double k2 = g.k2(j2);
        for (int m1 = 1; m1 < g.spec_cols(); ++m1) {
            const double k1 = g.k1(m1);
            out.at(m1, j2) = s.at(m1, j2) / (k1 * k1 + k2 * k2 / k1);
        }
    }
    out.mean_x1_zero = true;
    return out;
}

Spectrum solve_linear(const Spectrum& xi) { return apply_linv(xi); }
Field solve_linear(const Field& xi) { return inverse(solve_linear(transform(xi))); }

Spectrum smooth(const Spectrum& s, double T) {
    if (!(T > 0.0)) throw Error("smooth: T must be positive");
    return apply_symbol(s, symbols::heat(T));
}

Field smooth(const Field& f, double T) { return inverse(smooth(transform(f), T)); }

Spectrum frac_deriv(const Spectrum& s, int axis, double exponent) {
    if (axis != 1 && axis != 2) throw Error("frac_deriv: axis must be 1 or 2");
    if (exponent < 0.0) {
        if (axis == 1) {
            require_mean_x1_zero(s, "frac_deriv");
        } else {
            double all = 0.0, row = 0.0;
            for (int j2 = 0; j2 < s.grid.n2(); ++j2)
                for (int m1 = 0; m1 < s.grid.spec_cols(); ++m1) {
                    all = std::max(all, std::abs(s.at(m1, j2)));
                    if (j2 == 0) row = std::max(row, std::abs(s.at(m1, j2)));
                }
            if (row > 1e-12 * all) throw Error("frac_deriv: input has nonzero x2-average");
        }
    }
    Spectrum out = apply_symbol(s, symbols::abs_d(axis, exponent));
    if (axis == 1 && exponent != 0.0) out.mean_x1_zero = true;
    return out;
}

Field frac_deriv(const Field& f, int axis, double exponent) {
    return inverse(frac_deriv(transform(f), axis, exponent));
}

Spectrum deriv(const Spectrum& s, int axis) {
    if (axis == 1) return apply_symbol(s, symbols::d1());
    if (axis == 2) return apply_symbol(s, symbols::d2());
    throw Error("deriv: axis must be 1 or 2");
}

Field deriv(const Field& f, int axis) { return inverse(deriv(transform(f), axis)); }

double inner(const Spectrum& a, const Spectrum& b) {
    require_same(a.grid, b.grid, "inner");
    const Grid& g = a.grid;
    double acc = 0.0;
    for (int j2 = 0; j2 < g.n2(); ++j2) {
        double row = 0.0;
        for (int m1 = 0; m1 < g.spec_cols(); ++m1) {
            const cplx x = a.at(m1, j2), y = b.at(m1, j2);
            row += g.weight(m1) * (x.real() * y.real() + x.imag() * y.imag());
        }
        acc += row;
    }
    return acc;
}

double norm2_sq(const Spectrum& a) { return inner(a, a); }

double inner(const Field& a, const Field& b) {
    require_same(a.grid, b.grid, "inner");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) acc += a.values[i] * b.values[i];
    return acc * a.grid.cell();
}

Padded::Padded(const Grid& g) : coarse_(g), fine_(2 * g.n1(), 2 * g.n2()) {}

std::vector<double> Padded::lift(const Spectrum& s) const {
    require_same(s.grid, coarse_, "padded lift");
    const int n1 = coarse_.n1(), n2 = coarse_.n2(), N2 = fine_.n2();
    std::vector<cplx> fs(fine_.spec_size(), cplx(0.0, 0.0));
    const int fc = fine_.spec_cols();
    auto put = [&](int m1, int m2, cplx z) {
        const int j = m2 >= 0 ? m2 : m2 + N2;
        fs[std::size_t(j) * fc + m1] += z;
    };
    // Nyquist content is split evenly between +N/2 and -N/2 so that the
    // padded field is the symmetric trigonometric interpolant.
    for (int j2 = 0; j2 < n2; ++j2) {
        const int m2 = coarse_.mode2(j2);
        const bool ny2 = coarse_.nyquist2(j2);
        for (int m1 = 0; m1 <= n1 / 2; ++m1) {
            cplx z = s.at(m1, j2);
            if (z == cplx(0.0, 0.0)) continue;
            if (coarse_.nyquist1(m1)) z *= 0.5;
            if (ny2) {
                put(m1, m2, 0.5 * z);
                put(m1, -m2, 0.5 * z);
            } else {
                put(m1, m2, z);
            }
        }
    }
    std::vector<double> out(fine_.size());
    backward_raw(fine_, fs, out.data());
    return out;
}

Spectrum Padded::drop(const std::vector<double>& fine_values) const {
    if (fine_values.size() != fine_.size()) throw Error("padded drop: size mismatch");
    std::vector<cplx> fs(fine_.spec_size());
    forward_raw(fine_, fine_values.data(), fs.data());
    const int n1 = coarse_.n1(), n2 = coarse_.n2(), N2 = fine_.n2();
    const int fc = fine_.spec_cols();
    const double scale = fine_.cell();
    Spectrum out(coarse_);
    for (int j2 = 0; j2 < n2; ++j2) {
        if (coarse_.nyquist2(j2)) continue;
        const int m2 = coarse_.mode2(j2);
        const int fj = m2 >= 0 ? m2 : m2 + N2;
        for (int m1 = 0; m1 < n1 / 2; ++m1) out.at(m1, j2) = fs[std::size_t(fj) * fc + m1] * scale;
    }
    return out;
}

Spectrum dealiased_product(const Spectrum& f, const Spectrum& g) {
    require_same(f.grid, g.grid, "dealiased_product");
    Padded pad(f.grid);
    std::vector<double> a = pad.lift(f);
    const std::vector<double> b = pad.lift(g);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
    return pad.drop(a);
}

Field dealiased_product(const Field& f, const Field& g) {
    return inverse(dealiased_product(transform(f), transform(g)));
}

int lattice_steps(const Grid& g, int axis, double h) {
    if (axis != 1 && axis != 2) throw Error("difference quotient: axis must be 1 or 2");
    const int n = axis == 1 ? g.n1() : g.n2();
    const double m = h * n;
    const double r = std::round(m);
    if (std::abs(m - r) > 1e-9) throw Error("difference quotient: h is not a multiple of the grid spacing");
    return static_cast<int>(r);
}

Field diff_quotient(const Field& f, int axis, double h) {
    const Grid& g = f.grid;
    const int n1 = g.n1(), n2 = g.n2();
    int m = lattice_steps(g, axis, h);
    Field out(g);
    if (axis == 1) {
        m = ((m % n1) + n1) % n1;
        for (int i2 = 0; i2 < n2; ++i2)
            for (int i1 = 0; i1 < n1; ++i1) out.at(i1, i2) = f.at((i1 + m) % n1, i2) - f.at(i1, i2);
        out.mean_x1_zero = true;
    } else {
        m = ((m % n2) + n2) % n2;
        for (int i2 = 0; i2 < n2; ++i2)
            for (int i1 = 0; i1 < n1; ++i1) out.at(i1, i2) = f.at(i1, (i2 + m) % n2) - f.at(i1, i2);
        out.mean_x1_zero = f.mean_x1_zero;
    }
    return out;
}

Field scaled_dq(const Field& f, int axis, double h) {
    if (h == 0.0) throw Error("scaled difference quotient: h must be nonzero");
    Field out = diff_quotient(f, axis, h);
    const double alpha = axis == 1 ? 1.0 : 2.0 / 3.0;
    out *= 1.0 / std::pow(std::abs(h), alpha);
    return out;
}

}  // namespace ripple
