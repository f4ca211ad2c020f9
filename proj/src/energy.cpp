#include "ripple/energy.hpp"

#include <cmath>
#include <sstream>

#include "ripple/anorm.hpp"

namespace ripple {

std::string EnergyBreakdown::csv_header() { return "H,E,G1,G2,G3,G4,G5,G6,G,Eren,Etot"; }

std::string EnergyBreakdown::csv_row() const {
    std::ostringstream os;
    os.precision(17);
    os << harmonic << ',' << anharmonic;
    for (double g : g_terms) os << ',' << g;
    os << ',' << g_total << ',' << e_ren << ',';
    if (e_tot) os << *e_tot;
    return os.str();
}

namespace {

// sum over k1 != 0 of |k1|^a |s|^2
double weighted_k1(const Spectrum& s, double a) {
    const Grid& g = s.grid;
    double acc = 0.0;
    std::vector<double> fac(g.spec_cols(), 0.0);
    for (int m1 = 1; m1 < g.spec_cols(); ++m1) fac[m1] = g.weight(m1) * std::pow(g.k1(m1), a);
    for (int j2 = 0; j2 < g.n2(); ++j2)
        for (int m1 = 1; m1 < g.spec_cols(); ++m1) acc += fac[m1] * std::norm(s.at(m1, j2));
    return acc;
}

Spectrum r1(const Spectrum& s) { return apply_symbol(s, symbols::r1()); }

Spectrum square(const Padded& pad, const std::vector<double>& fine) {
    std::vector<double> sq(fine.size());
    for (std::size_t i = 0; i < fine.size(); ++i) sq[i] = fine[i] * fine[i];
    return pad.drop(sq);
}

// eta_w given the truncated square of w
Spectrum eta_from(const Spectrum& w, const Spectrum& w2) {
    Spectrum e = deriv(w, 2);
    e.axpy(-0.5, deriv(w2, 1));
    e.mean_x1_zero = w.mean_x1_zero;
    return e;
}

double anharmonic_from(const Spectrum& w, const Spectrum& eta) {
    return weighted_k1(w, 2.0) + weighted_k1(eta, -1.0);
}

}  // namespace

Spectrum apply_l(const Spectrum& w) {
    const Grid& g = w.grid;
    Spectrum out(g);
    for (int j2 = 0; j2 < g.n2(); ++j2) {
        const double k2 = g.k2(j2);
        for (int m1 = 1; m1 < g.spec_cols(); ++m1) {
            const double k1 = g.k1(m1);
            out.at(m1, j2) = w.at(m1, j2) * (k1 * k1 + k2 * k2 / k1);
        }
    }
    out.mean_x1_zero = true;
    return out;
}

Spectrum burgers(const Spectrum& w) { return eta_from(w, dealiased_product(w, w)); }
Field burgers(const Field& w) { return inverse(burgers(transform(w))); }

double anharmonic(const Spectrum& w) {
    require_mean_x1_zero(w, "anharmonic");
    return anharmonic_from(w, burgers(w));
}

double anharmonic(const Field& w) { return anharmonic(transform(w)); }

double e_tot(const Spectrum& u, const Spectrum& xi) { return anharmonic(u) - 2.0 * inner(xi, u); }
double e_tot(const Field& u, const Field& xi) { return e_tot(transform(u), transform(xi)); }

Spectrum build_f(const Spectrum& v, double t) {
    if (!(t > 0.0)) throw Error("build_f: t must be positive");
    return dealiased_product(v, r1(deriv(smooth(v, t), 2)));
}

Field build_f(const Field& v, double t) { return inverse(build_f(transform(v), t)); }

Spectrum build_f_exact(const Spectrum& v) { return dealiased_product(v, r1(deriv(v, 2))); }

double resolution_floor(const Grid& g) {
    int n = 0;
    while (std::pow(2.0, -(n + 1) / 3.0) >= 2.0 / g.n1() * (1.0 - 1e-12)) ++n;
    return std::ldexp(1.0, -n);
}

FLimit build_f_limit(const Field& v, double eps, double p) {
    if (!(eps > 0.0 && eps < 0.24)) throw ConfigError("epsilon: must lie in (0, 0.24)");
    if (!(p >= 1.0)) throw ConfigError("build_f_limit: p must be >= 1");
    const Spectrum vs = transform(v);
    const double floor_t = resolution_floor(v.grid);
    FLimit out;
    Spectrum prev = build_f(vs, 1.0);
    double t_used = 1.0;
    bool decreased = false;
    for (int n = 1; std::ldexp(1.0, -n) >= floor_t; ++n) {
        const double t = std::ldexp(1.0, -n);
        Spectrum cur = build_f(vs, t);
        const double inc = holder_neg(cur - prev, -0.75 - eps).value;
        if (!out.cauchy_trace.empty()) {
            if (inc < out.cauchy_trace.back()) {
                decreased = true;
            } else if (decreased) {
                out.t_values.push_back(t);
                out.cauchy_trace.push_back(inc);
                break;
            }
        }
        out.t_values.push_back(t);
        out.cauchy_trace.push_back(inc);
        prev = std::move(cur);
        t_used = t;
    }
    out.F = inverse(prev);
    out.t_used = t_used;
    return out;
}

Triple make_triple(const Field& xi, double t) {
    Triple tr;
    tr.xi = xi;
    const Spectrum v = solve_linear(transform(xi));
    tr.v = inverse(v);
    if (t < 0.0) t = resolution_floor(xi.grid);
    tr.t_used = t;
    tr.F = inverse(t == 0.0 ? build_f_exact(v) : build_f(v, t));
    return tr;
}

RenProblem::RenProblem(const Spectrum& v, const Spectrum& F) : pad_(v.grid), v_(v), F_(F) {
    if (v.grid != F.grid) throw Error("RenProblem: grid mismatch between v and F");
    require_mean_x1_zero(v_, "remainder (v)");
    v_.mean_x1_zero = true;
    r1d2v_ = r1(deriv(v_, 2));
    v_fine_ = pad_.lift(v_);
    r1d2v_fine_ = pad_.lift(r1d2v_);
    v2_ = square(pad_, v_fine_);
    r1d1v2_ = r1(deriv(v2_, 1));
}

RenProblem::RenProblem(const Field& v, const Field& F) : RenProblem(transform(v), transform(F)) {}

EnergyBreakdown RenProblem::breakdown(const Spectrum& w) const {
    require_mean_x1_zero(w, "remainder (w)");
    const std::vector<double> wf = pad_.lift(w);
    std::vector<double> prod(wf.size());
    for (std::size_t i = 0; i < wf.size(); ++i) prod[i] = v_fine_[i] * wf[i];
    const Spectrum vw = pad_.drop(prod);
    const Spectrum w2 = square(pad_, wf);
    const Spectrum eta = eta_from(w, w2);
    const Spectrum r1eta = r1(eta);

    EnergyBreakdown b;
    b.harmonic = harmonic_energy(w);
    b.anharmonic = anharmonic_from(w, eta);
    b.g_terms[0] = inner(w2, r1d2v_);
    b.g_terms[1] = inner(v2_, r1eta);
    b.g_terms[2] = 2.0 * inner(vw, r1eta);
    b.g_terms[3] = 2.0 * inner(w, F_);
    b.g_terms[4] = -inner(vw, r1d1v2_);
    b.g_terms[5] = weighted_k1(vw, 1.0);
    double g = 0.0;
    for (double x : b.g_terms) g += x;
    b.g_total = g;
    b.e_ren = b.anharmonic + b.g_total;
    return b;
}

double RenProblem::energy(const Spectrum& w) const { return breakdown(w).e_ren; }

Spectrum RenProblem::residual(const Spectrum& w) const {
    require_mean_x1_zero(w, "el_residual (w)");
    const Spectrum r1d2w = r1(deriv(w, 2));
    const std::vector<double> wf = pad_.lift(w);
    const std::vector<double> r1d2w_f = pad_.lift(r1d2w);
    const std::size_t n = wf.size();
    std::vector<double> uf(n), buf(n);
    for (std::size_t i = 0; i < n; ++i) uf[i] = v_fine_[i] + wf[i];

    // w R1 d2 v + v R1 d2 w + w R1 d2 w
    for (std::size_t i = 0; i < n; ++i) buf[i] = wf[i] * r1d2v_fine_[i] + uf[i] * r1d2w_f[i];
    const Spectrum lin = pad_.drop(buf);

    const Spectrum u2 = square(pad_, uf);
    const std::vector<double> c_f = pad_.lift(r1(deriv(u2, 1)));
    for (std::size_t i = 0; i < n; ++i) buf[i] = uf[i] * c_f[i];
    const Spectrum cubic = pad_.drop(buf);

    Spectrum inner_terms = F_ + lin;
    inner_terms.axpy(-0.5, cubic);
    Spectrum r = apply_l(w) + project_p(std::move(inner_terms));
    r.axpy(0.5, r1(deriv(u2, 2)));
    r.mean_x1_zero = true;
    return r;
}

EnergyBreakdown remainder_g(const Field& v, const Field& F, const Field& w) {
    EnergyBreakdown b = RenProblem(v, F).breakdown(transform(w));
    b.harmonic = b.anharmonic = 0.0;
    b.e_ren = b.g_total;
    return b;
}

EnergyBreakdown e_ren(const Field& v, const Field& F, const Field& w) {
    return RenProblem(v, F).breakdown(transform(w));
}

Field el_residual(const Field& v, const Field& F, const Field& w) {
    return inverse(RenProblem(v, F).residual(transform(w)));
}

}  // namespace ripple
