#include "ripple/minimize.hpp"

#include <cmath>

namespace ripple {

void MinimizeParams::validate() const {
    if (!(tau > 0.0)) throw ConfigError("minimize.tau: must be positive");
    if (max_iters < 0) throw ConfigError("minimize.max_iters: must be >= 0");
    if (!(residual_tol > 0.0)) throw ConfigError("minimize.residual_tol: must be positive");
    if (!(energy_tol > 0.0)) throw ConfigError("minimize.energy_tol: must be positive");
    if (!(backtrack > 0.0 && backtrack < 1.0)) throw ConfigError("minimize.backtrack: must lie in (0, 1)");
    if (patience < 0) throw ConfigError("minimize.patience: must be >= 0");
}

double preconditioned_norm(const Spectrum& residual) { return std::sqrt(norm2_sq(apply_linv(residual))); }

namespace {

// -tau (1 + tau L)^{-1} r
Spectrum step_direction(const Spectrum& r, double tau) {
    const Grid& g = r.grid;
    Spectrum d(g);
    for (int j2 = 0; j2 < g.n2(); ++j2) {
        if (g.nyquist2(j2)) continue;
        const double k2 = g.k2(j2);
        for (int m1 = 1; m1 < g.n1() / 2; ++m1) {
            const double k1 = g.k1(m1);
            const double sigma = k1 * k1 + k2 * k2 / k1;
            d.at(m1, j2) = -tau * r.at(m1, j2) / (1.0 + tau * sigma);
        }
    }
    d.mean_x1_zero = true;
    return d;
}

}  // namespace

MinimizeResult minimize(const RenProblem& prob, const MinimizeParams& params, const StepObserver& obs) {
    params.validate();
    const Grid& g = prob.grid();
    Spectrum w(g);
    w.mean_x1_zero = true;
    double E = prob.energy(w);
    Spectrum r = prob.residual(w);
    double rn = preconditioned_norm(r);

    MinimizeResult res;
    res.energy_trace.push_back(E);
    res.residual_trace.push_back(rn);
    if (obs) obs(w, E);

    double tau = params.tau;
    bool done = rn < params.residual_tol;
    int it = 0;
    while (!done && it < params.max_iters) {
        ++it;
        int fails = 0;
        bool accepted = false;
        Spectrum w_new;
        double E_new = 0.0;
        while (fails <= params.max_backtracks) {
            const Spectrum d = step_direction(r, tau);
            const double slope = 2.0 * inner(r, d);
            w_new = w + d;
            E_new = prob.energy(w_new);
            if (!std::isfinite(E_new)) throw NumericalAbort("minimize: non-finite energy at iteration " + std::to_string(it));
            if (E_new <= E + params.armijo * slope || (fails >= params.patience && E_new <= E)) {
                accepted = true;
                break;
            }
            tau *= params.backtrack;
            ++fails;
        }
        if (!accepted) break;
        const double dE = E - E_new;
        w = std::move(w_new);
        E = E_new;
        r = prob.residual(w);
        rn = preconditioned_norm(r);
        res.energy_trace.push_back(E);
        res.residual_trace.push_back(rn);
        if (obs) obs(w, E);
        if (fails == 0) tau = std::min(tau / params.backtrack, params.tau_max);
        done = rn < params.residual_tol && dE <= params.energy_tol * std::max(1.0, std::abs(E));
    }
    res.w_star = inverse(w);
    res.iters = it;
    res.residual_norm = rn;
    res.converged = done;
    return res;
}

MinimizeResult minimize(const Field& v, const Field& F, const MinimizeParams& params) {
    return minimize(RenProblem(v, F), params);
}

DiffQuotTable diag_diffquot_energy(const Field& w) {
    DiffQuotTable t;
    for (int axis = 1; axis <= 2; ++axis) {
        const int n = axis == 1 ? w.grid.n1() : w.grid.n2();
        for (int m = 1; m < n; ++m) {
            const double h = double(m) / n;
            Field d = scaled_dq(w, axis, h);
            d.mean_x1_zero = true;
            const double val = harmonic_energy(project_p(transform(d)));
            t.rows.push_back({axis, h, val});
            t.sup = std::max(t.sup, val);
        }
    }
    return t;
}

NormEstimate holder_of_minimizer(const Field& w_star, double eps) {
    const double alpha = 1.25 - 2.0 * eps;
    if (!(alpha > 0.0 && alpha < 1.5)) throw Error("holder_of_minimizer: 5/4 - 2 eps must lie in (0, 3/2)");
    NormEstimate e = holder_pos(w_star, alpha);
    e.eps = eps;
    return e;
}

RegularityRecord holder_of_minimizer(const Field& w_star, const Triple& data, double eps) {
    RegularityRecord rec;
    rec.w = holder_of_minimizer(w_star, eps);
    rec.xi = holder_neg(data.xi, -1.25 - eps);
    rec.v = holder_pos(data.v, 0.75 - eps);
    rec.F = holder_neg(data.F, -0.75 - eps);
    rec.xi.eps = rec.v.eps = rec.F.eps = eps;
    return rec;
}

}  // namespace ripple
