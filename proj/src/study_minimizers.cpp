// Studies that run the minimizer: convergence, mollifier ladders and
// regularity of minimizers.

#include <algorithm>
#include <cmath>

#include "ripple/anorm.hpp"
#include "ripple/energy.hpp"
#include "ripple/minimize.hpp"
#include "ripple/spectral.hpp"
#include "study_util.hpp"

namespace ripple::detail {

namespace {

double l2_dist(const Field& a, const Field& b) {
    Field d = a;
    d -= b;
    return std::sqrt(norm2_sq(transform(d)));
}

}  // namespace

StudyReport minimization(const StudyConfig& cfg) {
    const Grid g(pick_n(cfg, 64), pick_n(cfg, 64));
    const auto seeds = pick_samples(cfg, 32);
    const EnsembleSpec spec = ensemble(cfg, g, seeds);
    StudyReport rep;
    rep.config = base_config(cfg);
    rep.config.update({{"n", g.n1()}, {"samples", seeds}, {"F", "resolution floor"},
                       {"tau", cfg.minimize.tau}, {"residual_tol", cfg.minimize.residual_tol},
                       {"max_iters", cfg.minimize.max_iters}});

    struct Run {
        bool converged = false, monotone = true;
        double energy = 0.0, residual = 0.0;
        int iters = 0, coercive_violations = 0;
    };
    // constant fitted exactly as in the coercivity study, at this grid
    const auto [cg, ce] = coercivity_pairs(cfg, g, cfg.corpus.value_or(200));
    const double C = coercivity_constant(cg, ce, 0.5);
    rep.rows.push_back({"C_fit_lambda_0.5", double(g.n1()), C, kNaN});

    std::vector<Run> runs(seeds);
    parallel_for(seeds, [&](std::size_t i) {
        const Triple tr = make_triple(sample_approx(spec, i), -1.0);
        const RenProblem prob(tr.v, tr.F);
        Run& r = runs[i];
        const MinimizeResult res = minimize(prob, cfg.minimize, [&](const Spectrum& w, double) {
            const EnergyBreakdown b = prob.breakdown(w);
            if (b.anharmonic > 2.0 * (b.e_ren + C) + 1e-12) ++r.coercive_violations;
        });
        r.converged = res.converged;
        r.energy = res.energy_trace.back();
        r.residual = res.residual_norm;
        r.iters = res.iters;
        for (std::size_t k = 1; k < res.energy_trace.size(); ++k)
            if (res.energy_trace[k] > res.energy_trace[k - 1]) r.monotone = false;
    });

    int conv = 0, mono = 0, viol = 0;
    double emax = -kInf, rmax = 0.0;
    for (std::size_t i = 0; i < seeds; ++i) {
        const Run& r = runs[i];
        conv += r.converged;
        mono += r.monotone;
        viol += r.coercive_violations;
        emax = std::max(emax, r.energy);
        rmax = std::max(rmax, r.residual);
        rep.rows.push_back({"E_ren_star", double(i), r.energy, kNaN});
        rep.rows.push_back({"residual", double(i), r.residual, kNaN});
        rep.rows.push_back({"iterations", double(i), double(r.iters), kNaN});
    }
    const double ns = double(seeds);
    rep.checks.push_back({"all_converged", conv / ns, 1.0, 0.0, conv == int(seeds), "fraction of seeds"});
    rep.checks.push_back(bound_check("E_ren_nonpositive", emax, 0.0, "max E_ren(w*) over seeds"));
    rep.checks.push_back({"monotone_traces", mono / ns, 1.0, 0.0, mono == int(seeds), "fraction of seeds"});
    rep.checks.push_back({"residual_below_1e-6", rmax, 0.0, 1e-6, rmax < 1e-6, "max preconditioned residual"});
    rep.checks.push_back({"coercivity_along_trajectory", double(viol), 0.0, 0.0, viol == 0,
                          "iterates violating E <= 2(E_ren + C_fit)"});

    // linear response at v = 0: w* = -L^{-1} P F up to O(delta^2)
    {
        const double delta = 1e-4;
        const Field F = Field::from_function(g, [delta](double a, double b) {
            return delta * std::cos(kTwoPi * a) * std::sin(kTwoPi * b);
        });
        MinimizeParams p = cfg.minimize;
        p.residual_tol = 1e-12;
        const MinimizeResult res = minimize(Field(g), F, p);
        Field oracle = inverse(apply_linv(transform(F)));
        oracle *= -1.0;
        const double rel = l2_dist(res.w_star, oracle) / std::sqrt(norm2_sq(transform(oracle)));
        rep.checks.push_back(bound_check("linear_response", rel, 10.0 * delta, "|w* + L^-1 P F| / |L^-1 P F|"));
    }
    return rep;
}

StudyReport gamma(const StudyConfig& cfg) {
    const Grid g(pick_n(cfg, 64), pick_n(cfg, 64));
    const auto seeds = pick_samples(cfg, 32);
    auto ells = pick_list(cfg.ell_list, dyadic(2, 6));
    std::sort(ells.begin(), ells.end(), std::greater<>());
    const int frozen = 8;
    StudyReport rep;
    rep.config = base_config(cfg);
    rep.config.update({{"n", g.n1()}, {"samples", seeds}, {"ell_list", ells}, {"frozen_w", frozen},
                       {"reference", "ell = 0, exact product"}});
    const std::size_t L = ells.size();

    StudyConfig gc = cfg;
    gc.kind = EnsembleKind::white;
    gc.ell = 0.0;
    const EnsembleSpec white = ensemble(gc, g, seeds);
    std::vector<Field> ws;
    for (int k = 0; k < frozen; ++k) ws.push_back(corpus_field(g, k, frozen));

    std::vector<std::vector<double>> diffs(seeds), ref_dist(seeds);
    std::vector<std::vector<std::vector<double>>> gap(seeds);  // [seed][w][ell]
    std::vector<std::vector<double>> e_star(seeds), h_star(seeds), e_lat(seeds), h_lat(seeds);
    parallel_for(seeds, [&](std::size_t i) {
        auto solve = [&](const Field& xi, std::vector<double>* e, std::vector<double>* h) {
            const Triple tr = make_triple(xi, 0.0);
            const RenProblem prob(tr.v, tr.F);
            const MinimizeResult res = minimize(prob, cfg.minimize);
            if (e) e->push_back(res.energy_trace.back());
            if (h) h->push_back(harmonic_energy(res.w_star));
            return std::pair{prob, res.w_star};
        };
        const Field xi0 = sample_approx(white, i);
        const auto [prob0, w0] = solve(xi0, nullptr, nullptr);
        std::vector<Field> wl;
        gap[i].assign(std::size_t(frozen), {});
        for (double ell : ells) {
            EnsembleSpec s = white;
            s.kind = EnsembleKind::gaussian_mollified;
            s.ell = ell;
            const auto [prob, w] = solve(sample_approx(s, i), &e_star[i], &h_star[i]);
            for (int k = 0; k < frozen; ++k) {
                const Spectrum wk = transform(ws[std::size_t(k)]);
                gap[i][std::size_t(k)].push_back(std::abs(prob.energy(wk) - prob0.energy(wk)));
            }
            ref_dist[i].push_back(l2_dist(w, w0));
            wl.push_back(w);

            EnsembleSpec lat = white;
            lat.kind = EnsembleKind::nongaussian_lattice;
            lat.ell = ell;
            lat.transform_id = cfg.transform_id;
            solve(sample_approx(lat, i), &e_lat[i], &h_lat[i]);
        }
        for (std::size_t j = 0; j + 1 < L; ++j) diffs[i].push_back(l2_dist(wl[j], wl[j + 1]));
    });

    int good = 0;
    for (std::size_t i = 0; i < seeds; ++i) good += strictly_monotone(diffs[i], -1);
    const double frac = double(good) / double(seeds);
    rep.checks.push_back({"minimizer_ladder_decreasing", frac, 0.8, 0.0, frac >= 0.8,
                          "fraction of seeds with |w*_l - w*_{l/2}| decreasing as l shrinks"});
    // at the coarse end w* is nearly 0, so also record the fraction on each tail of the ladder
    for (std::size_t j0 = 1; j0 + 2 < L; ++j0) {
        int ok = 0;
        for (std::size_t i = 0; i < seeds; ++i)
            ok += strictly_monotone(std::vector<double>(diffs[i].begin() + long(j0), diffs[i].end()), -1);
        rep.rows.push_back({"ladder_decreasing_fraction_from_ell", ells[j0], double(ok) / double(seeds), kNaN});
    }

    auto col = [&](const std::vector<std::vector<double>>& m, std::size_t j) {
        std::vector<double> xs;
        for (const auto& r : m) xs.push_back(r[j]);
        return summarize(xs);
    };
    for (std::size_t j = 0; j + 1 < L; ++j) {
        const auto s = col(diffs, j);
        rep.rows.push_back({"minimizer_step_L2", ells[j], s.mean, s.stderr_});
    }
    for (std::size_t j = 0; j < L; ++j) {
        const auto d = col(ref_dist, j);
        rep.rows.push_back({"minimizer_dist_to_ref", ells[j], d.mean, d.stderr_});
        const auto a = col(e_star, j), b = col(e_lat, j), c = col(h_star, j), e = col(h_lat, j);
        rep.rows.push_back({"universality:gaussian:E_ren_star", ells[j], a.mean, a.stderr_});
        rep.rows.push_back({"universality:lattice:E_ren_star", ells[j], b.mean, b.stderr_});
        rep.rows.push_back({"universality:gaussian:H_star", ells[j], c.mean, c.stderr_});
        rep.rows.push_back({"universality:lattice:H_star", ells[j], e.mean, e.stderr_});
    }

    // pointwise E_ren convergence on frozen w, monotone within stderr bands
    int violations = 0;
    double final_ratio = 0.0;
    for (int k = 0; k < frozen; ++k) {
        std::vector<SampleSummary> s;
        for (std::size_t j = 0; j < L; ++j) {
            std::vector<double> xs;
            for (std::size_t i = 0; i < seeds; ++i) xs.push_back(gap[i][std::size_t(k)][j]);
            s.push_back(summarize(xs));
            rep.rows.push_back({"E_ren_gap_w" + std::to_string(k), ells[j], s.back().mean, s.back().stderr_});
        }
        for (std::size_t j = 0; j + 1 < L; ++j)
            if (s[j + 1].mean > s[j].mean + s[j].stderr_ + s[j + 1].stderr_) ++violations;
        if (s.front().mean > 0.0) final_ratio = std::max(final_ratio, s.back().mean / s.front().mean);
    }
    rep.checks.push_back({"pointwise_E_ren_monotone", double(violations), 0.0, 0.0, violations == 0,
                          "ladder steps where the mean gap grows beyond the stderr band"});
    rep.checks.push_back(bound_check("pointwise_E_ren_shrinks", final_ratio, 1.0,
                                     "gap at the finest l / gap at the coarsest l, worst frozen w"));
    return rep;
}

StudyReport regularity(const StudyConfig& cfg) {
    const auto ns = pick_list(cfg.n_list, {32, 64, 128});
    const auto seeds = pick_samples(cfg, 8);
    const double ell_dq = cfg.ell > 0.0 ? cfg.ell : 0.125;
    StudyReport rep;
    rep.config = base_config(cfg);
    rep.config.update({{"n_list", ns}, {"samples", seeds}, {"eps", cfg.eps}, {"alpha", 1.25 - 2 * cfg.eps},
                       {"diffquot_ensemble", "gaussian_mollified"}, {"diffquot_ell", ell_dq}});
    const double tol = pick_tol(cfg, 0.5);

    std::vector<std::vector<double>> hol(seeds), dq(seeds);
    parallel_for(seeds, [&](std::size_t i) {
        for (int n : ns) {
            const Grid g(n, n);
            StudyConfig c = cfg;
            c.kind = EnsembleKind::white;
            c.ell = 0.0;
            const Triple tr = make_triple(sample_approx(ensemble(c, g, seeds), i), -1.0);
            const MinimizeResult res = minimize(tr.v, tr.F, cfg.minimize);
            hol[i].push_back(holder_of_minimizer(res.w_star, cfg.eps).value);

            c.kind = EnsembleKind::gaussian_mollified;
            c.ell = ell_dq;
            const Triple tm = make_triple(sample_approx(ensemble(c, g, seeds), i), 0.0);
            dq[i].push_back(diag_diffquot_energy(minimize(tm.v, tm.F, cfg.minimize).w_star).sup);
        }
    });

    double worst_h = 0.0, worst_d = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < seeds; ++i) {
        for (std::size_t j = 0; j < ns.size(); ++j) {
            rep.rows.push_back({"holder_w_seed" + std::to_string(i), double(ns[j]), hol[i][j], kNaN});
            rep.rows.push_back({"diffquot_sup_seed" + std::to_string(i), double(ns[j]), dq[i][j], kNaN});
            finite = finite && std::isfinite(dq[i][j]);
        }
        worst_h = std::max(worst_h, relative_spread(hol[i]));
        worst_d = std::max(worst_d, relative_spread(dq[i]));
    }
    rep.checks.push_back({"holder_stability", worst_h, 0.0, tol, worst_h <= tol, "worst per-seed spread across N"});
    rep.checks.push_back({"diffquot_finite", finite ? 1.0 : 0.0, 1.0, 0.0, finite, ""});
    rep.checks.push_back({"diffquot_stability", worst_d, 0.0, tol, worst_d <= tol, "worst per-seed spread across N"});
    return rep;
}

}  // namespace ripple::detail
