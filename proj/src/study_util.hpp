#pragma once
// Internal helpers shared by the study implementations.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ripple/studies.hpp"

namespace ripple::detail {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

inline int pick_n(const StudyConfig& c, int def) { return c.n ? *c.n : def; }
inline std::uint64_t pick_samples(const StudyConfig& c, std::uint64_t def) { return c.samples ? *c.samples : def; }
inline double pick_tol(const StudyConfig& c, double def) { return c.tolerance ? *c.tolerance : def; }
template <class T>
std::vector<T> pick_list(const std::vector<T>& given, std::vector<T> def) {
    return given.empty() ? def : given;
}

// 2^{-from}, 2^{-from-1}, ..., 2^{-to}
inline std::vector<double> dyadic(int from, int to) {
    std::vector<double> out;
    for (int n = from; n <= to; ++n) out.push_back(std::ldexp(1.0, -n));
    return out;
}

inline EnsembleSpec ensemble(const StudyConfig& c, const Grid& g, std::uint64_t samples) {
    EnsembleSpec s;
    s.kind = c.kind;
    s.grid = g;
    s.ell = c.ell;
    s.transform_id = c.transform_id;
    s.seed = c.seed;
    s.sample_count = samples;
    s.validate();
    return s;
}

inline nlohmann::json base_config(const StudyConfig& c) {
    return {{"seed", c.seed}, {"ensemble", to_string(c.kind)}, {"ell", c.ell}, {"transform", c.transform_id}};
}

inline StudyCheck bound_check(const std::string& name, double observed, double bound, const std::string& note = {}) {
    return {name, observed, bound, 0.0, observed <= bound, note};
}

// Sorts (x, y) by x ascending; fits need ascending x.
inline void sort_by_x(std::vector<double>& x, std::vector<double>& y) {
    std::vector<std::size_t> idx(x.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> xs, ys;
    for (auto i : idx) {
        xs.push_back(x[i]);
        ys.push_back(y[i]);
    }
    x = std::move(xs);
    y = std::move(ys);
}

// Per-sample values per[i][j] -> one moment row per parameter j.
inline std::vector<StudyRow> moment_rows(const std::string& series, const std::vector<double>& params,
                                         const std::vector<std::vector<double>>& per, double p) {
    std::vector<StudyRow> out;
    for (std::size_t j = 0; j < params.size(); ++j) {
        std::vector<double> xs(per.size());
        for (std::size_t i = 0; i < per.size(); ++i) xs[i] = per[i][j];
        const SampleSummary m = moment_p(xs, p);
        out.push_back({series, params[j], m.mean, m.stderr_});
    }
    return out;
}

// |mean| / stderr of a centered statistic.
inline StudyCheck centered_check(const std::string& name, const std::vector<double>& xs, double nsigma = 4.0) {
    const SampleSummary s = summarize(xs);
    const double z = s.stderr_ > 0.0 ? std::abs(s.mean) / s.stderr_ : (s.mean == 0.0 ? 0.0 : kNaN);
    return {name, z, 0.0, nsigma, z <= nsigma, "|mean| / stderr"};
}

// Coercivity corpus: energies log-uniform over [kCoercivityElo, 1e2]; the
// low end lets the terms linear in w compete with the quadratic part of E.
inline constexpr double kCoercivityElo = 1e-8;

// (G, E) for `size` (noise sample, corpus w) pairs on grid g.
std::pair<std::vector<double>, std::vector<double>> coercivity_pairs(const StudyConfig& cfg, const Grid& g, int size);
// max(0, max_i |G_i| - lambda E_i)
double coercivity_constant(const std::vector<double>& G, const std::vector<double>& E, double lambda);

}  // namespace ripple::detail
