#pragma once

#include <cstdint>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "ripple/minimize.hpp"
#include "ripple/noise.hpp"
#include "ripple/stats.hpp"

namespace ripple {

// Unset optionals and empty lists take per-study defaults; the resolved
// values are echoed into StudyReport::config.
struct StudyConfig {
    std::optional<int> n;
    std::vector<int> n_list;
    std::optional<std::uint64_t> samples;
    std::uint64_t seed = 1;
    std::vector<double> T_list;
    std::vector<double> t_list;
    std::vector<double> ell_list;
    std::vector<double> s_list;
    std::optional<double> S;
    double eps = 0.05;
    double p = 2.0;
    std::optional<double> tolerance;
    EnsembleKind kind = EnsembleKind::white;
    double ell = 0.0;
    std::string transform_id = "sinmod";
    MinimizeParams minimize;
    bool zero_noise = false;  // coercivity with v = F = 0
    std::optional<int> corpus;
};

struct StudyRow {
    std::string series;
    double param = 0.0;
    double value = 0.0;
    double stderr_ = 0.0;  // NaN when unavailable
};

struct StudyCheck {
    std::string name;
    double observed = 0.0;
    double target = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::string note;
};

struct StudyReport {
    std::string name;
    nlohmann::json config;
    std::vector<StudyRow> rows;
    std::vector<StudyCheck> checks;
    double runtime_s = 0.0;

    bool passed() const;
    const StudyCheck* check(const std::string& name) const;
    std::string csv() const;
    std::string summary() const;
};

double lattice_sum_oracle(int n);

StudyReport run_study(const std::string& name, const StudyConfig& cfg);
std::vector<std::string> study_names();

// Deterministic band-limited test field, identical on every grid that
// resolves it (|m| <= 6 per axis). Amplitudes are scaled so that the
// anharmonic energies of the corpus span [e_lo, e_hi] log-uniformly.
Field corpus_field(const Grid& g, int index, int corpus_size, std::uint64_t seed = 0, double e_lo = 1e-2,
                   double e_hi = 1e2);

// (max - min) / min over positive values.
double relative_spread(const std::vector<double>& xs);

namespace detail {
StudyCheck slope_check(const std::string& name, const std::vector<double>& x, const std::vector<double>& y,
                       double target, double tol, int direction, std::vector<StudyRow>* rows = nullptr);
bool strictly_monotone(const std::vector<double>& y, int direction);

StudyReport divergence(const StudyConfig& cfg);
StudyReport xi_moments(const StudyConfig& cfg);
StudyReport v_increments(const StudyConfig& cfg);
StudyReport d2r1v_moments(const StudyConfig& cfg);
StudyReport commutator(const StudyConfig& cfg);
StudyReport f_cauchy(const StudyConfig& cfg);
StudyReport sgi(const StudyConfig& cfg);
StudyReport coercivity(const StudyConfig& cfg);
StudyReport hkm(const StudyConfig& cfg);
StudyReport apriori(const StudyConfig& cfg);
StudyReport inequalities(const StudyConfig& cfg);
StudyReport minimization(const StudyConfig& cfg);
StudyReport gamma(const StudyConfig& cfg);
StudyReport regularity(const StudyConfig& cfg);
}  // namespace detail

}  // namespace ripple
