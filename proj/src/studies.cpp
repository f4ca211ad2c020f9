#include "ripple/studies.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "ripple/spectral.hpp"

namespace ripple {

bool StudyReport::passed() const {
    if (checks.empty()) return false;
    return std::all_of(checks.begin(), checks.end(), [](const StudyCheck& c) { return c.passed; });
}

const StudyCheck* StudyReport::check(const std::string& n) const {
    for (const auto& c : checks)
        if (c.name == n) return &c;
    return nullptr;
}

std::string StudyReport::csv() const {
    std::ostringstream os;
    os.precision(12);
    os << "series,param,value,stderr\n";
    for (const auto& r : rows) {
        os << r.series << ',' << r.param << ',' << r.value << ',';
        if (!std::isnan(r.stderr_)) os << r.stderr_;
        os << '\n';
    }
    return os.str();
}

std::string StudyReport::summary() const {
    nlohmann::json j;
    j["study"] = name;
    j["passed"] = passed();
    j["runtime_s"] = runtime_s;
    j["config"] = config;
    auto& cs = j["checks"] = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json e{{"name", c.name}, {"observed", c.observed}, {"target", c.target},
                         {"tolerance", c.tolerance}, {"passed", c.passed}};
        if (!c.note.empty()) e["note"] = c.note;
        cs.push_back(e);
    }
    return j.dump(2);
}

double lattice_sum_oracle(int n) {
    if (n < 8 || n % 2 != 0) throw ConfigError("lattice_sum_oracle: N must be even and >= 8");
    std::vector<double> per_m1;
    for (int m1 = 1; m1 < n / 2; ++m1) {
        const double k1 = kTwoPi * m1;
        double row = 0.0;
        for (int m2 = -n / 2 + 1; m2 < n / 2; ++m2) {
            const double k2 = kTwoPi * m2;
            row += 1.0 / (k1 * k1 + k2 * k2 / k1);
        }
        per_m1.push_back(2.0 * row);  // +-k1
    }
    return pairwise_sum(per_m1);
}

double relative_spread(const std::vector<double>& xs) {
    if (xs.empty()) return 0.0;
    const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
    if (*hi == 0.0) return 0.0;
    if (!(*lo > 0.0)) return std::numeric_limits<double>::infinity();
    return (*hi - *lo) / *lo;
}

Field corpus_field(const Grid& g, int index, int corpus_size, std::uint64_t seed, double e_lo, double e_hi) {
    constexpr int band = 6;
    if (g.n1() / 2 <= band || g.n2() / 2 <= band) throw ConfigError("corpus_field: grid too coarse for the corpus band");
    Spectrum s(g);
    for (int m2 = -band; m2 <= band; ++m2)
        for (int m1 = 1; m1 <= band; ++m1) {
            const std::uint64_t key = (0xC0ULL << 56) | (std::uint64_t(m1) << 16) | std::uint64_t(m2 + band);
            const auto [a, b] = normal_pair(seed, std::uint64_t(index), key);
            const double decay = 1.0 / (1.0 + m1 * m1 + m2 * m2);
            s.at(m1, m2 >= 0 ? m2 : m2 + g.n2()) = cplx(a, b) * decay;
        }
    s.mean_x1_zero = true;
    // E(a phi) = a^2 H1 - 2 a^3 <A,B> + a^4 |B|^2 with A = |d1|^{-1/2} d2 phi, B = |d1|^{-1/2} d1 (phi^2)/2
    Spectrum dphi = deriv(s, 1);
    Spectrum A = frac_deriv(deriv(s, 2), 1, -0.5);
    Spectrum B = frac_deriv(deriv(dealiased_product(s, s), 1), 1, -0.5);
    B *= 0.5;
    const double c2 = norm2_sq(dphi) + norm2_sq(A), c3 = -2.0 * inner(A, B), c4 = norm2_sq(B);
    auto energy = [&](double a) { return a * a * (c2 + a * (c3 + a * c4)); };
    if (!(e_lo > 0.0 && e_hi >= e_lo)) throw ConfigError("corpus_field: energy range must satisfy 0 < e_lo <= e_hi");
    const double frac = corpus_size > 1 ? double(index) / double(corpus_size - 1) : 0.5;
    const double target = e_lo * std::pow(e_hi / e_lo, frac);
    double lo = 0.0, hi = 1.0;
    while (energy(hi) < target) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (energy(mid) < target ? lo : hi) = mid;
    }
    s *= 0.5 * (lo + hi);
    return inverse(s);
}

namespace detail {

bool strictly_monotone(const std::vector<double>& y, int direction) {
    for (std::size_t i = 1; i < y.size(); ++i)
        if (direction * (y[i] - y[i - 1]) <= 0.0) return false;
    return true;
}

StudyCheck slope_check(const std::string& name, const std::vector<double>& x, const std::vector<double>& y,
                       double target, double tol, int direction, std::vector<StudyRow>* rows) {
    StudyCheck c;
    c.name = name;
    c.target = target;
    c.tolerance = tol;
    if (x.size() < 4) {
        c.passed = false;
        c.observed = std::numeric_limits<double>::quiet_NaN();
        c.note = "under-resolved: fewer than 4 usable points";
        return c;
    }
    // x is sorted ascending by the callers
    const bool mono = strictly_monotone(y, direction);
    const LogLogFit fit = fit_loglog(x, y);
    c.observed = fit.slope;
    c.passed = mono && std::abs(fit.slope - target) <= tol;
    std::ostringstream os;
    os.precision(4);
    os << "fit stderr " << fit.stderr_ << (mono ? "; monotone" : "; NOT monotone");
    c.note = os.str();
    if (rows) rows->push_back({name + "_fit", 0.0, fit.slope, fit.stderr_});
    return c;
}

}  // namespace detail

namespace {
using StudyFn = std::function<StudyReport(const StudyConfig&)>;
const std::map<std::string, StudyFn>& registry() {
    static const std::map<std::string, StudyFn> r = {
        {"divergence", detail::divergence},     {"xi_moments", detail::xi_moments},
        {"v_increments", detail::v_increments}, {"d2r1v_moments", detail::d2r1v_moments},
        {"commutator", detail::commutator},     {"f_cauchy", detail::f_cauchy},
        {"coercivity", detail::coercivity},     {"gamma", detail::gamma},
        {"regularity", detail::regularity},     {"sgi", detail::sgi},
        {"inequalities", detail::inequalities}, {"hkm", detail::hkm},
        {"apriori", detail::apriori},           {"minimization", detail::minimization},
    };
    return r;
}
}  // namespace

std::vector<std::string> study_names() {
    std::vector<std::string> out;
    for (const auto& [k, v] : registry()) out.push_back(k);
    return out;
}

StudyReport run_study(const std::string& name, const StudyConfig& cfg) {
    const auto& r = registry();
    auto it = r.find(name);
    if (it == r.end()) throw ConfigError("study: unknown study '" + name + "'");
    const auto t0 = std::chrono::steady_clock::now();
    StudyReport rep = it->second(cfg);
    rep.name = name;
    rep.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace ripple
