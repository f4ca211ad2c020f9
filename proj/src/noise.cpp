#include "ripple/noise.hpp"

#include <cmath>
#include <map>

#include "ripple/spectral.hpp"
#include "ripple/stats.hpp"

namespace ripple {

const char* to_string(EnsembleKind k) {
    switch (k) {
        case EnsembleKind::white: return "white";
        case EnsembleKind::gaussian_mollified: return "gaussian_mollified";
        case EnsembleKind::nongaussian_lattice: return "nongaussian_lattice";
    }
    return "?";
}

EnsembleKind ensemble_kind_from_string(const std::string& s) {
    if (s == "white") return EnsembleKind::white;
    if (s == "gaussian_mollified") return EnsembleKind::gaussian_mollified;
    if (s == "nongaussian_lattice") return EnsembleKind::nongaussian_lattice;
    throw ConfigError("ensemble.kind: unknown ensemble '" + s + "'");
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::pair<double, double> normal_pair(std::uint64_t seed, std::uint64_t index, std::uint64_t key) {
    std::uint64_t h = splitmix64(seed ^ 0x5252495050ULL);
    h = splitmix64(h ^ index);
    h = splitmix64(h ^ key);
    const std::uint64_t a = splitmix64(h), b = splitmix64(a);
    const double u1 = (double(a >> 11) + 0.5) * 0x1.0p-53;
    const double u2 = (double(b >> 11) + 0.5) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    return {r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2)};
}

namespace {

constexpr std::uint64_t kLatticeTag = 1ULL << 63;

std::uint64_t mode_key(int m1, int m2) {
    return (std::uint64_t(std::uint32_t(m1)) << 32) | std::uint64_t(std::uint32_t(m2));
}

}  // namespace

void validate_odd_transform(const std::function<double(double)>& f, const std::string& id) {
    const int n = 4001;
    const double lo = -10.0, hi = 10.0, dz = (hi - lo) / (n - 1);
    double prev = f(lo);
    for (int i = 0; i < n; ++i) {
        const double z = lo + i * dz;
        const double fz = f(z);
        if (!std::isfinite(fz)) throw ConfigError("transform " + id + ": non-finite value");
        if (std::abs(fz + f(-z)) > 1e-12 * (1.0 + std::abs(fz)))
            throw ConfigError("transform " + id + ": map is not odd");
        if (i > 0 && std::abs(fz - prev) > dz * (1.0 + 1e-9))
            throw ConfigError("transform " + id + ": derivative exceeds 1");
        prev = fz;
    }
}

OddTransform make_transform(const std::string& id) {
    OddTransform t;
    t.id = id;
    if (id == "sinmod") {
        // z - sin(z)/2 has slope in [1/2, 3/2]; divide by 3/2 to make it 1-Lipschitz.
        t.base = [](double z) { return (z - 0.5 * std::sin(z)) / 1.5; };
    } else if (id == "linear") {
        t.base = [](double z) { return z; };
    } else if (id == "softsign") {
        t.base = [](double z) { return z / (1.0 + 0.25 * std::abs(z)); };
    } else {
        throw ConfigError("ensemble.transform_id: unknown transform '" + id + "'");
    }
    validate_odd_transform(t.base, id);
    // E[base(Z)^2] by trapezoid on [-12, 12].
    const int n = 24001;
    const double lo = -12.0, dz = 24.0 / (n - 1);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = lo + i * dz;
        const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        const double b = t.base(z);
        acc += w * b * b * std::exp(-0.5 * z * z);
    }
    acc *= dz / std::sqrt(kTwoPi);
    t.scale = 1.0 / std::sqrt(acc);
    return t;
}

std::vector<std::string> transform_ids() { return {"sinmod", "linear", "softsign"}; }

void EnsembleSpec::validate() const {
    if (!(ell >= 0.0) || !std::isfinite(ell)) throw ConfigError("ensemble.ell: must be a finite value >= 0");
    if (kind == EnsembleKind::white && ell != 0.0) throw ConfigError("ensemble.ell: white noise requires ell = 0");
    if (sample_count == 0) throw ConfigError("ensemble.samples: must be positive");
    if (kind == EnsembleKind::nongaussian_lattice) {
        if (!(ell > 0.0)) throw ConfigError("ensemble.ell: nongaussian_lattice needs ell > 0");
        const long m1 = std::lround(1.0 / ell), m2 = std::lround(1.0 / ell);
        if (m1 > grid.n1() || m2 > grid.n2())
            throw ConfigError("ensemble.ell: lattice cell smaller than one grid cell");
        make_transform(transform_id);
    }
}

Spectrum sample_white_spectrum(const Grid& g, std::uint64_t seed, std::uint64_t index) {
    Spectrum s(g);
    const double r = 1.0 / std::sqrt(2.0);
    s.at(0, 0) = normal_pair(seed, index, mode_key(0, 0)).first;
    for (int j2 = 0; j2 < g.n2(); ++j2) {
        if (g.nyquist2(j2)) continue;
        const int m2 = g.mode2(j2);
        for (int m1 = 0; m1 < g.n1() / 2; ++m1) {
            if (m1 == 0 && m2 <= 0) continue;
            const auto [a, b] = normal_pair(seed, index, mode_key(m1, m2));
            s.at(m1, j2) = cplx(a * r, b * r);
            if (m1 == 0) s.at(0, g.n2() - j2) = std::conj(s.at(0, j2));
        }
    }
    return s;
}

Field sample_white(const Grid& g, std::uint64_t seed, std::uint64_t index) {
    return inverse(sample_white_spectrum(g, seed, index));
}

namespace {

Field lattice_sample(const EnsembleSpec& spec, std::uint64_t index) {
    const Grid& g = spec.grid;
    const int M1 = int(std::lround(1.0 / spec.ell)), M2 = int(std::lround(1.0 / spec.ell));
    const OddTransform T = make_transform(spec.transform_id);
    const double amp = std::sqrt(double(M1) * double(M2));
    std::vector<double> cells(std::size_t(M1) * M2);
    for (int c2 = 0; c2 < M2; ++c2)
        for (int c1 = 0; c1 < M1; ++c1) {
            const double z = normal_pair(spec.seed, index, kLatticeTag | mode_key(c1, c2)).first;
            cells[std::size_t(c2) * M1 + c1] = T(z) * amp;
        }
    Field f(g);
    for (int i2 = 0; i2 < g.n2(); ++i2) {
        const int c2 = int((long(i2) * M2) / g.n2());
        for (int i1 = 0; i1 < g.n1(); ++i1) {
            const int c1 = int((long(i1) * M1) / g.n1());
            f.at(i1, i2) = cells[std::size_t(c2) * M1 + c1];
        }
    }
    Spectrum s = transform(f);
    zero_nyquist(s);
    return inverse(project_p(std::move(s)));
}

}  // namespace

Field sample_approx(const EnsembleSpec& spec, std::uint64_t index) {
    if (index >= spec.sample_count) throw Error("sample_approx: index out of range");
    switch (spec.kind) {
        case EnsembleKind::white: return sample_white(spec.grid, spec.seed, index);
        case EnsembleKind::gaussian_mollified: {
            Spectrum s = sample_white_spectrum(spec.grid, spec.seed, index);
            if (spec.ell > 0.0) s = smooth(s, spec.ell * spec.ell * spec.ell);
            return inverse(s);
        }
        case EnsembleKind::nongaussian_lattice: return lattice_sample(spec, index);
    }
    throw Error("sample_approx: unknown ensemble kind");
}

std::vector<EnsembleRow> run_ensemble(const EnsembleSpec& spec, const std::vector<double>& params,
                                      const SampleStatistic& stat, double p) {
    spec.validate();
    const std::size_t n = spec.sample_count;
    std::vector<std::vector<double>> per(n);
    parallel_for(n, [&](std::size_t i) {
        per[i] = stat(sample_approx(spec, i), i);
        if (per[i].size() != params.size())
            throw Error("run_ensemble: statistic returned " + std::to_string(per[i].size()) + " values for " +
                        std::to_string(params.size()) + " parameters");
        for (double v : per[i])
            if (!std::isfinite(v)) throw NumericalAbort("non-finite statistic", long(i));
    });
    std::vector<EnsembleRow> rows(params.size());
    for (std::size_t j = 0; j < params.size(); ++j) {
        std::vector<double> xs(n);
        for (std::size_t i = 0; i < n; ++i) xs[i] = per[i][j];
        const SampleSummary m = summarize(xs), mp = moment_p(xs, p);
        rows[j] = {params[j], m.mean, m.stderr_, mp.mean, mp.stderr_, n};
    }
    return rows;
}

std::vector<std::pair<int, int>> probe_points(const Grid& g) {
    std::vector<std::pair<int, int>> pts;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 2; ++b) pts.emplace_back((a * g.n1()) / 4 + b * g.n1() / 8, (b * g.n2()) / 2 + a * g.n2() / 16);
    return pts;
}

SampleStatistic named_statistic(const std::string& name, const std::vector<double>& params) {
    if (name == "xi_T_rms") {
        // root mean square over the probe set of xi_T(x), one value per T
        return [params](const Field& xi, std::uint64_t) {
            const Spectrum s = transform(xi);
            const auto pts = probe_points(xi.grid);
            std::vector<double> out;
            for (double T : params) {
                const Field f = inverse(smooth(s, T));
                double acc = 0.0;
                for (auto [i1, i2] : pts) acc += f.at(i1, i2) * f.at(i1, i2);
                out.push_back(std::sqrt(acc / pts.size()));
            }
            return out;
        };
    }
    if (name == "pairing_cos") {
        // xi(phi) for phi = cos(2 pi m x1), m taken from params
        return [params](const Field& xi, std::uint64_t) {
            std::vector<double> out;
            for (double m : params) {
                const Field phi =
                    Field::from_function(xi.grid, [m](double x1, double) { return std::cos(kTwoPi * m * x1); });
                out.push_back(inner(xi, phi));
            }
            return out;
        };
    }
    throw ConfigError("statistic: unknown statistic '" + name + "'");
}

std::vector<std::string> statistic_names() { return {"xi_T_rms", "pairing_cos"}; }

}  // namespace ripple
