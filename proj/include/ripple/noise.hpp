#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ripple/grid.hpp"

namespace ripple {

enum class EnsembleKind { white, gaussian_mollified, nongaussian_lattice };

const char* to_string(EnsembleKind k);
EnsembleKind ensemble_kind_from_string(const std::string& s);

struct EnsembleSpec {
    EnsembleKind kind = EnsembleKind::white;
    Grid grid{64, 64};
    double ell = 0.0;
    std::string transform_id = "sinmod";
    std::uint64_t seed = 0;
    std::uint64_t sample_count = 1;

    void validate() const;
};

// Odd map used by the non-Gaussian lattice ensemble, already rescaled to
// unit output variance under a standard normal input.
struct OddTransform {
    std::string id;
    std::function<double(double)> base;  // odd, |base'| <= 1
    double scale = 1.0;
    double operator()(double z) const { return scale * base(z); }
};

// Throws unless f is odd and 1-Lipschitz on a 1-d probe grid.
void validate_odd_transform(const std::function<double(double)>& f, const std::string& id);
OddTransform make_transform(const std::string& id);
std::vector<std::string> transform_ids();

// Counter-based normals: the value for (seed, index, key) never depends on
// the grid, so low modes agree across resolutions for matched seeds.
std::uint64_t splitmix64(std::uint64_t x);
std::pair<double, double> normal_pair(std::uint64_t seed, std::uint64_t index, std::uint64_t key);

Spectrum sample_white_spectrum(const Grid& g, std::uint64_t seed, std::uint64_t index = 0);
Field sample_white(const Grid& g, std::uint64_t seed, std::uint64_t index = 0);
Field sample_approx(const EnsembleSpec& spec, std::uint64_t index);

// One row per parameter point.
struct EnsembleRow {
    double param = 0.0;
    double mean = 0.0;
    double mean_stderr = 0.0;
    double moment = 0.0;  // <|X|^p>^{1/p}
    double moment_stderr = 0.0;
    std::size_t n = 0;
};

using SampleStatistic = std::function<std::vector<double>(const Field& xi, std::uint64_t index)>;

std::vector<EnsembleRow> run_ensemble(const EnsembleSpec& spec, const std::vector<double>& params,
                                      const SampleStatistic& stat, double p = 2.0);

// Named statistics over a noise sample, parameterized by the params list.
SampleStatistic named_statistic(const std::string& name, const std::vector<double>& params);
std::vector<std::string> statistic_names();

// Fixed probe set used for sup_x in moment studies.
std::vector<std::pair<int, int>> probe_points(const Grid& g);

}  // namespace ripple
