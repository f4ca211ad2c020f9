#pragma once

#include <cstdint>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "ripple/minimize.hpp"
#include "ripple/noise.hpp"
#include "ripple/studies.hpp"

namespace ripple {

// Run configuration read from JSON. Keys missing from the file keep the
// defaults below; unknown keys are rejected.
struct RunConfig {
    std::optional<int> n1, n2;  // unset: per-command default
    EnsembleKind kind = EnsembleKind::white;
    double ell = 0.0;
    std::string transform_id = "sinmod";
    std::uint64_t seed = 1;
    std::optional<std::uint64_t> samples;
    std::string stage;
    std::string study;
    std::vector<double> T_list, t_list, ell_list, s_list;
    std::vector<int> n_list;
    std::optional<double> S;
    double eps = 0.05;
    double p = 2.0;
    std::optional<double> tolerance;
    std::optional<int> corpus;
    bool zero_noise = false;
    MinimizeParams minimize;
    std::string out_dir = "runs";

    // Throws ConfigError naming the offending key.
    void validate() const;
    nlohmann::json to_json() const;
    static RunConfig from_json(const nlohmann::json& j);
    StudyConfig study_config() const;
};

RunConfig load_config(const std::string& path);

// Creates base/stem, or base/stem_1, base/stem_2, ... if taken. Never
// reuses an existing directory.
std::string make_run_dir(const std::string& base, const std::string& stem);

// Manifest: config echo, seed, command line and code version.
void write_manifest(const std::string& path, const nlohmann::json& config, const std::vector<std::string>& argv);

const char* code_version();

}  // namespace ripple
