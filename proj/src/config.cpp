#include "ripple/config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

namespace ripple {

namespace fs = std::filesystem;

const char* code_version() {
#ifdef RIPPLE_VERSION
    return RIPPLE_VERSION;
#else
    return "unknown";
#endif
}

namespace {

template <class T>
T get(const nlohmann::json& j, const std::string& key) {
    try {
        return j.get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError(key + ": wrong type");
    }
}

void positive_list(const std::vector<double>& xs, const std::string& key) {
    if (xs.empty()) throw ConfigError(key + ": list must be nonempty");
    for (double x : xs)
        if (!(x > 0.0) || !std::isfinite(x)) throw ConfigError(key + ": entries must be positive");
}

void reject_unknown(const nlohmann::json& j, const std::set<std::string>& known, const std::string& prefix) {
    if (!j.is_object()) throw ConfigError((prefix.empty() ? "config" : prefix) + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key())) throw ConfigError(prefix + it.key() + ": unknown key");
}

}  // namespace

void RunConfig::validate() const {
    if (n1 && (*n1 < 8 || *n1 % 2)) throw ConfigError("grid.n1: must be even and >= 8");
    if (n2 && (*n2 < 8 || *n2 % 2)) throw ConfigError("grid.n2: must be even and >= 8");
    if (!(eps > 0.0 && eps < 0.24)) throw ConfigError("eps: must lie in (0, 0.24)");
    if (!(p >= 1.0)) throw ConfigError("p: must be >= 1");
    if (!(ell >= 0.0) || !std::isfinite(ell)) throw ConfigError("ensemble.ell: must be a finite value >= 0");
    if (kind == EnsembleKind::white && ell != 0.0) throw ConfigError("ensemble.ell: white noise requires ell = 0");
    if (samples && *samples == 0) throw ConfigError("ensemble.samples: must be positive");
    if (S && !(*S > 0.0)) throw ConfigError("S: must be positive");
    if (tolerance && !(*tolerance > 0.0)) throw ConfigError("tolerance: must be positive");
    if (corpus && *corpus < 2) throw ConfigError("corpus: must be >= 2");
    for (int n : n_list)
        if (n < 8 || n % 2) throw ConfigError("n_list: entries must be even and >= 8");
    make_transform(transform_id);
    minimize.validate();
}

nlohmann::json RunConfig::to_json() const {
    nlohmann::json j;
    if (n1 || n2) j["grid"] = {{"n1", n1.value_or(*n2)}, {"n2", n2.value_or(*n1)}};
    j["ensemble"] = {{"kind", to_string(kind)}, {"ell", ell}, {"transform", transform_id}, {"seed", seed}};
    if (samples) j["ensemble"]["samples"] = *samples;
    if (!stage.empty()) j["stage"] = stage;
    if (!study.empty()) j["study"] = study;
    if (!T_list.empty()) j["T_list"] = T_list;
    if (!t_list.empty()) j["t_list"] = t_list;
    if (!ell_list.empty()) j["ell_list"] = ell_list;
    if (!s_list.empty()) j["s_list"] = s_list;
    if (!n_list.empty()) j["n_list"] = n_list;
    if (S) j["S"] = *S;
    j["eps"] = eps;
    j["p"] = p;
    if (tolerance) j["tolerance"] = *tolerance;
    if (corpus) j["corpus"] = *corpus;
    j["zero_noise"] = zero_noise;
    j["minimize"] = {{"tau", minimize.tau},
                     {"max_iters", minimize.max_iters},
                     {"residual_tol", minimize.residual_tol},
                     {"energy_tol", minimize.energy_tol},
                     {"backtrack", minimize.backtrack},
                     {"patience", minimize.patience},
                     {"armijo", minimize.armijo},
                     {"tau_max", minimize.tau_max},
                     {"max_backtracks", minimize.max_backtracks}};
    j["out_dir"] = out_dir;
    return j;
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
    reject_unknown(j,
                   {"grid", "ensemble", "stage", "study", "T_list", "t_list", "ell_list", "s_list", "n_list", "S", "eps",
                    "p", "tolerance", "corpus", "zero_noise", "minimize", "out_dir"},
                   "");
    RunConfig c;
    if (j.contains("grid")) {
        const auto& g = j["grid"];
        reject_unknown(g, {"n1", "n2"}, "grid.");
        if (g.contains("n1")) c.n1 = get<int>(g["n1"], "grid.n1");
        if (g.contains("n2")) c.n2 = get<int>(g["n2"], "grid.n2");
        if (c.n1 && !c.n2) c.n2 = c.n1;
        if (c.n2 && !c.n1) c.n1 = c.n2;
    }
    if (j.contains("ensemble")) {
        const auto& e = j["ensemble"];
        reject_unknown(e, {"kind", "ell", "transform", "seed", "samples"}, "ensemble.");
        if (e.contains("kind")) c.kind = ensemble_kind_from_string(get<std::string>(e["kind"], "ensemble.kind"));
        if (e.contains("ell")) c.ell = get<double>(e["ell"], "ensemble.ell");
        if (e.contains("transform")) c.transform_id = get<std::string>(e["transform"], "ensemble.transform");
        if (e.contains("seed")) c.seed = get<std::uint64_t>(e["seed"], "ensemble.seed");
        if (e.contains("samples")) c.samples = get<std::uint64_t>(e["samples"], "ensemble.samples");
    }
    if (j.contains("stage")) c.stage = get<std::string>(j["stage"], "stage");
    if (j.contains("study")) c.study = get<std::string>(j["study"], "study");
    auto list = [&](const char* key, std::vector<double>& dst) {
        if (!j.contains(key)) return;
        dst = get<std::vector<double>>(j[key], key);
        positive_list(dst, key);
    };
    list("T_list", c.T_list);
    list("t_list", c.t_list);
    list("ell_list", c.ell_list);
    list("s_list", c.s_list);
    if (j.contains("n_list")) {
        c.n_list = get<std::vector<int>>(j["n_list"], "n_list");
        if (c.n_list.empty()) throw ConfigError("n_list: list must be nonempty");
    }
    if (j.contains("S")) c.S = get<double>(j["S"], "S");
    if (j.contains("eps")) c.eps = get<double>(j["eps"], "eps");
    if (j.contains("p")) c.p = get<double>(j["p"], "p");
    if (j.contains("tolerance")) c.tolerance = get<double>(j["tolerance"], "tolerance");
    if (j.contains("corpus")) c.corpus = get<int>(j["corpus"], "corpus");
    if (j.contains("zero_noise")) c.zero_noise = get<bool>(j["zero_noise"], "zero_noise");
    if (j.contains("out_dir")) c.out_dir = get<std::string>(j["out_dir"], "out_dir");
    if (j.contains("minimize")) {
        const auto& m = j["minimize"];
        reject_unknown(m,
                       {"tau", "max_iters", "residual_tol", "energy_tol", "backtrack", "patience", "armijo", "tau_max",
                        "max_backtracks"},
                       "minimize.");
        auto& p = c.minimize;
        if (m.contains("tau")) p.tau = get<double>(m["tau"], "minimize.tau");
        if (m.contains("max_iters")) p.max_iters = get<int>(m["max_iters"], "minimize.max_iters");
        if (m.contains("residual_tol")) p.residual_tol = get<double>(m["residual_tol"], "minimize.residual_tol");
        if (m.contains("energy_tol")) p.energy_tol = get<double>(m["energy_tol"], "minimize.energy_tol");
        if (m.contains("backtrack")) p.backtrack = get<double>(m["backtrack"], "minimize.backtrack");
        if (m.contains("patience")) p.patience = get<int>(m["patience"], "minimize.patience");
        if (m.contains("armijo")) p.armijo = get<double>(m["armijo"], "minimize.armijo");
        if (m.contains("tau_max")) p.tau_max = get<double>(m["tau_max"], "minimize.tau_max");
        if (m.contains("max_backtracks")) p.max_backtracks = get<int>(m["max_backtracks"], "minimize.max_backtracks");
    }
    c.validate();
    return c;
}

StudyConfig RunConfig::study_config() const {
    if (n1 && n2 && *n1 != *n2) throw ConfigError("grid: studies run on square grids (n1 = n2)");
    StudyConfig s;
    s.n = n1;
    s.n_list = n_list;
    s.samples = samples;
    s.seed = seed;
    s.T_list = T_list;
    s.t_list = t_list;
    s.ell_list = ell_list;
    s.s_list = s_list;
    s.S = S;
    s.eps = eps;
    s.p = p;
    s.tolerance = tolerance;
    s.kind = kind;
    s.ell = ell;
    s.transform_id = transform_id;
    s.minimize = minimize;
    s.zero_noise = zero_noise;
    s.corpus = corpus;
    return s;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config: " + path + " is not valid JSON (byte " + std::to_string(e.byte) + ")");
    }
    return RunConfig::from_json(j);
}

std::string make_run_dir(const std::string& base, const std::string& stem) {
    fs::create_directories(base);
    for (int k = 0;; ++k) {
        const fs::path p = fs::path(base) / (k == 0 ? stem : stem + "_" + std::to_string(k));
        std::error_code ec;
        // create_directory reports false when the path already exists
        if (fs::create_directory(p, ec)) return p.string();
        if (ec) throw Error("run directory: cannot create " + p.string() + ": " + ec.message());
    }
}

void write_manifest(const std::string& path, const nlohmann::json& config, const std::vector<std::string>& argv) {
    nlohmann::json m;
    m["code_version"] = code_version();
    m["command"] = argv;
    m["config"] = config;
    if (config.contains("ensemble") && config["ensemble"].contains("seed")) m["seed"] = config["ensemble"]["seed"];
    std::ofstream out(path);
    if (!out) throw Error("manifest: cannot write " + path);
    out << m.dump(2) << '\n';
}

}  // namespace ripple
