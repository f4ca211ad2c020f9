// ripple: command-line front end.
//
// Exit codes: 0 success, 1 other failure (I/O), 2 configuration error,
// 3 numerical abort.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "ripple/anorm.hpp"
#include "ripple/config.hpp"
#include "ripple/energy.hpp"
#include "ripple/field_io.hpp"
#include "ripple/minimize.hpp"
#include "ripple/noise.hpp"
#include "ripple/spectral.hpp"
#include "ripple/studies.hpp"

using namespace ripple;

namespace {

struct Options {
    std::string config_path;
    std::optional<int> n, n1, n2;
    std::string kind;
    std::optional<double> ell;
    std::string transform;
    std::optional<std::uint64_t> seed, samples;
    std::uint64_t index = 0;
    std::vector<double> T, t, ells, s;
    std::vector<int> n_list;
    std::optional<double> S, eps, p, tolerance, tau, residual_tol;
    std::optional<int> max_iters, corpus;
    bool zero_noise = false, strict = false;
    std::string in, out, out_dir, v, F, w, xi, study, norm_kind;
    std::optional<double> t_single, exponent;
    int axis = 1;
};

RunConfig resolve(const Options& o) {
    RunConfig c = o.config_path.empty() ? RunConfig{} : load_config(o.config_path);
    if (o.n) c.n1 = c.n2 = *o.n;
    if (o.n1) c.n1 = *o.n1;
    if (o.n2) c.n2 = *o.n2;
    if (c.n1 && !c.n2) c.n2 = c.n1;
    if (c.n2 && !c.n1) c.n1 = c.n2;
    if (!o.kind.empty()) c.kind = ensemble_kind_from_string(o.kind);
    if (o.ell) c.ell = *o.ell;
    if (!o.transform.empty()) c.transform_id = o.transform;
    if (o.seed) c.seed = *o.seed;
    if (o.samples) c.samples = *o.samples;
    if (!o.T.empty()) c.T_list = o.T;
    if (!o.t.empty()) c.t_list = o.t;
    if (!o.ells.empty()) c.ell_list = o.ells;
    if (!o.s.empty()) c.s_list = o.s;
    if (!o.n_list.empty()) c.n_list = o.n_list;
    if (o.S) c.S = o.S;
    if (o.eps) c.eps = *o.eps;
    if (o.p) c.p = *o.p;
    if (o.tolerance) c.tolerance = o.tolerance;
    if (o.corpus) c.corpus = o.corpus;
    if (o.zero_noise) c.zero_noise = true;
    if (o.tau) c.minimize.tau = *o.tau;
    if (o.residual_tol) c.minimize.residual_tol = *o.residual_tol;
    if (o.max_iters) c.minimize.max_iters = *o.max_iters;
    if (!o.out_dir.empty()) c.out_dir = o.out_dir;
    c.validate();
    return c;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw Error("cannot write " + path);
    f << text;
}

Grid grid_of(const RunConfig& c) { return Grid(c.n1.value_or(64), c.n2.value_or(64)); }

Field zero_like(const Grid& g) {
    Field f(g);
    f.mean_x1_zero = true;
    return f;
}

int cmd_noise(const Options& o, const std::vector<std::string>& args) {
    RunConfig c = resolve(o);
    EnsembleSpec spec;
    spec.kind = c.kind;
    spec.grid = grid_of(c);
    spec.ell = c.ell;
    spec.transform_id = c.transform_id;
    spec.seed = c.seed;
    spec.sample_count = o.index + 1;
    spec.validate();
    const Field xi = sample_approx(spec, o.index);
    write_field(o.out, xi);
    FieldMeta meta;
    meta.seed = c.seed;
    meta.index = o.index;
    meta.ensemble = to_string(c.kind);
    meta.ell = c.ell;
    write_sidecar(o.out, meta);
    c.stage = "noise";
    auto j = c.to_json();
    j["grid"] = {{"n1", spec.grid.n1()}, {"n2", spec.grid.n2()}};
    j["index"] = o.index;
    write_manifest(o.out + ".manifest.json", j, args);
    return 0;
}

int cmd_solve(const Options& o, const std::vector<std::string>& args) {
    const Field xi = read_field(o.in);
    write_field(o.out, solve_linear(xi));
    if (auto meta = read_sidecar(o.in)) write_sidecar(o.out, *meta);
    write_manifest(o.out + ".manifest.json", {{"stage", "solve"}, {"in", o.in}}, args);
    return 0;
}

int cmd_build_f(const Options& o, const std::vector<std::string>& args) {
    RunConfig c = resolve(o);
    const Field v = read_field(o.in);
    std::ostringstream trace;
    trace.precision(12);
    trace << "t,increment\n";
    double t_used;
    Field F(v.grid);
    if (o.t_single) {
        t_used = *o.t_single;
        if (t_used < 0.0) throw ConfigError("t: must be >= 0");
        F = t_used == 0.0 ? inverse(build_f_exact(transform(v))) : build_f(v, t_used);
    } else {
        FLimit lim = build_f_limit(v, c.eps, c.p);
        F = lim.F;
        t_used = lim.t_used;
        for (std::size_t k = 0; k < lim.cauchy_trace.size(); ++k)
            trace << lim.t_values[k] << ',' << lim.cauchy_trace[k] << '\n';
    }
    write_field(o.out, F);
    FieldMeta meta = read_sidecar(o.in).value_or(FieldMeta{});
    meta.t = t_used;
    write_sidecar(o.out, meta);
    write_text(o.out + ".trace.csv", trace.str());
    c.stage = "build-f";
    auto j = c.to_json();
    j["in"] = o.in;
    j["t_used"] = t_used;
    write_manifest(o.out + ".manifest.json", j, args);
    std::cout << "t_used " << t_used << '\n';
    return 0;
}

int cmd_energy(const Options& o, const std::vector<std::string>& args) {
    const Field v = read_field(o.v);
    const Field F = o.F.empty() ? zero_like(v.grid) : read_field(o.F);
    const Field w = (o.w.empty() || o.w == "zero") ? zero_like(v.grid) : read_field(o.w);
    EnergyBreakdown b = e_ren(v, F, w);
    if (!o.xi.empty()) {
        Field u = v;
        u += w;
        b.e_tot = e_tot(u, read_field(o.xi));
    }
    const std::string csv = EnergyBreakdown::csv_header() + "\n" + b.csv_row() + "\n";
    std::cout << csv;
    if (!o.out.empty()) {
        write_text(o.out, csv);
        write_manifest(o.out + ".manifest.json",
                       {{"stage", "energy"}, {"v", o.v}, {"F", o.F.empty() ? "zero" : o.F}, {"w", o.w.empty() ? "zero" : o.w},
                        {"xi", o.xi}},
                       args);
    }
    return 0;
}

int cmd_minimize(const Options& o, const std::vector<std::string>& args) {
    RunConfig c = resolve(o);
    const Field v = read_field(o.v);
    const Field F = o.F.empty() ? zero_like(v.grid) : read_field(o.F);
    const MinimizeResult res = minimize(RenProblem(v, F), c.minimize);
    write_field(o.out, res.w_star);
    std::ostringstream trace;
    trace.precision(15);
    trace << "step,E_ren,residual\n";
    for (std::size_t k = 0; k < res.energy_trace.size(); ++k)
        trace << k << ',' << res.energy_trace[k] << ',' << res.residual_trace[k] << '\n';
    write_text(o.out + ".trace.csv", trace.str());
    c.stage = "minimize";
    auto j = c.to_json();
    j["v"] = o.v;
    j["F"] = o.F.empty() ? "zero" : o.F;
    write_manifest(o.out + ".manifest.json", j, args);
    std::cout << "iterations " << res.iters << "\nE_ren " << res.energy_trace.back() << "\nresidual "
              << res.residual_norm << "\nconverged " << (res.converged ? "yes" : "no") << '\n';
    return 0;
}

int cmd_study(const Options& o, const std::vector<std::string>& args) {
    RunConfig c = resolve(o);
    if (!o.study.empty()) c.study = o.study;
    if (c.study.empty()) throw ConfigError("study: no study name given");
    c.stage = "study";
    const StudyReport rep = run_study(c.study, c.study_config());
    std::string stem = c.study;
    if (rep.config.contains("n")) stem += "_N" + rep.config["n"].dump();
    stem += "_seed" + std::to_string(c.seed);
    const std::string dir = make_run_dir(c.out_dir, stem);
    const std::string base = (std::filesystem::path(dir) / stem).string();
    write_text(base + ".csv", rep.csv());
    write_text(base + ".summary.json", rep.summary() + "\n");
    auto j = c.to_json();
    j["resolved"] = rep.config;
    write_manifest((std::filesystem::path(dir) / "manifest.json").string(), j, args);
    std::cout << rep.summary() << "\n" << (rep.passed() ? "PASS" : "FAIL") << ' ' << c.study << " -> " << dir << '\n';
    return (o.strict && !rep.passed()) ? 1 : 0;
}

int cmd_norm(const Options& o, const std::vector<std::string>& args) {
    const Field f = read_field(o.in);
    NormEstimate e;
    const std::string& k = o.norm_kind;
    auto need_exp = [&]() {
        if (!o.exponent) throw ConfigError("exponent: required for norm kind " + k);
        return *o.exponent;
    };
    const double p = o.p.value_or(2.0);
    if (k == "holder_neg") e = holder_neg(f, need_exp());
    else if (k == "holder_pos") e = holder_pos(f, need_exp());
    else if (k == "besov") e = besov(f, need_exp(), p, o.axis);
    else if (k == "hnorm") e = hnorm(f, need_exp());
    else if (k == "lp") {
        e.kind = NormKind::lp;
        e.p = p;
        e.value = lp_norm(f, p);
        e.n1 = f.grid.n1();
        e.n2 = f.grid.n2();
    } else if (k == "harmonic") {
        e.kind = NormKind::harmonic;
        e.value = harmonic_energy(f);
        e.n1 = f.grid.n1();
        e.n2 = f.grid.n2();
    } else
        throw ConfigError("kind: unknown norm '" + k + "'");
    const std::string csv = NormEstimate::csv_header() + "\n" + e.csv_row() + "\n";
    std::cout << csv;
    if (!o.out.empty()) {
        write_text(o.out, csv);
        write_manifest(o.out + ".manifest.json", {{"stage", "norm"}, {"in", o.in}, {"kind", k}}, args);
    }
    return 0;
}

void ensemble_flags(CLI::App* c, Options& o) {
    c->add_option("--n", o.n, "grid size (n1 = n2)");
    c->add_option("--n1", o.n1, "points along x1");
    c->add_option("--n2", o.n2, "points along x2");
    c->add_option("--kind", o.kind, "white | gaussian_mollified | nongaussian_lattice");
    c->add_option("--ell", o.ell, "approximation scale");
    c->add_option("--transform", o.transform, "odd map for the lattice ensemble");
    c->add_option("--seed", o.seed, "64-bit seed");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ripple: renormalized energy toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("ripple ") + code_version());
    Options o;
    app.add_option("--config", o.config_path, "JSON run configuration");

    auto* noise = app.add_subcommand("noise", "sample a noise field");
    ensemble_flags(noise, o);
    noise->add_option("--index", o.index, "sample index");
    noise->add_option("--out", o.out, "output field")->required();

    auto* solve = app.add_subcommand("solve", "v = L^-1 P xi");
    solve->add_option("--in", o.in)->required();
    solve->add_option("--out", o.out)->required();

    auto* bf = app.add_subcommand("build-f", "F from v with its Cauchy trace");
    bf->add_option("--in", o.in, "v field")->required();
    bf->add_option("--out", o.out)->required();
    bf->add_option("--t", o.t_single, "fixed smoothing time (0 = exact product)");
    bf->add_option("--eps", o.eps);
    bf->add_option("--p", o.p);

    auto* en = app.add_subcommand("energy", "energy breakdown for (v, F, w)");
    en->add_option("--v", o.v)->required();
    en->add_option("--F", o.F, "F field (default zero)");
    en->add_option("--w", o.w, "w field or 'zero'");
    en->add_option("--xi", o.xi, "noise field, enables Etot");
    en->add_option("--out", o.out, "CSV output");

    auto* mn = app.add_subcommand("minimize", "minimize E_ren(v, F; .)");
    mn->add_option("--v", o.v)->required();
    mn->add_option("--F", o.F);
    mn->add_option("--out", o.out)->required();
    mn->add_option("--tau", o.tau);
    mn->add_option("--max-iters", o.max_iters);
    mn->add_option("--residual-tol", o.residual_tol);

    auto* st = app.add_subcommand("study", "run a registered study");
    st->add_option("name", o.study, "study name");
    ensemble_flags(st, o);
    st->add_option("--samples", o.samples);
    st->add_option("--n-list", o.n_list)->delimiter(',');
    st->add_option("--T", o.T)->delimiter(',');
    st->add_option("--t", o.t)->delimiter(',');
    st->add_option("--ell-list", o.ells)->delimiter(',');
    st->add_option("--s", o.s)->delimiter(',');
    st->add_option("--S", o.S);
    st->add_option("--eps", o.eps);
    st->add_option("--p", o.p);
    st->add_option("--tolerance", o.tolerance);
    st->add_option("--corpus", o.corpus);
    st->add_flag("--zero-noise", o.zero_noise);
    st->add_option("--out-dir", o.out_dir);
    st->add_flag("--strict", o.strict, "exit 1 when a check fails");

    auto* nm = app.add_subcommand("norm", "estimate a norm of a field");
    nm->add_option("--in", o.in)->required();
    nm->add_option("--kind", o.norm_kind, "holder_neg | holder_pos | besov | lp | hnorm | harmonic")->required();
    nm->add_option("--exponent", o.exponent);
    nm->add_option("--p", o.p);
    nm->add_option("--axis", o.axis);
    nm->add_option("--out", o.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }

    const std::vector<std::string> args(argv, argv + argc);
    try {
        if (*noise) return cmd_noise(o, args);
        if (*solve) return cmd_solve(o, args);
        if (*bf) return cmd_build_f(o, args);
        if (*en) return cmd_energy(o, args);
        if (*mn) return cmd_minimize(o, args);
        if (*st) return cmd_study(o, args);
        if (*nm) return cmd_norm(o, args);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const NumericalAbort& e) {
        std::cerr << "numerical abort";
        if (e.sample_index() >= 0) std::cerr << " at sample " << e.sample_index();
        std::cerr << ": " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
