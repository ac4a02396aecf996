// cslnoise: command-line front end for the collapse-noise library.
#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <thread>

#include "cslnoise/errors.hpp"
#include "cslnoise/results.hpp"
#include "cslnoise/scenario.hpp"
#include "cslnoise/selfcheck.hpp"

namespace {

using nlohmann::json;
using namespace csl;
using namespace csl::io;

enum ExitCode { kOk = 0, kValidation = 1, kConvergence = 2, kInternal = 3 };

struct Options {
    std::string scenario;
    std::string out_dir;
    int threads = 1;
    std::string format;
    std::optional<std::uint64_t> seed;
};

struct Artifact {
    std::string name;  // file name under the output directory
    std::string content;
};

/// Everything a subcommand produces. Written once, at the end.
struct Output {
    ResultDocument doc;
    std::vector<Artifact> files;
    std::string stdout_text;
    int status = kOk;
};

void report_error(const std::string& message, const std::optional<std::string>& key, int code) {
    json err = {{"error", message}, {"key", key ? json(*key) : json(nullptr)}, {"code", code}};
    std::cerr << err.dump() << '\n';
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

ScenarioFile load(const Options& opt) {
    if (opt.scenario.empty()) throw ValidationError("--scenario is required", "--scenario");
    ScenarioFile s = load_scenario(opt.scenario);
    if (opt.seed) {
        if (!s.simulation) throw ValidationError("--seed needs a simulation section", "--seed");
        s.simulation->seed = *opt.seed;
        s.echo["simulation"]["seed"] = *opt.seed;
    }
    return s;
}

std::string choose_format(const Options& opt, const std::string& fallback) {
    const std::string f = opt.format.empty() ? fallback : opt.format;
    if (f != "csv" && f != "json") throw ValidationError("--format must be csv or json", "--format");
    return f;
}

void emit(Output& out, const std::string& format, const std::string& stem, const std::string& csv,
          const json& js) {
    if (format == "csv") {
        out.files.push_back({stem + ".csv", csv});
        out.stdout_text += csv;
    } else {
        out.files.push_back({stem + ".json", js.dump(2) + "\n"});
        out.stdout_text += js.dump(2) + "\n";
    }
}

Output run_eta(const Options& opt) {
    const ScenarioFile s = load(opt);
    const Geometry& g = s.require_geometry();
    const double r_c = s.collapse.r_c;
    Output out;
    json o = {{"r_c_m", r_c}, {"mass_kg", geometry_mass(g)}};
    const double point = eta_point_mass(geometry_mass(g), {1.0, r_c}, s.constants);
    std::string csv;
    if (const auto* stack = std::get_if<LayerStack>(&g)) {
        const EtaResult eta = eta_multilayer(*stack, {s.collapse.lambda, r_c}, s.constants);
        o.update(to_json(eta));
        o["height_m"] = stack->height();
        o["layers"] = stack->size();
        csv = layer_table(*stack, eta).str();
    } else {
        const double eta_bar = reduced_eta(g, r_c, s.constants);
        o["eta_bar_per_m2"] = eta_bar;
        o["eta_per_s_m2"] = s.collapse.lambda * eta_bar;
        CsvTable t({"r_c [m]", "mass [kg]", "eta_bar [1/m2]", "point_limit [1/m2]"});
        t.add_row({r_c, geometry_mass(g), eta_bar, point});
        csv = t.str();
    }
    o["point_limit_eta_bar_per_m2"] = point;
    o["lambda_per_s"] = s.collapse.lambda;
    out.doc.input = s.echo;
    out.doc.outputs = o;
    emit(out, choose_format(opt, "json"), s.label + "-eta", csv, o);
    return out;
}

Output run_bound(const Options& opt) {
    const ScenarioFile s = load(opt);
    const ExclusionCurve curve = exclusion_curve(s.exclusion_scenario(), resolve_threads(opt.threads));
    Output out;
    out.doc.input = s.echo;
    out.doc.outputs = to_json(curve);
    emit(out, choose_format(opt, "csv"), s.label + "-bound", curve_table(curve).str(), out.doc.outputs);
    return out;
}

const SearchSpace& require_search(const ScenarioFile& s) {
    if (!s.search) throw ValidationError("scenario has no search section", "search");
    return *s.search;
}

Output run_sweep(const Options& opt) {
    const ScenarioFile s = load(opt);
    const SearchSpace& space = require_search(s);
    std::vector<int> n_lay;
    for (int n = space.n_lay_min; n <= space.n_lay_max; ++n) n_lay.push_back(n);
    std::vector<Candidate> table;
    for (double eps : space.epsilons) {
        auto part = sweep_L(space, n_lay, eps, resolve_threads(opt.threads));
        table.insert(table.end(), part.begin(), part.end());
    }
    Output out;
    out.doc.input = s.echo;
    json rows = json::array();
    for (const auto& c : table) rows.push_back(to_json(c));
    out.doc.outputs = {{"r_c_m", space.r_c}, {"candidates", rows}};
    emit(out, choose_format(opt, "csv"), s.label + "-sweep", candidate_table(table).str(), out.doc.outputs);
    return out;
}

Output run_optimize(const Options& opt) {
    const ScenarioFile s = load(opt);
    const SearchSpace& space = require_search(s);
    const Optimum best = optimize(space, resolve_threads(opt.threads));
    Output out;
    out.doc.input = s.echo;
    out.doc.outputs = {{"r_c_m", space.r_c},
                       {"best", to_json(best.best)},
                       {"evaluated", best.table.size()}};
    const std::string format = choose_format(opt, "json");
    emit(out, format, s.label + "-optimum", candidate_table({best.best}).str(), out.doc.outputs);
    out.files.push_back({s.label + "-optimize-table.csv", candidate_table(best.table).str()});
    return out;
}

Output run_shapes(const Options& opt) {
    const ScenarioFile s = load(opt);
    if (!s.shapes) throw ValidationError("scenario has no shapes section", "shapes");
    const ShapesSpec& spec = *s.shapes;
    const CollapseParams p{s.collapse.lambda, s.collapse.r_c};
    const ShapeComparison cmp = compare_shapes(spec.density, spec.aspect_ratios, p, spec.masses, s.constants);

    CsvTable ratio({"side_over_rc", "ratio_equal_height", "ratio_equal_density_thin"});
    json ratio_rows = json::array();
    for (double x : spec.side_over_rc) {
        const double side = x * p.r_c;
        // thin cuboid, height r_c / 100
        const double mass = spec.density * side * side * p.r_c / 100.0;
        const double eq_h = cuboid_cylinder_ratio(side, p.r_c, mass, spec.density,
                                                  ShapeMatch::equal_mass_height, s.constants);
        const double eq_d = cuboid_cylinder_ratio(side, p.r_c, mass, spec.density,
                                                  ShapeMatch::equal_mass_density, s.constants);
        ratio.add_row({x, eq_h, eq_d});
        ratio_rows.push_back({x, eq_h, eq_d});
    }
    Output out;
    out.doc.input = s.echo;
    json rows = json::array();
    for (const auto& r : cmp.rows) rows.push_back({{"mass_kg", r.mass}, {"sphere", r.sphere},
                                                   {"cuboid", r.cuboid}, {"cylinder", r.cylinder}});
    out.doc.outputs = {{"aspect_ratios", cmp.aspect_ratios},
                       {"s_csl_n2_per_hz", rows},
                       {"cuboid_cylinder_ratio",
                        {{"columns", {"side_over_rc", "ratio_equal_height", "ratio_equal_density_thin"}},
                         {"rows", ratio_rows}}}};
    const std::string format = choose_format(opt, "csv");
    emit(out, format, s.label + "-shapes", shape_table(cmp).str(), out.doc.outputs);
    if (format == "csv") {
        out.files.push_back({s.label + "-shape-ratio.csv", ratio.str()});
        out.stdout_text += "\n" + ratio.str();
    }
    return out;
}

Output run_simulate(const Options& opt) {
    const ScenarioFile s = load(opt);
    const SimConfig cfg = s.simulation_config();
    const double f0 = cfg.resonator.omega0 / (2.0 * kPi);
    PsdComparison cmp;
    cmp.band_lo = s.simulation->band_lo * f0;
    cmp.band_hi = s.simulation->band_hi * f0;
    const SimulatedPsd sim = simulate_psd(cfg, resolve_threads(opt.threads));
    cmp.estimate = sim.estimate;
    cmp.variance = sim.estimate.sample_variance;
    cmp.analytic_variance = dns_variance(cfg.resonator, cfg.force_psd);
    for (std::size_t k = 0; k < cmp.estimate.psd.size(); ++k) {
        const double f = cmp.estimate.frequency[k];
        cmp.analytic.push_back(dns(2.0 * kPi * f, cfg.resonator, cfg.force_psd));
        if (f >= cmp.band_lo && f <= cmp.band_hi) {
            cmp.max_band_residual =
                std::max(cmp.max_band_residual, std::abs(cmp.estimate.psd[k] / cmp.analytic[k] - 1.0));
        }
    }
    Output out;
    out.doc.input = s.echo;
    out.doc.outputs = {{"force_psd_n2_per_hz", cfg.force_psd},
                       {"dt_s", cfg.dt},
                       {"segments", cmp.estimate.segments},
                       {"df_hz", cmp.estimate.df},
                       {"variance_m2", cmp.variance},
                       {"analytic_variance_m2", cmp.analytic_variance},
                       {"psd_integral_m2", cmp.estimate.integral()},
                       {"band_hz", {cmp.band_lo, cmp.band_hi}},
                       {"max_band_residual", cmp.max_band_residual}};
    const std::string csv = psd_table(cmp, 4.0 * f0).str();
    emit(out, choose_format(opt, "csv"), s.label + "-psd", csv, out.doc.outputs);
    return out;
}

Output run_validate(const Options& opt) {
    const auto checks = run_self_checks(resolve_threads(opt.threads));
    Output out;
    json rows = json::array();
    std::string text;
    bool ok = true;
    for (const auto& c : checks) {
        ok = ok && c.passed;
        text += std::string(c.passed ? "PASS " : "FAIL ") + c.name + ": " + c.detail + "\n";
        rows.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    }
    out.doc.input = json::object();
    out.doc.outputs = {{"checks", rows}, {"passed", ok}};
    if (choose_format(opt, "csv") == "json") {
        out.stdout_text = out.doc.outputs.dump(2) + "\n";
    } else {
        out.stdout_text = text;
    }
    out.files.push_back({"validate.txt", text});
    out.status = ok ? kOk : kConvergence;
    return out;
}

void finish(Output& out, const std::string& name, const Options& opt,
            std::chrono::steady_clock::time_point start, const std::string& started) {
    out.doc.subcommand = name;
    out.doc.threads = resolve_threads(opt.threads);
    out.doc.started_utc = started;
    out.doc.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string dir = opt.out_dir;
    if (dir.empty()) {
        if (const char* env = std::getenv("CSLNOISE_OUT_DIR")) dir = env;
    }
    if (dir.empty()) {
        std::cout << out.stdout_text;
        return;
    }
    const std::filesystem::path root(dir);
    for (const auto& f : out.files) write_file(root / f.name, f.content);
    const std::string label = out.doc.input.value("label", name);
    write_file(root / (label + "-" + name + ".result.json"), out.doc.to_json().dump(2) + "\n");
    std::cout << "wrote " << out.files.size() + 1 << " files to " << root.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Collapse-noise diffusion constants, exclusion bounds and multilayer optimization"};
    app.set_version_flag("--version", CSLNOISE_VERSION);
    app.require_subcommand(1);

    Options opt;
    using Runner = Output (*)(const Options&);
    const std::vector<std::tuple<std::string, std::string, Runner>> commands = {
        {"eta", "reduced diffusion constant and its layer decomposition at r_c", run_eta},
        {"bound", "exclusion curve lambda_bound(r_c) as CSV", run_bound},
        {"sweep", "lambda_bound over the search grid", run_sweep},
        {"optimize", "best multilayer geometry of the search space", run_optimize},
        {"shapes", "shape comparison of the collapse force noise", run_shapes},
        {"simulate", "Monte-Carlo displacement PSD against the analytic spectrum", run_simulate},
        {"validate", "built-in oracle equivalence checks", run_validate},
    };
    std::vector<CLI::App*> subs;
    for (const auto& [name, help, fn] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--scenario", opt.scenario, "scenario JSON file");
        sub->add_option("--out", opt.out_dir, "output directory (default: $CSLNOISE_OUT_DIR, else stdout)");
        sub->add_option("--threads", opt.threads, "worker threads, 0 = all cores");
        sub->add_option("--format", opt.format, "csv or json");
        sub->add_option("--seed", opt.seed, "override the simulation seed");
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        report_error(e.what(), std::nullopt, kValidation);
        return kValidation;
    }

    const auto start = std::chrono::steady_clock::now();
    const std::string started = utc_timestamp();
    for (std::size_t i = 0; i < subs.size(); ++i) {
        if (!subs[i]->parsed()) continue;
        const std::string& name = std::get<0>(commands[i]);
        try {
            Output out = std::get<2>(commands[i])(opt);
            finish(out, name, opt, start, started);
            return out.status;
        } catch (const ValidationError& e) {
            report_error(e.what(), e.key().empty() ? std::nullopt : std::optional<std::string>(e.key()), kValidation);
            return kValidation;
        } catch (const ConvergenceError& e) {
            report_error(e.what(), std::nullopt, kConvergence);
            return kConvergence;
        } catch (const std::exception& e) {
            report_error(e.what(), std::nullopt, kInternal);
            return kInternal;
        }
    }
    return kInternal;
}
