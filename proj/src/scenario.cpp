#include "cslnoise/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

#include "cslnoise/errors.hpp"

namespace csl::io {

using nlohmann::json;

namespace {

// value * factor / divisor; sub-units divide by an exact power of ten so
// "18 um" reads back as the double nearest 1.8e-5.
struct UnitDef {
    std::string_view name;
    Dimension dim;
    double factor;
    double divisor = 1.0;
};

constexpr UnitDef kUnits[] = {
    {"m", Dimension::length, 1.0},
    {"\xC2\xB5m", Dimension::length, 1.0, 1e6},  // micro sign
    {"\xCE\xBCm", Dimension::length, 1.0, 1e6},  // greek mu
    {"um", Dimension::length, 1.0, 1e6},
    {"nm", Dimension::length, 1.0, 1e9},
    {"kg", Dimension::mass, 1.0},
    {"kg/m3", Dimension::density, 1.0},
    {"N/m", Dimension::stiffness, 1.0},
    {"Hz", Dimension::frequency, 1.0},
    {"K", Dimension::temperature, 1.0},
    {"1/s", Dimension::rate, 1.0},
    {"N2/Hz", Dimension::force_psd, 1.0},
    {"aN2/Hz", Dimension::force_psd, 1.0, 1.0 / kAttoNewtonSquared},
    {"Hz", Dimension::damping, 2.0 * kPi},
    {"1/s", Dimension::damping, 1.0},
};

std::string_view si_unit(Dimension dim) {
    switch (dim) {
        case Dimension::length: return "m";
        case Dimension::mass: return "kg";
        case Dimension::density: return "kg/m3";
        case Dimension::stiffness: return "N/m";
        case Dimension::frequency: return "Hz";
        case Dimension::temperature: return "K";
        case Dimension::rate: return "1/s";
        case Dimension::force_psd: return "N2/Hz";
        case Dimension::damping: return "1/s";
    }
    return "";
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

/// Object reader that records which keys were consumed and builds the
/// normalized echo as it goes.
class Section {
public:
    Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ValidationError(where() + " must be an object", where());
    }

    bool has(const std::string& key) const { return j_.contains(key); }

    std::string key(const std::string& k) const { return path_.empty() ? k : path_ + "." + k; }

    const json& raw(const std::string& k) {
        used_.insert(k);
        return j_.at(k);
    }

    double quantity(const std::string& k, Dimension dim) {
        if (!has(k)) throw ValidationError("missing required quantity " + key(k), key(k));
        const json& v = raw(k);
        if (!v.is_string()) {
            throw ValidationError(key(k) + " must be a string \"<number> <unit>\"", key(k));
        }
        const double value = parse_quantity(v.get<std::string>(), dim, key(k));
        out_[k] = format_quantity(value, dim);
        return value;
    }

    std::optional<double> opt_quantity(const std::string& k, Dimension dim) {
        if (!has(k)) return std::nullopt;
        return quantity(k, dim);
    }

    double quantity_or(const std::string& k, Dimension dim, double fallback) {
        if (!has(k)) {
            out_[k] = format_quantity(fallback, dim);
            return fallback;
        }
        return quantity(k, dim);
    }

    std::vector<double> quantity_list(const std::string& k, Dimension dim) {
        if (!has(k)) throw ValidationError("missing required list " + key(k), key(k));
        const json& v = raw(k);
        if (!v.is_array() || v.empty()) throw ValidationError(key(k) + " must be a non-empty list", key(k));
        std::vector<double> values;
        json echo = json::array();
        for (std::size_t i = 0; i < v.size(); ++i) {
            const std::string item = key(k) + "[" + std::to_string(i) + "]";
            if (!v[i].is_string()) throw ValidationError(item + " must be a quantity string", item);
            values.push_back(parse_quantity(v[i].get<std::string>(), dim, item));
            echo.push_back(format_quantity(values.back(), dim));
        }
        out_[k] = echo;
        return values;
    }

    double number_or(const std::string& k, double fallback) {
        double value = fallback;
        if (has(k)) {
            const json& v = raw(k);
            if (!v.is_number()) throw ValidationError(key(k) + " must be a number", key(k));
            value = v.get<double>();
            if (!std::isfinite(value)) throw ValidationError(key(k) + " must be finite", key(k));
        }
        out_[k] = value;
        return value;
    }

    std::vector<double> number_list_or(const std::string& k, std::vector<double> fallback) {
        if (has(k)) {
            const json& v = raw(k);
            if (!v.is_array() || v.empty()) {
                throw ValidationError(key(k) + " must be a non-empty list of numbers", key(k));
            }
            fallback.clear();
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (!v[i].is_number()) {
                    const std::string item = key(k) + "[" + std::to_string(i) + "]";
                    throw ValidationError(item + " must be a number", item);
                }
                fallback.push_back(v[i].get<double>());
            }
        }
        out_[k] = fallback;
        return fallback;
    }

    long long integer_or(const std::string& k, long long fallback, long long lo, long long hi) {
        long long value = fallback;
        if (has(k)) {
            const json& v = raw(k);
            if (!v.is_number_integer()) throw ValidationError(key(k) + " must be an integer", key(k));
            value = v.get<long long>();
        }
        if (value < lo || value > hi) {
            throw ValidationError(key(k) + " must lie in [" + std::to_string(lo) + ", " +
                                      std::to_string(hi) + "]",
                                  key(k));
        }
        out_[k] = value;
        return value;
    }

    long long integer(const std::string& k, long long lo, long long hi) {
        if (!has(k)) throw ValidationError("missing required integer " + key(k), key(k));
        return integer_or(k, 0, lo, hi);
    }

    std::uint64_t unsigned_or(const std::string& k, std::uint64_t fallback) {
        std::uint64_t value = fallback;
        if (has(k)) {
            const json& v = raw(k);
            if (!v.is_number_unsigned()) {
                throw ValidationError(key(k) + " must be a non-negative integer", key(k));
            }
            value = v.get<std::uint64_t>();
        }
        out_[k] = value;
        return value;
    }

    bool flag_or(const std::string& k, bool fallback) {
        bool value = fallback;
        if (has(k)) {
            const json& v = raw(k);
            if (!v.is_boolean()) throw ValidationError(key(k) + " must be true or false", key(k));
            value = v.get<bool>();
        }
        out_[k] = value;
        return value;
    }

    std::string text(const std::string& k) {
        if (!has(k)) throw ValidationError("missing required field " + key(k), key(k));
        return text_or(k, "");
    }

    std::string text_or(const std::string& k, std::string fallback) {
        if (has(k)) {
            const json& v = raw(k);
            if (!v.is_string()) throw ValidationError(key(k) + " must be a string", key(k));
            fallback = v.get<std::string>();
        }
        out_[k] = fallback;
        return fallback;
    }

    Section child(const std::string& k) {
        used_.insert(k);
        return Section(j_.at(k), key(k));
    }

    void put(const std::string& k, json value) { out_[k] = std::move(value); }

    /// Rejects unconsumed keys and returns the echo.
    json finish() const {
        for (const auto& [k, v] : j_.items()) {
            if (!used_.count(k)) throw ValidationError("unknown key " + key(k), key(k));
        }
        return out_;
    }

private:
    std::string where() const { return path_.empty() ? "scenario" : path_; }

    const json& j_;
    std::string path_;
    std::set<std::string> used_;
    json out_ = json::object();
};

double positive(double v, const std::string& key) {
    if (!(v > 0.0)) throw ValidationError(key + " must be positive", key);
    return v;
}

double non_negative(double v, const std::string& key) {
    if (!(v >= 0.0)) throw ValidationError(key + " must be >= 0", key);
    return v;
}

/// `material<suffix>` names an entry of `materials`; otherwise `density<suffix>`.
double density_of(Section& s, const std::map<std::string, double>& materials,
                  const std::string& suffix) {
    const std::string mat = "material" + suffix;
    const std::string den = "density" + suffix;
    if (s.has(mat) && s.has(den)) {
        throw ValidationError("give either " + s.key(mat) + " or " + s.key(den), s.key(den));
    }
    if (s.has(mat)) {
        const std::string name = s.text(mat);
        const auto it = materials.find(name);
        if (it == materials.end()) throw ValidationError("unknown material '" + name + "'", s.key(mat));
        return it->second;
    }
    return non_negative(s.quantity(den, Dimension::density), s.key(den));
}

std::vector<double> grid_from(Section& s, const std::string& prefix, Dimension dim, double lo,
                              double hi, long long points) {
    const std::string list = prefix + "_grid";
    if (s.has(list)) {
        if (s.has(prefix + "_min") || s.has(prefix + "_max") || s.has(prefix + "_points")) {
            throw ValidationError("give either " + s.key(list) + " or a min/max/points range",
                                  s.key(list));
        }
        return s.quantity_list(list, dim);
    }
    lo = positive(s.quantity_or(prefix + "_min", dim, lo), s.key(prefix + "_min"));
    hi = positive(s.quantity_or(prefix + "_max", dim, hi), s.key(prefix + "_max"));
    points = s.integer_or(prefix + "_points", points, 2, 100000);
    if (!(hi > lo)) throw ValidationError(s.key(prefix + "_max") + " must exceed the minimum", s.key(prefix + "_max"));
    return log_grid(lo, hi, static_cast<int>(points));
}

std::vector<double> plain_grid(Section& s, const std::string& prefix, double lo, double hi,
                               long long points) {
    lo = positive(s.number_or(prefix + "_min", lo), s.key(prefix + "_min"));
    hi = positive(s.number_or(prefix + "_max", hi), s.key(prefix + "_max"));
    points = s.integer_or(prefix + "_points", points, 2, 100000);
    if (!(hi > lo)) throw ValidationError(s.key(prefix + "_max") + " must exceed the minimum", s.key(prefix + "_max"));
    return log_grid(lo, hi, static_cast<int>(points));
}

void parse_geometry(Section& g, ScenarioFile& out) {
    const std::string kind = g.text("kind");
    if (kind == "multilayer") {
        const double side = positive(g.quantity("side", Dimension::length), g.key("side"));
        const int n_lay = static_cast<int>(g.integer("n_lay", 0, 100000));
        const double rho_a = density_of(g, out.materials, "_a");
        const double rho_b = density_of(g, out.materials, "_b");
        const bool by_mass = g.has("mass");
        if (by_mass == g.has("a")) {
            throw ValidationError("multilayer geometry needs exactly one of mass or a", g.key("mass"));
        }
        if (by_mass) {
            StackConfig cfg;
            cfg.label = out.label;
            cfg.side = side;
            cfg.n_lay = n_lay;
            cfg.mass = positive(g.quantity("mass", Dimension::mass), g.key("mass"));
            cfg.epsilon = positive(g.number_or("epsilon", 1.0), g.key("epsilon"));
            cfg.density_a = rho_a;
            cfg.density_b = rho_b;
            out.geometry = cfg.build();
            out.stack_config = cfg;
        } else {
            const double a = positive(g.quantity("a", Dimension::length), g.key("a"));
            const double b = n_lay > 0 ? positive(g.quantity("b", Dimension::length), g.key("b"))
                                       : g.quantity_or("b", Dimension::length, 0.0);
            out.geometry = LayerStack::alternating(side, n_lay, a, b, rho_a, rho_b);
        }
    } else if (kind == "layers") {
        const double side = positive(g.quantity("side", Dimension::length), g.key("side"));
        if (!g.has("layers") || !g.raw("layers").is_array() || g.raw("layers").empty()) {
            throw ValidationError(g.key("layers") + " must be a non-empty list", g.key("layers"));
        }
        const json& items = g.raw("layers");
        std::vector<Layer> layers;
        json echo = json::array();
        for (std::size_t i = 0; i < items.size(); ++i) {
            Section l(items[i], g.key("layers") + "[" + std::to_string(i) + "]");
            Layer layer;
            layer.thickness = positive(l.quantity("thickness", Dimension::length), l.key("thickness"));
            layer.density = density_of(l, out.materials, "");
            layers.push_back(layer);
            echo.push_back(l.finish());
        }
        g.put("layers", echo);
        out.geometry = LayerStack(side, std::move(layers));
    } else if (kind == "cuboid") {
        const double side = positive(g.quantity("side", Dimension::length), g.key("side"));
        const double rho = density_of(g, out.materials, "");
        if (g.has("mass") == g.has("height")) {
            throw ValidationError("cuboid geometry needs exactly one of height or mass", g.key("height"));
        }
        if (!(rho > 0.0)) throw ValidationError("cuboid density must be positive", g.key("density"));
        const double height =
            g.has("height") ? positive(g.quantity("height", Dimension::length), g.key("height"))
                            : positive(g.quantity("mass", Dimension::mass), g.key("mass")) /
                                  (rho * side * side);
        out.geometry = LayerStack::uniform(side, height, rho);
    } else if (kind == "sphere") {
        const double rho = density_of(g, out.materials, "");
        if (g.has("mass") == g.has("radius")) {
            throw ValidationError("sphere geometry needs exactly one of radius or mass", g.key("radius"));
        }
        if (g.has("radius")) {
            out.geometry = Sphere(positive(g.quantity("radius", Dimension::length), g.key("radius")), rho);
        } else {
            out.geometry = Sphere::from_mass(positive(g.quantity("mass", Dimension::mass), g.key("mass")), rho);
        }
    } else if (kind == "cylinder") {
        const double radius = positive(g.quantity("radius", Dimension::length), g.key("radius"));
        const double rho = density_of(g, out.materials, "");
        if (g.has("mass") == g.has("height")) {
            throw ValidationError("cylinder geometry needs exactly one of height or mass", g.key("height"));
        }
        if (!(rho > 0.0)) throw ValidationError("cylinder density must be positive", g.key("density"));
        const double height =
            g.has("height") ? positive(g.quantity("height", Dimension::length), g.key("height"))
                            : positive(g.quantity("mass", Dimension::mass), g.key("mass")) /
                                  (rho * kPi * radius * radius);
        out.geometry = Cylinder(radius, height, rho);
    } else {
        throw ValidationError("geometry.kind must be one of multilayer, layers, cuboid, sphere, cylinder",
                              g.key("kind"));
    }
}

Resonator parse_resonator(Section& r) {
    const auto mass = r.opt_quantity("mass", Dimension::mass);
    const auto stiffness = r.opt_quantity("stiffness", Dimension::stiffness);
    std::optional<double> omega0;
    if (auto f0 = r.opt_quantity("frequency", Dimension::frequency)) omega0 = 2.0 * kPi * *f0;
    const double gamma = r.quantity("damping", Dimension::damping);
    const double temperature = r.quantity("temperature", Dimension::temperature);
    return Resonator::make(mass, stiffness, omega0, gamma, temperature);
}

void parse_search(Section& s, ScenarioFile& out) {
    SearchSpace space;
    space.sides = s.quantity_list("sides", Dimension::length);
    space.n_lay_min = static_cast<int>(s.integer_or("n_lay_min", 0, 0, 100000));
    space.n_lay_max = static_cast<int>(s.integer("n_lay_max", 0, 100000));
    space.epsilons = s.number_list_or("epsilons", {0.25, 1.0, 4.0});
    space.mass = positive(s.quantity("mass", Dimension::mass), s.key("mass"));
    space.density_a = density_of(s, out.materials, "_a");
    space.density_b = density_of(s, out.materials, "_b");
    space.r_c = positive(s.quantity_or("r_c", Dimension::length, out.collapse.r_c), s.key("r_c"));
    space.refine = s.flag_or("refine", false);
    if (!out.excess) throw ValidationError("search requires an excess_noise section", "excess_noise");
    space.excess = *out.excess;
    space.constants = out.constants;
    if (s.has("guardrails")) {
        Section gr = s.child("guardrails");
        space.guardrails.enabled = gr.flag_or("enabled", true);
        space.guardrails.min_layer_thickness = non_negative(
            gr.quantity_or("min_layer_thickness", Dimension::length, Guardrails{}.min_layer_thickness),
            gr.key("min_layer_thickness"));
        space.guardrails.max_aspect_ratio =
            positive(gr.number_or("max_aspect_ratio", Guardrails{}.max_aspect_ratio),
                     gr.key("max_aspect_ratio"));
        s.put("guardrails", gr.finish());
    } else {
        const Guardrails d;
        s.put("guardrails", {{"enabled", d.enabled},
                             {"min_layer_thickness", format_quantity(d.min_layer_thickness, Dimension::length)},
                             {"max_aspect_ratio", d.max_aspect_ratio}});
    }
    space.validate();
    out.search = space;
}

void parse_shapes(Section& s, ScenarioFile& out) {
    ShapesSpec spec;
    spec.density = density_of(s, out.materials, "");
    if (!(spec.density > 0.0)) throw ValidationError("shapes density must be positive", s.key("density"));
    spec.aspect_ratios = s.number_list_or("aspect_ratios", spec.aspect_ratios);
    for (std::size_t i = 0; i < spec.aspect_ratios.size(); ++i) {
        positive(spec.aspect_ratios[i], s.key("aspect_ratios") + "[" + std::to_string(i) + "]");
    }
    spec.masses = grid_from(s, "mass", Dimension::mass, 1e-21, 1e-9, 61);
    spec.side_over_rc = plain_grid(s, "side_over_rc", 0.01, 1000.0, 51);
    out.shapes = spec;
}

void parse_simulation(Section& s, ScenarioFile& out) {
    SimulationSpec spec;
    spec.samples_per_period = static_cast<int>(s.integer_or("samples_per_period", 64, 50, 1 << 20));
    spec.periods_per_segment = static_cast<int>(s.integer_or("periods_per_segment", 1024, 1, 1 << 24));
    spec.n_segments = static_cast<int>(s.integer_or("n_segments", 64, 8, 1 << 24));
    spec.n_trajectories = static_cast<int>(s.integer_or("n_trajectories", 1, 1, spec.n_segments));
    if (spec.n_segments % spec.n_trajectories != 0) {
        throw ValidationError("simulation.n_trajectories must divide n_segments", s.key("n_trajectories"));
    }
    spec.seed = s.unsigned_or("seed", 0);
    if (s.has("quality_factor")) {
        spec.quality_factor = positive(s.number_or("quality_factor", 0.0), s.key("quality_factor"));
    }
    spec.include_csl = s.flag_or("include_csl", true);
    spec.band_lo = positive(s.number_or("band_lo", spec.band_lo), s.key("band_lo"));
    spec.band_hi = positive(s.number_or("band_hi", spec.band_hi), s.key("band_hi"));
    if (!(spec.band_hi > spec.band_lo)) throw ValidationError("simulation.band_hi must exceed band_lo", s.key("band_hi"));
    if (!out.resonator) throw ValidationError("simulation requires a resonator section", "resonator");
    out.simulation = spec;
}

}  // namespace

double parse_quantity(std::string_view text, Dimension dim, const std::string& key) {
    const std::string_view t = trim(text);
    const auto space = t.find_first_of(" \t");
    if (space == std::string_view::npos) {
        throw ValidationError(key + ": expected \"<number> <unit>\", got \"" + std::string(text) + "\"", key);
    }
    const std::string_view num = t.substr(0, space);
    const std::string_view unit = trim(t.substr(space));
    double value = 0.0;
    const auto [end, ec] = std::from_chars(num.data(), num.data() + num.size(), value);
    if (ec != std::errc() || end != num.data() + num.size() || !std::isfinite(value)) {
        throw ValidationError(key + ": malformed number \"" + std::string(num) + "\"", key);
    }
    bool known = false;
    for (const auto& u : kUnits) {
        if (u.name != unit) continue;
        known = true;
        if (u.dim == dim) return value * u.factor / u.divisor;
    }
    if (known) {
        throw ValidationError(key + ": unit \"" + std::string(unit) + "\" has the wrong dimension, expected " +
                                  std::string(si_unit(dim)),
                              key);
    }
    throw ValidationError(key + ": unknown unit \"" + std::string(unit) + "\"", key);
}

std::string format_number(double value) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, end);
}

std::string format_quantity(double si_value, Dimension dim) {
    return format_number(si_value) + " " + std::string(si_unit(dim));
}

Scenario ScenarioFile::exclusion_scenario() const {
    Scenario s{label, require_geometry(), resonator, require_excess(), collapse.rc_grid, constants};
    s.validate();
    return s;
}

const Geometry& ScenarioFile::require_geometry() const {
    if (!geometry) throw ValidationError("scenario has no geometry section", "geometry");
    return *geometry;
}

const Resonator& ScenarioFile::require_resonator() const {
    if (!resonator) throw ValidationError("scenario has no resonator section", "resonator");
    return *resonator;
}

const ExcessNoise& ScenarioFile::require_excess() const {
    if (!excess) throw ValidationError("scenario has no excess_noise section", "excess_noise");
    return *excess;
}

SimConfig ScenarioFile::simulation_config() const {
    if (!simulation) throw ValidationError("scenario has no simulation section", "simulation");
    const SimulationSpec& spec = *simulation;
    SimConfig cfg;
    cfg.resonator = require_resonator();
    if (spec.quality_factor) cfg.resonator.gamma = cfg.resonator.omega0 / *spec.quality_factor;
    const double f0 = cfg.resonator.omega0 / (2.0 * kPi);
    cfg.force_psd = thermal_force_psd(cfg.resonator, constants);
    if (spec.include_csl) {
        const double eta = collapse.lambda * reduced_eta(require_geometry(), collapse.r_c, constants);
        cfg.force_psd += csl_force_psd(eta, constants);
    }
    cfg.dt = 1.0 / (spec.samples_per_period * f0);
    cfg.n_segments = spec.n_segments;
    // exact sample count per segment, so duration / dt needs no rounding care
    cfg.duration = static_cast<double>(spec.n_segments) * spec.periods_per_segment *
                   spec.samples_per_period * cfg.dt;
    cfg.n_trajectories = spec.n_trajectories;
    cfg.seed = spec.seed;
    return cfg;
}

ScenarioFile parse_scenario(const json& doc) {
    ScenarioFile out;
    Section root(doc, "");
    out.schema_version = static_cast<int>(root.integer("schema_version", kSchemaVersion, kSchemaVersion));
    out.label = root.text_or("label", "scenario");

    if (root.has("constants")) {
        Section c = root.child("constants");
        out.constants.m0 = positive(c.quantity_or("m0", Dimension::mass, out.constants.m0), c.key("m0"));
        root.put("constants", c.finish());
    }
    if (root.has("materials")) {
        Section m = root.child("materials");
        json echo = json::object();
        for (const auto& [name, value] : doc.at("materials").items()) {
            Section mat = m.child(name);
            out.materials[name] = non_negative(mat.quantity("density", Dimension::density), mat.key("density"));
            echo[name] = mat.finish();
        }
        m.finish();
        root.put("materials", echo);
    }

    {
        CollapseSpec spec;
        if (root.has("collapse")) {
            Section c = root.child("collapse");
            spec.rc_grid = grid_from(c, "rc", Dimension::length, 1e-9, 1e-3, 200);
            spec.r_c = positive(c.quantity_or("r_c", Dimension::length, spec.r_c), c.key("r_c"));
            spec.lambda = positive(c.quantity_or("lambda", Dimension::rate, spec.lambda), c.key("lambda"));
            root.put("collapse", c.finish());
        } else {
            spec.rc_grid = default_rc_grid();
            root.put("collapse", {{"rc_min", format_quantity(spec.rc_grid.front(), Dimension::length)},
                                  {"rc_max", format_quantity(spec.rc_grid.back(), Dimension::length)},
                                  {"rc_points", static_cast<long long>(spec.rc_grid.size())},
                                  {"r_c", format_quantity(spec.r_c, Dimension::length)},
                                  {"lambda", format_quantity(spec.lambda, Dimension::rate)}});
        }
        out.collapse = spec;
    }

    if (root.has("excess_noise")) {
        Section e = root.child("excess_noise");
        ExcessNoise excess;
        excess.value = non_negative(e.quantity("value", Dimension::force_psd), e.key("value"));
        const std::string conv = e.text_or("convention", "one_sided");
        if (conv == "one_sided") {
            excess.sidedness = Sidedness::one_sided;
        } else if (conv == "two_sided") {
            excess.sidedness = Sidedness::two_sided;
        } else {
            throw ValidationError("excess_noise.convention must be one_sided or two_sided",
                                  e.key("convention"));
        }
        out.excess = excess;
        root.put("excess_noise", e.finish());
    }

    if (root.has("geometry")) {
        Section g = root.child("geometry");
        parse_geometry(g, out);
        root.put("geometry", g.finish());
    }
    if (root.has("resonator")) {
        Section r = root.child("resonator");
        out.resonator = parse_resonator(r);
        root.put("resonator", r.finish());
    }
    if (root.has("search")) {
        Section s = root.child("search");
        parse_search(s, out);
        root.put("search", s.finish());
    }
    if (root.has("shapes")) {
        Section s = root.child("shapes");
        parse_shapes(s, out);
        root.put("shapes", s.finish());
    }
    if (root.has("simulation")) {
        Section s = root.child("simulation");
        parse_simulation(s, out);
        root.put("simulation", s.finish());
    }
    out.echo = root.finish();
    return out;
}

ScenarioFile load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open scenario file " + path.string(), "scenario");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError("scenario " + path.string() + " is not valid JSON: " + e.what(), "scenario");
    }
    return parse_scenario(doc);
}

}  // namespace csl::io
