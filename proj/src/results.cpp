#include "cslnoise/results.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>

#include "cslnoise/errors.hpp"

namespace csl::io {

using nlohmann::json;

std::string format_csv_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<Cell> row) {
    if (row.size() != header_.size()) {
        throw std::logic_error("csv row has " + std::to_string(row.size()) + " cells, header has " +
                               std::to_string(header_.size()));
    }
    rows_.push_back(std::move(row));
}

namespace {

std::string quoted(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string cell_text(const CsvTable::Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return format_csv_number(*d);
    if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
    return quoted(std::get<std::string>(c));
}

}  // namespace

std::string CsvTable::str() const {
    std::string out;
    for (std::size_t i = 0; i < header_.size(); ++i) {
        if (i) out += ',';
        out += quoted(header_[i]);
    }
    out += '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += cell_text(row[i]);
        }
        out += '\n';
    }
    return out;
}

CsvTable curve_table(const ExclusionCurve& curve) {
    CsvTable t({"r_c [m]", "lambda_bound [1/s]", "eta_bar [1/m2]"});
    for (const auto& p : curve.points) t.add_row({p.r_c, p.lambda_bound, p.eta_bar});
    return t;
}

CsvTable candidate_table(const std::vector<Candidate>& candidates) {
    CsvTable t({"side [m]", "n_lay", "epsilon", "a [m]", "b [m]", "height [m]", "mass [kg]",
                "eta_bar [1/m2]", "lambda_bound [1/s]", "feasible", "note"});
    for (const auto& c : candidates) {
        t.add_row({c.side, static_cast<long long>(c.n_lay), c.epsilon, c.a, c.b, c.height, c.mass,
                   c.eta_bar, c.lambda_bound, static_cast<long long>(c.feasible), c.note});
    }
    return t;
}

CsvTable shape_table(const ShapeComparison& cmp) {
    std::vector<std::string> header{"mass [kg]", "sphere [N2/Hz]"};
    for (double ar : cmp.aspect_ratios) header.push_back("cuboid L/H=" + format_csv_number(ar) + " [N2/Hz]");
    for (double ar : cmp.aspect_ratios) header.push_back("cylinder L/H=" + format_csv_number(ar) + " [N2/Hz]");
    CsvTable t(std::move(header));
    for (const auto& row : cmp.rows) {
        std::vector<CsvTable::Cell> cells{row.mass, row.sphere};
        for (double v : row.cuboid) cells.emplace_back(v);
        for (double v : row.cylinder) cells.emplace_back(v);
        t.add_row(std::move(cells));
    }
    return t;
}

CsvTable layer_table(const LayerStack& stack, const EtaResult& eta) {
    CsvTable t({"index", "z [m]", "thickness [m]", "density [kg/m3]", "self_term [kg2/m7]",
                "cross_term [kg2/m7]"});
    const auto layers = stack.layers();
    const auto z = stack.centers();
    for (std::size_t i = 0; i < layers.size(); ++i) {
        t.add_row({static_cast<long long>(i), z[i], layers[i].thickness, layers[i].density,
                   eta.self_terms.at(i), eta.cross_terms.at(i)});
    }
    return t;
}

CsvTable psd_table(const PsdComparison& cmp, double f_max) {
    CsvTable t({"frequency [Hz]", "psd_simulated [m2/Hz]", "std_error [m2/Hz]",
                "psd_analytic [m2/Hz]", "residual"});
    const auto& e = cmp.estimate;
    for (std::size_t k = 0; k < e.psd.size(); ++k) {
        if (f_max > 0.0 && e.frequency[k] > f_max) break;
        const double residual = cmp.analytic[k] > 0.0 ? e.psd[k] / cmp.analytic[k] - 1.0 : 0.0;
        t.add_row({e.frequency[k], e.psd[k], e.std_error[k], cmp.analytic[k], residual});
    }
    return t;
}

json to_json(const Candidate& c) {
    return {{"side_m", c.side},       {"n_lay", c.n_lay},   {"epsilon", c.epsilon},
            {"a_m", c.a},             {"b_m", c.b},         {"height_m", c.height},
            {"mass_kg", c.mass},      {"eta_bar_per_m2", c.eta_bar},
            {"lambda_bound_per_s", c.lambda_bound},         {"feasible", c.feasible},
            {"note", c.note}};
}

json to_json(const ExclusionCurve& curve) {
    json points = json::array();
    for (const auto& p : curve.points) points.push_back({p.r_c, p.lambda_bound, p.eta_bar});
    json minima = json::array();
    for (std::size_t i : curve.local_minima()) {
        minima.push_back({{"r_c_m", curve.points[i].r_c},
                          {"lambda_bound_per_s", curve.points[i].lambda_bound}});
    }
    const auto g = curve.global_minimum();
    return {{"label", curve.label},
            {"columns", {"r_c_m", "lambda_bound_per_s", "eta_bar_per_m2"}},
            {"points", points},
            {"local_minima", minima},
            {"global_minimum",
             {{"r_c_m", curve.points[g].r_c}, {"lambda_bound_per_s", curve.points[g].lambda_bound}}}};
}

json to_json(const EtaResult& eta) {
    return {{"eta_per_s_m2", eta.eta},
            {"eta_bar_per_m2", eta.eta_bar},
            {"I_z_kg2_per_m7", eta.I_z},
            {"transverse_factor", eta.B},
            {"I_z_self_sum", eta.self_sum()},
            {"I_z_cross_sum", eta.cross_sum()}};
}

json ResultDocument::to_json() const {
    return {{"tool", "cslnoise"},
            {"version", CSLNOISE_VERSION},
            {"subcommand", subcommand},
            {"input", input},
            {"outputs", outputs},
            {"metadata", {{"started_utc", started_utc}, {"wall_seconds", wall_seconds}, {"threads", threads}}}};
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace csl::io
