#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "cslnoise/bounds.hpp"
#include "cslnoise/montecarlo.hpp"
#include "cslnoise/optimize.hpp"

namespace csl::io {

/// Nine significant digits, the precision of every CSV cell.
std::string format_csv_number(double value);

class CsvTable {
public:
    using Cell = std::variant<double, long long, std::string>;

    /// Column names carry their SI unit, e.g. "r_c [m]".
    explicit CsvTable(std::vector<std::string> header);

    void add_row(std::vector<Cell> row);
    std::size_t rows() const noexcept { return rows_.size(); }
    std::string str() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<Cell>> rows_;
};

CsvTable curve_table(const ExclusionCurve& curve);
CsvTable candidate_table(const std::vector<Candidate>& candidates);
CsvTable shape_table(const ShapeComparison& cmp);
CsvTable layer_table(const LayerStack& stack, const EtaResult& eta);

struct PsdComparison {
    PsdEstimate estimate;
    std::vector<double> analytic;  // dns at each bin, m^2/Hz
    double variance = 0.0;         // sample variance of the trajectory
    double analytic_variance = 0.0;
    double max_band_residual = 0.0;  // max |sim / analytic - 1| inside the band
    double band_lo = 0.0;            // Hz
    double band_hi = 0.0;
};

/// Bins up to `f_max` Hz (all bins when f_max <= 0).
CsvTable psd_table(const PsdComparison& cmp, double f_max = 0.0);

nlohmann::json to_json(const Candidate& c);
nlohmann::json to_json(const ExclusionCurve& curve);
nlohmann::json to_json(const EtaResult& eta);

struct ResultDocument {
    std::string subcommand;
    nlohmann::json input;  // the scenario echo
    nlohmann::json outputs = nlohmann::json::object();
    std::string started_utc;
    double wall_seconds = 0.0;
    int threads = 1;

    nlohmann::json to_json() const;
};

/// Current time as an ISO 8601 UTC string.
std::string utc_timestamp();

/// Writes `content` to `path`, creating parent directories.
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace csl::io
