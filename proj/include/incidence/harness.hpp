#pragma once

// Experiment sweeps: generate or load configurations, validate, count (brute force, plus the
// partitioned count over the rationals), evaluate the bounds, and write CSV or JSON reports.
//
// Sweep file:
//   {"timing": false, "partition": true, "levels": 3,
//    "constants": {"main": "1/2"},
//    "configs": [
//      {"id": "grid", "generator": "grid_lines", "vary": {"k": [2, 3, 4]}},
//      {"generator": "random", "field": "fp:101", "d": 2, "points": 50, "curves": 20, "seed": 7},
//      {"generator": "on_curves", "d": 3, "curves": 2, "per_curve": 10},
//      {"generator": "family", "family": "circles", "points": 40, "curves": 10},
//      {"file": "config.json"}]}
// "vary" expands an entry into one row per listed value (several keys: cartesian product,
// first key slowest). Entries are checked when their row runs, so a bad entry fails only
// its own rows.
//
// CSV columns, in order:
//   config_id, field, d, A, n_points, n_curves, incidences,
//   rhs_initial, rhs_trivial, rhs_main, rhs_family,
//   c_min_initial, c_min_trivial, c_min_main, c_min_family,
//   deg_Q, max_cell, sum_Li, ms_elapsed, label, status, message
// Empty cells mean "not computed". ms_elapsed is filled only when timing is on, so reports
// stay byte-stable by default. status is ok, failed or inconsistent (counting routes disagreed).

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "incidence/bounds.hpp"
#include "incidence/generators.hpp"

namespace incidence {

struct SweepRow {
    std::size_t config_id = 0;
    std::string label;
    std::string field;
    int d = 0;
    int A = 0;
    std::optional<std::uint64_t> n_points, n_curves, incidences;
    std::array<std::optional<double>, 4> rhs;    // BoundKind order
    std::array<std::optional<double>, 4> c_min;
    std::optional<std::uint64_t> deg_Q, max_cell, sum_Li;
    std::optional<double> ms_elapsed;
    std::string status = "ok";
    std::string message;

    bool operator==(const SweepRow&) const = default;
};

struct SweepOptions {
    bool timing = false;
    bool partition = true;
    std::optional<int> levels;  // partition levels; chosen from |P| and |L| when unset
    BoundConstants constants;
    unsigned threads = 0;       // rows in flight
};

struct SweepSpec {
    SweepOptions options;
    std::vector<std::string> entries;  // one JSON object per row, after vary expansion
    std::string base_dir;              // relative "file" entries resolve against this
};

/// Throws ParseError for JSON syntax errors and a malformed top level.
SweepSpec parse_sweep(const std::string& text, const std::string& base_dir = "");
SweepSpec read_sweep_file(const std::string& path);

/// Rows in config_id order, whatever the schedule.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

/// One row for one configuration (config_id 0). family_k enables the family bound.
SweepRow measure_configuration(const AnyConfiguration& cfg, const SweepOptions& opts = {},
                               std::optional<int> family_k = std::nullopt);

/// INCIDENCE_LAB_THREADS, 0 (auto) when unset. Throws InvalidInput on garbage.
unsigned threads_from_env();

struct FitResult {
    double slope = 0;
    double intercept = 0;
    double residual = 0;  // sum of squared residuals in log space
    std::size_t n = 0;
};

/// Least squares of log y against log x. Needs two distinct x values; nonpositive data
/// throws InvalidInput.
FitResult fit_exponent(const std::vector<double>& x, const std::vector<double>& y);

enum class ReportFormat { csv, json };
ReportFormat parse_report_format(const std::string& text);

const std::vector<std::string>& report_columns();
std::string emit_report(const std::vector<SweepRow>& rows, ReportFormat format);
void write_report(const std::vector<SweepRow>& rows, ReportFormat format, const std::string& path);
std::vector<SweepRow> parse_report_json(const std::string& text);

/// A report read back as text cells, for fitting.
struct ReportTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Index of a column; throws InvalidInput when absent.
    std::size_t column(const std::string& name) const;
};

/// CSV (RFC 4180 quoting) or a JSON report, detected from the first character.
ReportTable parse_report_table(const std::string& text);

/// Fit over rows whose status is ok and whose two cells are filled.
FitResult fit_columns(const ReportTable& table, const std::string& x, const std::string& y);

} // namespace incidence
