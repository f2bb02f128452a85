#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "stklein/scattering.hpp"

namespace stklein {

enum class AxisScale { Linear, Log, OneMinusLog };
enum class SweepMode { Scatter, Thresholds };
enum class OutputFormat { Csv, Json };

/// One sweep axis. `OneMinusLog` samples v = 1 - 10^{-x} for x uniform in
/// [min, max] and is only valid for the `vm` axis. A non-empty `values`
/// list replaces the generated grid.
struct Axis {
    std::string name;
    double min = 0.0;
    double max = 1.0;
    int count = 2;
    AxisScale scale = AxisScale::Linear;
    std::vector<double> values;

    std::vector<double> samples() const;
};

/// Parameter names understood by the sweep engine:
///   ei   incident energy E_i            qv1, qa1  region-1 potentials
///   dv   scalar offset qV_2 - qV_1      da        vector offset qA_2 - qA_1
///   rav  r_A/V; when set, da = rav * dv vm        modulation velocity
struct SweepSpec {
    SweepMode mode = SweepMode::Scatter;
    Axis axis1;
    std::optional<Axis> axis2;
    std::map<std::string, double> fixed;

    struct Output {
        std::string path;
        OutputFormat format = OutputFormat::Csv;
    } output;

    /// Throws DomainError on a malformed spec.
    void validate() const;

    static SweepSpec from_json(const nlohmann::json& j);
};

using CellValue = std::variant<double, std::string>;

struct SweepTable {
    std::vector<std::string> columns;
    std::vector<std::vector<CellValue>> rows;
};

/// Columns of scatter-mode rows and of threshold-mode rows.
const std::vector<std::string>& scatter_columns();
const std::vector<std::string>& threshold_columns();

/// One scatter row; never throws, failures land in the `error` column.
std::vector<CellValue> scatter_row(double E_i, Region region1, Region region2, double v_m);
/// One threshold row (E_i measured from qV_1 = 0).
std::vector<CellValue> threshold_row(double E_i_over_m, double v_m, double r_AV);

/// Parallelism from ST_KLEIN_THREADS (positive integer), else the hardware
/// concurrency.
unsigned sweep_threads_from_env();

/// Evaluates the grid (row-major: axis1 outer, axis2 inner). Rows come out in
/// grid order whatever `threads` is; 0 means sweep_threads_from_env().
SweepTable run_sweep(const SweepSpec& spec, unsigned threads = 0);

/// CSV: header row, LF endings, %.17g floats, NaN as an empty field.
std::string to_csv(const SweepTable& table);
/// JSON array of row objects, NaN as null.
std::string to_json(const SweepTable& table);
std::string format_table(const SweepTable& table, OutputFormat format);

/// Presets for "1b", "3a" and "3b".
SweepSpec figure_preset(std::string_view which);
/// Preset evaluation; "3b" also appends the velocity-matching curve
/// (rows with v_m = v_g, regime "velocity_matching").
SweepTable run_figure(std::string_view which, unsigned threads = 0);

/// Generic matplotlib script that plots `data_path`.
std::string plot_script(std::string_view which, const std::string& data_path);

std::string format_double(double x);

}  // namespace stklein
