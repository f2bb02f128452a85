#include "stklein/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "stklein/errors.hpp"
#include "stklein/regime.hpp"
#include "stklein/scattering.hpp"
#include "stklein/sweep.hpp"
#include "stklein/thresholds.hpp"
#include "stklein/verify.hpp"

namespace stklein {

namespace {

using ojson = nlohmann::ordered_json;

class UsageError : public Error {
public:
    explicit UsageError(const std::string& what) : Error("usage_error", what) {}
};

ojson number_or_null(double x) { return std::isfinite(x) ? ojson(x) : ojson(nullptr); }

ojson number_or_null(const std::optional<double>& x) {
    return x ? number_or_null(*x) : ojson(nullptr);
}

ojson complex_json(Complex z) { return ojson{{"re", z.real()}, {"im", z.imag()}}; }

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw DomainError("cannot open '" + path + "' for writing");
    file << text;
    if (!file) throw DomainError("write to '" + path + "' failed");
}

OutputFormat parse_format(const std::string& s) {
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    throw UsageError("unknown format '" + s + "'");
}

// name:min:max:count[:scale]
Axis parse_axis(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() != 4 && parts.size() != 5) {
        throw UsageError("axis '" + text + "' must be name:min:max:count[:scale]");
    }
    Axis a;
    a.name = parts[0];
    try {
        a.min = std::stod(parts[1]);
        a.max = std::stod(parts[2]);
        a.count = std::stoi(parts[3]);
    } catch (const std::exception&) {
        throw UsageError("axis '" + text + "' has a non-numeric field");
    }
    if (parts.size() == 5) {
        if (parts[4] == "linear") {
            a.scale = AxisScale::Linear;
        } else if (parts[4] == "log") {
            a.scale = AxisScale::Log;
        } else if (parts[4] == "one-minus-log") {
            a.scale = AxisScale::OneMinusLog;
        } else {
            throw UsageError("unknown axis scale '" + parts[4] + "'");
        }
    }
    return a;
}

std::pair<std::string, double> parse_fixed(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw UsageError("fixed '" + text + "' must be name=value");
    try {
        return {text.substr(0, eq), std::stod(text.substr(eq + 1))};
    } catch (const std::exception&) {
        throw UsageError("fixed '" + text + "' has a non-numeric value");
    }
}

void emit_table(const SweepTable& table, const std::string& path, OutputFormat format,
                bool plot, std::string_view which, std::ostream& out) {
    write_output(path, format_table(table, format), out);
    if (plot) {
        if (path.empty() || path == "-") {
            throw UsageError("--emit-plot-script needs --out");
        }
        if (format != OutputFormat::Csv) throw UsageError("--emit-plot-script needs CSV output");
        write_output(path + ".py", plot_script(which, path), out);
    }
}

ojson report_json(const VerifyReport& report) {
    ojson checks = ojson::array();
    for (const auto& c : report.checks) {
        checks.push_back({{"name", c.name},
                          {"passed", c.passed()},
                          {"samples", c.samples},
                          {"failures", c.failures},
                          {"tolerance", c.tolerance},
                          {"max_residual", number_or_null(c.max_residual)}});
    }
    return checks;
}

}  // namespace

int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Klein tunneling across a moving potential step", "stklein"};
    app.require_subcommand(1);

    double ei = 4.0, qv1 = 0.0, qa1 = 0.0, qv2 = 0.0, qa2 = 0.0, vm = 0.0;
    auto add_point_flags = [&](CLI::App* sub) {
        sub->add_option("--ei", ei, "incident energy E_i (units of m)")->required();
        sub->add_option("--qv1", qv1, "region-1 scalar potential qV_1");
        sub->add_option("--qa1", qa1, "region-1 vector potential qA_1");
        sub->add_option("--qv2", qv2, "region-2 scalar potential qV_2");
        sub->add_option("--qa2", qa2, "region-2 vector potential qA_2");
        sub->add_option("--vm", vm, "front velocity v_m in [0, 1)");
    };

    auto* scatter_cmd = app.add_subcommand("scatter", "single-point scattering");
    add_point_flags(scatter_cmd);
    auto* classify_cmd = app.add_subcommand("classify", "regime and critical velocities");
    add_point_flags(classify_cmd);

    double rav = -1.0;
    std::optional<double> thr_ei;
    bool min_over_ei = false;
    auto* thresholds_cmd = app.add_subcommand("thresholds", "gap edges in qdV");
    thresholds_cmd->add_option("--vm", vm, "front velocity")->required();
    thresholds_cmd->add_option("--rav", rav, "ratio qdA / qdV")->required();
    auto* ei_opt = thresholds_cmd->add_option("--ei", thr_ei, "E_i - qV_1 (units of m)");
    auto* min_flag =
        thresholds_cmd->add_flag("--min-over-ei", min_over_ei, "minimize the lower edge over E_i");
    ei_opt->excludes(min_flag);

    int gap_count = 101;
    bool extrema = false;
    std::string out_path;
    auto* gap_cmd = app.add_subcommand("gap", "gap width versus v_m");
    gap_cmd->add_option("--rav", rav, "ratio qdA / qdV")->required();
    gap_cmd->add_option("--count", gap_count, "samples of v_m in [0, 1)");
    gap_cmd->add_flag("--extrema", extrema, "print the maximum over v_m instead");
    gap_cmd->add_option("--out", out_path, "output path (default stdout)");

    std::string spec_path, mode = "scatter", axis1_text, axis2_text, format_text = "csv";
    std::vector<std::string> fixed_text;
    bool plot = false;
    auto* sweep_cmd = app.add_subcommand("sweep", "grid sweep");
    sweep_cmd->add_option("--spec", spec_path, "JSON sweep spec")->check(CLI::ExistingFile);
    sweep_cmd->add_option("--mode", mode, "scatter | thresholds");
    sweep_cmd->add_option("--axis", axis1_text, "name:min:max:count[:scale]");
    sweep_cmd->add_option("--axis2", axis2_text, "name:min:max:count[:scale]");
    sweep_cmd->add_option("--fixed", fixed_text, "name=value (repeatable)");
    sweep_cmd->add_option("--out", out_path, "output path (default stdout)");
    sweep_cmd->add_option("--format", format_text, "csv | json");
    sweep_cmd->add_flag("--emit-plot-script", plot, "write <out>.py next to the data");

    bool oracle = false, continuity = false, all = false;
    std::size_t samples = 1000;
    std::uint64_t seed = 1;
    auto* verify_cmd = app.add_subcommand("verify", "closed forms against independent checks");
    verify_cmd->add_flag("--oracle", oracle, "oracle equivalence checks");
    verify_cmd->add_flag("--continuity", continuity, "comoving continuity checks");
    verify_cmd->add_flag("--all", all, "both");
    verify_cmd->add_option("--samples", samples, "random configurations per check");
    verify_cmd->add_option("--seed", seed, "RNG seed");

    std::string which;
    auto* figure_cmd = app.add_subcommand("figure", "figure data presets");
    figure_cmd->add_option("--which", which, "1b | 3a | 3b")
        ->required()
        ->check(CLI::IsMember({"1b", "3a", "3b"}));
    figure_cmd->add_option("--out", out_path, "output path (default stdout)");
    figure_cmd->add_option("--format", format_text, "csv | json");
    figure_cmd->add_flag("--emit-plot-script", plot, "write <out>.py next to the data");

    auto fail = [&](const Error& e) {
        err << ojson{{"error", {{"code", e.code()}, {"message", e.what()}}}}.dump() << "\n";
        return 1;
    };

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        return fail(UsageError(e.what()));
    }

    try {
        if (scatter_cmd->parsed()) {
            const Region r1{qv1, qa1}, r2{qv2, qa2};
            const IncidentState in = incident_from_energy(ei, r1);
            const StepProblem problem = StepProblem::make(in, r2, vm);
            const Regime regime = classify(problem);
            ojson j{{"E_i", ei},   {"p_i", in.momentum()}, {"qV1", qv1}, {"qA1", qa1},
                    {"qV2", qv2},  {"qA2", qa2},           {"v_m", vm},
                    {"v_g", group_velocity(in)},           {"regime", to_string(regime.label)}};
            j["branch"] = regime.selected_branch ? ojson(to_string(*regime.selected_branch))
                                                 : ojson(nullptr);
            if (regime.label == RegimeLabel::NoCatchUp) {
                for (const char* k : {"r", "t", "j_i", "j_r", "j_t", "R", "T"}) j[k] = nullptr;
            } else {
                const ScatterResult res = scatter(problem);
                j["r"] = complex_json(res.r_amp);
                j["t"] = complex_json(res.t_amp);
                j["E_r"] = complex_json(res.reflected.E);
                j["p_r"] = complex_json(res.reflected.p);
                j["E_t"] = complex_json(res.transmitted.E);
                j["p_t"] = complex_json(res.transmitted.p);
                j["j_i"] = res.j_i;
                j["j_r"] = res.j_r;
                j["j_t"] = res.j_t;
                j["R"] = res.R;
                j["T"] = res.T;
            }
            out << j.dump(2) << "\n";
        } else if (classify_cmd->parsed()) {
            const Region r1{qv1, qa1}, r2{qv2, qa2};
            const IncidentState in = incident_from_energy(ei, r1);
            const StepProblem problem = StepProblem::make(in, r2, vm);
            const Regime regime = classify(problem);
            const CriticalVelocities cv = critical_velocities(in, r2);
            ojson j{{"regime", to_string(regime.label)}};
            j["branch"] = regime.selected_branch ? ojson(to_string(*regime.selected_branch))
                                                 : ojson(nullptr);
            j["v_g"] = group_velocity(in);
            j["critical_velocities"] = {{"v_up_min", number_or_null(cv.v_up_min)},
                                        {"v_low_max", number_or_null(cv.v_low_max)},
                                        {"v_up_tan", number_or_null(cv.v_up_tan)},
                                        {"v_low_tan", number_or_null(cv.v_low_tan)}};
            j["upward_step_ordering"] = cv.upward_step_ordering();
            out << j.dump(2) << "\n";
        } else if (thresholds_cmd->parsed()) {
            ojson j;
            if (min_over_ei) {
                const ThresholdPoint t = min_threshold_over_energy(vm, rav);
                j = {{"v_m", vm},       {"r_AV", rav},
                     {"qdV_th", t.qdV_th}, {"E_i_over_m", t.E_i},
                     {"omega_g", t.omega_g}, {"omega_m", t.omega_m}};
            } else {
                if (!thr_ei) throw UsageError("thresholds needs --ei or --min-over-ei");
                const IncidentState in = incident_from_energy(*thr_ei, Region{});
                if (vm >= group_velocity(in)) {
                    throw NoScattering("v_m >= v_g: the electron cannot catch up with the front");
                }
                const GapSpec g = gap_edges(in, vm, rav);
                j = {{"E_i_over_m", *thr_ei}, {"v_m", vm},           {"r_AV", rav},
                     {"qdV_plus", g.qdV_plus}, {"qdV_minus", g.qdV_minus}, {"width", g.width}};
            }
            out << j.dump(2) << "\n";
        } else if (gap_cmd->parsed()) {
            if (extrema) {
                const WidthExtremum w = gap_width_extrema(rav);
                out << ojson{{"r_AV", rav}, {"v_at_max", w.v_at_max}, {"width_max", w.width_max}}
                           .dump(2)
                    << "\n";
            } else {
                if (gap_count < 1) throw UsageError("--count must be positive");
                std::string csv = "v_m,width\n";
                for (int i = 0; i < gap_count; ++i) {
                    const double v = static_cast<double>(i) / gap_count;
                    csv += format_double(v) + "," + format_double(gap_width(v, rav)) + "\n";
                }
                write_output(out_path, csv, out);
            }
        } else if (sweep_cmd->parsed()) {
            SweepSpec spec;
            if (!spec_path.empty()) {
                if (!axis1_text.empty() || !axis2_text.empty() || !fixed_text.empty()) {
                    throw UsageError("--spec cannot be combined with inline axes");
                }
                std::ifstream file(spec_path);
                nlohmann::json j;
                try {
                    j = nlohmann::json::parse(file);
                } catch (const nlohmann::json::exception& e) {
                    throw DomainError(std::string("spec is not valid JSON: ") + e.what());
                }
                spec = SweepSpec::from_json(j);
                if (out_path.empty()) out_path = spec.output.path;
                if (sweep_cmd->count("--format") == 0) {
                    format_text = spec.output.format == OutputFormat::Csv ? "csv" : "json";
                }
            } else {
                if (axis1_text.empty()) throw UsageError("sweep needs --spec or --axis");
                if (mode == "scatter") {
                    spec.mode = SweepMode::Scatter;
                } else if (mode == "thresholds") {
                    spec.mode = SweepMode::Thresholds;
                } else {
                    throw UsageError("unknown mode '" + mode + "'");
                }
                spec.axis1 = parse_axis(axis1_text);
                if (!axis2_text.empty()) spec.axis2 = parse_axis(axis2_text);
                for (const auto& f : fixed_text) spec.fixed.insert(parse_fixed(f));
                spec.validate();
            }
            const OutputFormat format = parse_format(format_text);
            const SweepTable table = run_sweep(spec);
            emit_table(table, out_path, format, plot,
                       spec.mode == SweepMode::Scatter ? "1b" : "3b", out);
        } else if (verify_cmd->parsed()) {
            if (all || (!oracle && !continuity)) oracle = continuity = true;
            ojson j = ojson::object();
            bool passed = true;
            if (oracle) {
                const VerifyReport r = run_oracle_checks(samples, seed);
                j["oracle"] = report_json(r);
                passed = passed && r.passed();
            }
            if (continuity) {
                const VerifyReport r = run_continuity_checks(samples, seed);
                j["continuity"] = report_json(r);
                passed = passed && r.passed();
            }
            j["passed"] = passed;
            out << j.dump(2) << "\n";
            return passed ? 0 : 2;
        } else if (figure_cmd->parsed()) {
            const OutputFormat format = parse_format(format_text);
            emit_table(run_figure(which), out_path, format, plot, which, out);
        }
    } catch (const Error& e) {
        return fail(e);
    }
    return 0;
}

}  // namespace stklein
