#include "stklein/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

#include "stklein/regime.hpp"
#include "stklein/thresholds.hpp"

namespace stklein {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::set<std::string>& known_parameters() {
    static const std::set<std::string> names{"ei", "qv1", "qa1", "dv", "da", "rav", "vm"};
    return names;
}

double lerp(double a, double b, int i, int count) {
    if (i == count - 1) return b;
    return a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1);
}

AxisScale parse_scale(const std::string& s) {
    if (s == "linear") return AxisScale::Linear;
    if (s == "log") return AxisScale::Log;
    if (s == "one-minus-log") return AxisScale::OneMinusLog;
    throw DomainError("unknown axis scale '" + s + "'");
}

Axis axis_from_json(const nlohmann::json& j) {
    Axis a;
    a.name = j.at("name").get<std::string>();
    if (j.contains("values")) {
        a.values = j.at("values").get<std::vector<double>>();
        a.count = static_cast<int>(a.values.size());
    } else {
        a.min = j.at("min").get<double>();
        a.max = j.at("max").get<double>();
        a.count = j.at("count").get<int>();
    }
    if (j.contains("scale")) a.scale = parse_scale(j.at("scale").get<std::string>());
    return a;
}

std::string error_text(const Error& e) { return std::string(e.code()) + ": " + e.what(); }

std::string quote_csv(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string format_double(double x) {
    if (std::isnan(x)) return "";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::vector<double> Axis::samples() const {
    if (!values.empty()) return values;
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        switch (scale) {
            case AxisScale::Linear:
                out[i] = lerp(min, max, i, count);
                break;
            case AxisScale::Log:
                out[i] = std::pow(10.0, lerp(std::log10(min), std::log10(max), i, count));
                break;
            case AxisScale::OneMinusLog:
                out[i] = 1.0 - std::pow(10.0, -lerp(min, max, i, count));
                break;
        }
    }
    return out;
}

void SweepSpec::validate() const {
    std::vector<const Axis*> axes{&axis1};
    if (axis2) axes.push_back(&*axis2);
    std::set<std::string> seen;
    for (const Axis* a : axes) {
        if (!known_parameters().count(a->name)) {
            throw DomainError("unknown sweep parameter '" + a->name + "'");
        }
        if (!seen.insert(a->name).second) {
            throw DomainError("parameter '" + a->name + "' appears on two axes");
        }
        if (fixed.count(a->name)) {
            throw DomainError("parameter '" + a->name + "' is both swept and fixed");
        }
        if (a->values.empty()) {
            if (a->count < 2) throw DomainError("axis '" + a->name + "' needs count >= 2");
            if (!(a->min < a->max)) throw DomainError("axis '" + a->name + "' needs min < max");
            if (a->scale == AxisScale::Log && !(a->min > 0.0)) {
                throw DomainError("log axis '" + a->name + "' needs min > 0");
            }
            if (a->scale == AxisScale::OneMinusLog && a->name != "vm") {
                throw DomainError("one-minus-log scale is only valid for the vm axis");
            }
        }
    }
    for (const auto& [name, value] : fixed) {
        if (!known_parameters().count(name)) {
            throw DomainError("unknown fixed parameter '" + name + "'");
        }
        (void)value;
    }
    auto have = [&](const char* name) { return seen.count(name) || fixed.count(name); };
    const std::vector<const char*> required =
        mode == SweepMode::Scatter ? std::vector<const char*>{"ei", "vm", "dv"}
                                   : std::vector<const char*>{"ei", "vm", "rav"};
    for (const char* name : required) {
        if (!have(name)) throw DomainError(std::string("missing parameter '") + name + "'");
    }
    if (mode == SweepMode::Thresholds) {
        for (const char* name : {"dv", "da", "qa1"}) {
            if (have(name)) {
                throw DomainError(std::string("parameter '") + name + "' is not used in thresholds mode");
            }
        }
    }
    if (mode == SweepMode::Scatter && have("rav") && have("da")) {
        throw DomainError("give either 'rav' or 'da', not both");
    }
}

SweepSpec SweepSpec::from_json(const nlohmann::json& j) {
    SweepSpec spec;
    try {
        const std::string mode = j.value("mode", std::string("scatter"));
        if (mode == "scatter") {
            spec.mode = SweepMode::Scatter;
        } else if (mode == "thresholds") {
            spec.mode = SweepMode::Thresholds;
        } else {
            throw DomainError("unknown sweep mode '" + mode + "'");
        }
        spec.axis1 = axis_from_json(j.at("axis1"));
        if (j.contains("axis2")) spec.axis2 = axis_from_json(j.at("axis2"));
        if (j.contains("fixed")) spec.fixed = j.at("fixed").get<std::map<std::string, double>>();
        if (j.contains("output")) {
            const auto& o = j.at("output");
            spec.output.path = o.value("path", std::string());
            const std::string fmt = o.value("format", std::string("csv"));
            if (fmt == "csv") {
                spec.output.format = OutputFormat::Csv;
            } else if (fmt == "json") {
                spec.output.format = OutputFormat::Json;
            } else {
                throw DomainError("unknown output format '" + fmt + "'");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("malformed sweep spec: ") + e.what());
    }
    spec.validate();
    return spec;
}

const std::vector<std::string>& scatter_columns() {
    static const std::vector<std::string> cols{"E_i",  "p_i",  "qV1",  "qA1",  "qV2",
                                               "qA2",  "v_m",  "regime", "Re_r", "Im_r",
                                               "Re_t", "Im_t", "R",    "T",    "error"};
    return cols;
}

const std::vector<std::string>& threshold_columns() {
    static const std::vector<std::string> cols{"E_i_over_m", "v_m",   "r_AV",   "qdV_plus",
                                               "qdV_minus",  "width", "regime", "error"};
    return cols;
}

std::vector<CellValue> scatter_row(double E_i, Region region1, Region region2, double v_m) {
    double p_i = kNaN;
    std::string regime;
    double re_r = kNaN, im_r = kNaN, re_t = kNaN, im_t = kNaN, R = kNaN, T = kNaN;
    std::string error;
    try {
        const IncidentState in = incident_from_energy(E_i, region1);
        p_i = in.momentum();
        const StepProblem problem = StepProblem::make(in, region2, v_m);
        const Regime reg = classify(problem);
        regime = to_string(reg.label);
        if (reg.label != RegimeLabel::NoCatchUp) {
            const ScatterResult res = scatter(problem);
            re_r = res.r_amp.real();
            im_r = res.r_amp.imag();
            re_t = res.t_amp.real();
            im_t = res.t_amp.imag();
            R = res.R;
            T = res.T;
        }
    } catch (const Error& e) {
        error = error_text(e);
    }
    return {E_i,    p_i,  region1.qV, region1.qA, region2.qV, region2.qA, v_m, regime,
            re_r,   im_r, re_t,       im_t,       R,          T,          error};
}

std::vector<CellValue> threshold_row(double E_i_over_m, double v_m, double r_AV) {
    double plus = kNaN, minus = kNaN, width = kNaN;
    std::string regime;
    std::string error;
    try {
        const IncidentState in = incident_from_energy(E_i_over_m, Region{});
        if (v_m >= group_velocity(in)) {
            regime = to_string(RegimeLabel::NoCatchUp);
        } else {
            const GapSpec g = gap_edges(in, v_m, r_AV);
            plus = g.qdV_plus;
            minus = g.qdV_minus;
            width = g.width;
            regime = "catch_up";
        }
    } catch (const Error& e) {
        error = error_text(e);
    }
    return {E_i_over_m, v_m, r_AV, plus, minus, width, regime, error};
}

unsigned sweep_threads_from_env() {
    if (const char* env = std::getenv("ST_KLEIN_THREADS")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && n > 0) return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

SweepTable run_sweep(const SweepSpec& spec, unsigned threads) {
    spec.validate();
    if (threads == 0) threads = sweep_threads_from_env();

    const std::vector<double> s1 = spec.axis1.samples();
    const std::vector<double> s2 = spec.axis2 ? spec.axis2->samples() : std::vector<double>{};
    const std::size_t n2 = spec.axis2 ? s2.size() : 1;
    const std::size_t total = s1.size() * n2;

    auto cell = [&](std::size_t index) {
        std::map<std::string, double> p = spec.fixed;
        p[spec.axis1.name] = s1[index / n2];
        if (spec.axis2) p[spec.axis2->name] = s2[index % n2];
        auto get = [&](const char* name, double fallback) {
            auto it = p.find(name);
            return it == p.end() ? fallback : it->second;
        };
        const double ei = get("ei", kNaN);
        const double vm = get("vm", kNaN);
        const double qv1 = get("qv1", 0.0);
        const double qa1 = get("qa1", 0.0);
        if (spec.mode == SweepMode::Thresholds) {
            return threshold_row(ei - qv1, vm, get("rav", kNaN));
        }
        const double dv = get("dv", kNaN);
        const double da = p.count("rav") ? p.at("rav") * dv : get("da", 0.0);
        return scatter_row(ei, Region{qv1, qa1}, Region{qv1 + dv, qa1 + da}, vm);
    };

    SweepTable table;
    table.columns = spec.mode == SweepMode::Scatter ? scatter_columns() : threshold_columns();
    table.rows.resize(total);

    // Cells are independent; each worker writes only its own slots.
    std::atomic<std::size_t> next{0};
    constexpr std::size_t kChunk = 256;
    auto worker = [&] {
        for (;;) {
            const std::size_t begin = next.fetch_add(kChunk);
            if (begin >= total) return;
            const std::size_t end = std::min(total, begin + kChunk);
            for (std::size_t i = begin; i < end; ++i) table.rows[i] = cell(i);
        }
    };
    const unsigned n_threads = static_cast<unsigned>(
        std::min<std::size_t>(threads, std::max<std::size_t>(1, total / kChunk)));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return table;
}

std::string to_csv(const SweepTable& table) {
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out += ',';
        out += table.columns[c];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            if (const double* d = std::get_if<double>(&row[c])) {
                out += format_double(*d);
            } else {
                out += quote_csv(std::get<std::string>(row[c]));
            }
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const SweepTable& table) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (const double* d = std::get_if<double>(&row[c])) {
                if (std::isfinite(*d)) {
                    obj[table.columns[c]] = *d;
                } else {
                    obj[table.columns[c]] = nullptr;
                }
            } else {
                const auto& s = std::get<std::string>(row[c]);
                if (s.empty()) {
                    obj[table.columns[c]] = nullptr;
                } else {
                    obj[table.columns[c]] = s;
                }
            }
        }
        arr.push_back(std::move(obj));
    }
    return arr.dump(1) + "\n";
}

std::string format_table(const SweepTable& table, OutputFormat format) {
    return format == OutputFormat::Csv ? to_csv(table) : to_json(table);
}

SweepSpec figure_preset(std::string_view which) {
    SweepSpec spec;
    if (which == "1b") {
        // Static scalar step, E_i - qV_1 = 4.
        spec.mode = SweepMode::Scatter;
        spec.axis1 = Axis{"dv", 0.0, 8.0, 801, AxisScale::Linear, {}};
        spec.fixed = {{"ei", 4.0}, {"vm", 0.0}, {"da", 0.0}};
    } else if (which == "3a") {
        spec.mode = SweepMode::Scatter;
        spec.axis1 = Axis{"vm", 0.0, 0.999, 601, AxisScale::Linear, {}};
        spec.axis2 = Axis{"dv", 0.0, 6.0, 601, AxisScale::Linear, {}};
        spec.fixed = {{"ei", 4.0}, {"rav", -1.0}};
    } else if (which == "3b") {
        spec.mode = SweepMode::Thresholds;
        spec.axis1 = Axis{"vm", 0.0, 0.0, 5, AxisScale::Linear,
                          {0.0, 1.0 - 1e-2, 1.0 - 1e-4, 1.0 - 1e-7, 1.0 - 1e-10}};
        spec.axis2 = Axis{"ei", 1.001, 1e6, 601, AxisScale::Log, {}};
        spec.fixed = {{"rav", -1.0}};
    } else {
        throw DomainError("unknown figure '" + std::string(which) + "' (expected 1b, 3a, 3b)");
    }
    spec.validate();
    return spec;
}

SweepTable run_figure(std::string_view which, unsigned threads) {
    const SweepSpec spec = figure_preset(which);
    SweepTable table = run_sweep(spec, threads);
    if (which == "3b") {
        // Dashed velocity-matching curve: v_m = v_g at each energy.
        const double r_AV = spec.fixed.at("rav");
        for (double eps : spec.axis2->samples()) {
            const IncidentState in = incident_from_energy(eps, Region{});
            const Rapidity w_g(std::asinh(in.kinetic_momentum()));
            const GapSpec g = gap_edges(in, w_g, r_AV);
            table.rows.push_back({eps, w_g.velocity(), r_AV, g.qdV_plus, g.qdV_minus, g.width,
                                  std::string("velocity_matching"), std::string()});
        }
    }
    return table;
}

std::string plot_script(std::string_view which, const std::string& data_path) {
    std::ostringstream py;
    py << "import csv\nimport matplotlib.pyplot as plt\n\n"
       << "with open(" << nlohmann::json(data_path).dump() << ") as fh:\n"
       << "    rows = list(csv.DictReader(fh))\n\n"
       << "def col(name, subset=None):\n"
       << "    return [float(r[name]) if r[name] else float('nan') for r in (subset or rows)]\n\n";
    if (which == "1b") {
        py << "x = [float(r['qV2']) - float(r['qV1']) for r in rows]\n"
           << "plt.plot(x, col('R'), label='R')\nplt.plot(x, col('T'), label='T')\n"
           << "plt.xlabel('qdV / m')\nplt.legend()\n";
    } else if (which == "3a") {
        py << "import numpy as np\n"
           << "vm = sorted(set(float(r['v_m']) for r in rows))\n"
           << "dv = sorted(set(float(r['qV2']) - float(r['qV1']) for r in rows))\n"
           << "T = np.array(col('T')).reshape(len(vm), len(dv))\n"
           << "plt.pcolormesh(dv, vm, T, shading='auto')\nplt.colorbar(label='T')\n"
           << "plt.xlabel('qdV / m')\nplt.ylabel('v_m')\n";
    } else {
        py << "groups = {}\nfor r in rows:\n"
           << "    key = 'v_m = v_g' if r['regime'] == 'velocity_matching' else r['v_m']\n"
           << "    groups.setdefault(key, []).append(r)\n"
           << "for key, sub in groups.items():\n"
           << "    style = '--' if key == 'v_m = v_g' else '-'\n"
           << "    plt.loglog(col('E_i_over_m', sub), col('qdV_minus', sub), style, label=key)\n"
           << "plt.axhline(2.0, color='gray')\n"
           << "plt.xlabel('(E_i - qV_1) / m')\nplt.ylabel('qdV_th / m')\nplt.legend()\n";
    }
    py << "plt.savefig(" << nlohmann::json(data_path + ".png").dump() << ", dpi=150)\n";
    return py.str();
}

}  // namespace stklein
