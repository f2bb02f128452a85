#include <doctest.h>

#include <cmath>
#include <sstream>

#include "stklein/errors.hpp"
#include "stklein/sweep.hpp"
#include "stklein/thresholds.hpp"

using namespace stklein;

namespace {

std::size_t column(const SweepTable& t, const std::string& name) {
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        if (t.columns[c] == name) return c;
    }
    FAIL("missing column " << name);
    return 0;
}

double num(const SweepTable& t, std::size_t row, const std::string& name) {
    return std::get<double>(t.rows[row][column(t, name)]);
}

std::string str(const SweepTable& t, std::size_t row, const std::string& name) {
    return std::get<std::string>(t.rows[row][column(t, name)]);
}

SweepSpec scatter_spec() {
    SweepSpec s;
    s.axis1 = Axis{"dv", 0.0, 8.0, 17, AxisScale::Linear, {}};
    s.axis2 = Axis{"vm", 0.0, 0.9, 7, AxisScale::Linear, {}};
    s.fixed = {{"ei", 4.0}, {"rav", -1.0}};
    return s;
}

}  // namespace

TEST_CASE("axis sampling") {
    const auto lin = Axis{"dv", 0.0, 8.0, 801, AxisScale::Linear, {}}.samples();
    CHECK(lin.size() == 801);
    CHECK(lin.front() == 0.0);
    CHECK(lin.back() == 8.0);
    CHECK(lin[300] == doctest::Approx(3.0).epsilon(1e-15));

    const auto lg = Axis{"ei", 1.0, 1e6, 7, AxisScale::Log, {}}.samples();
    CHECK(lg[3] == doctest::Approx(1e3).epsilon(1e-14));
    CHECK(lg.back() == 1e6);

    const auto oml = Axis{"vm", 2.0, 10.0, 5, AxisScale::OneMinusLog, {}}.samples();
    CHECK(oml.front() == doctest::Approx(0.99).epsilon(1e-15));
    CHECK(1.0 - oml[1] == doctest::Approx(1e-4).epsilon(1e-9));
    CHECK(1.0 - oml.back() == doctest::Approx(1e-10).epsilon(1e-5));

    const auto vals = Axis{"vm", 0, 0, 0, AxisScale::Linear, {0.1, 0.5}}.samples();
    CHECK(vals == std::vector<double>{0.1, 0.5});
}

TEST_CASE("spec validation") {
    CHECK_NOTHROW(scatter_spec().validate());

    auto bad = [](auto mutate) {
        SweepSpec s = scatter_spec();
        mutate(s);
        return s;
    };
    CHECK_THROWS_AS(bad([](SweepSpec& s) { s.axis1.count = 1; }).validate(), DomainError);
    CHECK_THROWS_AS(bad([](SweepSpec& s) { s.axis1.max = s.axis1.min; }).validate(), DomainError);
    CHECK_THROWS_AS(bad([](SweepSpec& s) { s.axis1.scale = AxisScale::Log; }).validate(), DomainError);
    CHECK_THROWS_AS(bad([](SweepSpec& s) { s.axis1.scale = AxisScale::OneMinusLog; s.axis1.min = 1; }).validate(),
                    DomainError);
    CHECK_THROWS_AS(bad([](SweepSpec& s) { s.axis1.name = "bogus"; }).validate(), DomainError);
    CHECK_THROWS_AS(bad([](SweepSpec& s) { s.fixed["dv"] = 1.0; }).validate(), DomainError);
    CHECK_THROWS_AS(bad([](SweepSpec& s) { s.fixed.erase("ei"); }).validate(), DomainError);
    CHECK_THROWS_AS(bad([](SweepSpec& s) { s.fixed["da"] = 1.0; }).validate(), DomainError);
    CHECK_THROWS_AS(bad([](SweepSpec& s) { s.axis2->name = "dv"; }).validate(), DomainError);
    CHECK_THROWS_AS(bad([](SweepSpec& s) { s.mode = SweepMode::Thresholds; }).validate(), DomainError);
}

TEST_CASE("spec from JSON") {
    const auto j = nlohmann::json::parse(R"({
        "mode": "scatter",
        "axis1": {"name": "vm", "min": 1, "max": 4, "count": 4, "scale": "one-minus-log"},
        "fixed": {"ei": 4, "dv": 2.5, "rav": -1},
        "output": {"path": "out.json", "format": "json"}
    })");
    const SweepSpec s = SweepSpec::from_json(j);
    CHECK(s.axis1.scale == AxisScale::OneMinusLog);
    CHECK_FALSE(s.axis2);
    CHECK(s.output.format == OutputFormat::Json);
    CHECK(s.output.path == "out.json");
    CHECK_THROWS_AS(SweepSpec::from_json(nlohmann::json::parse(R"({"axis1": 3})")), DomainError);
    CHECK_THROWS_AS(SweepSpec::from_json(nlohmann::json::parse(
                        R"({"mode": "x", "axis1": {"name": "vm", "min": 0, "max": 1, "count": 2}})")),
                    DomainError);
}

TEST_CASE("sweep rows") {
    const SweepTable t = run_sweep(scatter_spec(), 3);
    REQUIRE(t.rows.size() == 17 * 7);
    CHECK(t.columns == scatter_columns());

    // Row-major order: axis1 outer, axis2 inner.
    CHECK(num(t, 0, "qV2") == 0.0);
    CHECK(num(t, 6, "v_m") == doctest::Approx(0.9));
    CHECK(num(t, 7, "qV2") == doctest::Approx(0.5));
    CHECK(num(t, 7, "qA2") == doctest::Approx(-0.5));

    for (std::size_t k = 0; k < t.rows.size(); ++k) {
        const std::string regime = str(t, k, "regime");
        CHECK(str(t, k, "error").empty());
        if (regime == "no_catch_up") {
            CHECK(std::isnan(num(t, k, "T")));
        } else if (regime == "klein_gap") {
            CHECK(std::abs(num(t, k, "T")) < 1e-10);
            CHECK(num(t, k, "R") == doctest::Approx(1.0).epsilon(1e-10));
        } else {
            CHECK(num(t, k, "R") + num(t, k, "T") == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("sweep cells record errors instead of aborting") {
    SweepSpec s;
    s.axis1 = Axis{"ei", 0.5, 4.0, 8, AxisScale::Linear, {}};
    s.fixed = {{"vm", 0.0}, {"dv", 2.0}};
    const SweepTable t = run_sweep(s, 2);
    REQUIRE(t.rows.size() == 8);
    CHECK(str(t, 0, "error").rfind("domain_error: ", 0) == 0);
    CHECK(std::isnan(num(t, 0, "T")));
    CHECK(str(t, 7, "error").empty());
}

TEST_CASE("determinism across thread counts") {
    SweepSpec s = scatter_spec();
    s.axis1.count = 101;
    s.axis2->count = 53;
    const std::string one = to_csv(run_sweep(s, 1));
    CHECK(one == to_csv(run_sweep(s, 4)));
    CHECK(one == to_csv(run_sweep(s, 7)));
    CHECK(to_json(run_sweep(s, 1)) == to_json(run_sweep(s, 5)));
}

TEST_CASE("CSV and JSON encoding") {
    SweepTable t;
    t.columns = {"a", "b", "c"};
    t.rows.push_back({0.1, std::nan(""), std::string("x,\"y\"")});
    t.rows.push_back({-2.0, 1e-300, std::string()});
    CHECK(to_csv(t) == "a,b,c\n0.10000000000000001,,\"x,\"\"y\"\"\"\n-2,1e-300,\n");
    const auto j = nlohmann::json::parse(to_json(t));
    CHECK(j[0]["b"].is_null());
    CHECK(j[0]["c"] == "x,\"y\"");
    CHECK(j[1]["c"].is_null());
    CHECK(j[1]["a"] == -2.0);
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(std::stod(format_double(M_PI)) == M_PI);
}

TEST_CASE("figure presets") {
    SUBCASE("static step heights") {
        const SweepSpec s = figure_preset("1b");
        CHECK(s.axis1.name == "dv");
        CHECK(s.axis1.count == 801);
        CHECK(s.fixed.at("ei") == 4.0);
        CHECK(s.fixed.at("vm") == 0.0);
        const SweepTable t = run_figure("1b", 2);
        REQUIRE(t.rows.size() == 801);
        for (std::size_t k = 0; k < t.rows.size(); ++k) {
            const double dv = num(t, k, "qV2");
            const bool gap = str(t, k, "regime") == "klein_gap";
            if (dv > 3.0 + 1e-9 && dv < 5.0 - 1e-9) CHECK(gap);
            if (dv < 3.0 - 1e-9 || dv > 5.0 + 1e-9) CHECK_FALSE(gap);
        }
    }
    SUBCASE("velocity and step grid") {
        const SweepSpec s = figure_preset("3a");
        CHECK(s.axis1.name == "vm");
        CHECK(s.axis1.count * s.axis2->count == 601 * 601);
        CHECK(s.fixed.at("ei") == 4.0);
        CHECK(s.fixed.at("rav") == -1.0);
        CHECK(s.axis1.max < 1.0);
    }
    SUBCASE("threshold curves") {
        const SweepSpec s = figure_preset("3b");
        CHECK(s.mode == SweepMode::Thresholds);
        const std::vector<double> vms = s.axis1.samples();
        REQUIRE(vms.size() == 5);
        CHECK(1.0 - vms[1] == doctest::Approx(1e-2).epsilon(1e-12));
        CHECK(1.0 - vms[2] == doctest::Approx(1e-4).epsilon(1e-10));
        CHECK(1.0 - vms[3] == doctest::Approx(1e-7).epsilon(1e-8));
        CHECK(1.0 - vms[4] == doctest::Approx(1e-10).epsilon(1e-5));
        CHECK(s.fixed.at("rav") == -1.0);
        const SweepTable t = run_figure("3b", 2);
        CHECK(t.rows.size() == 5 * 601 + 601);
        CHECK(str(t, t.rows.size() - 1, "regime") == "velocity_matching");
        // Along each curve the smallest catch-up threshold approaches 2 e^{-omega_m}.
        for (std::size_t c = 1; c < 5; ++c) {
            double best = INFINITY;
            for (std::size_t k = c * 601; k < (c + 1) * 601; ++k) {
                if (str(t, k, "regime") == "catch_up") best = std::min(best, num(t, k, "qdV_minus"));
            }
            const double floor = velocity_matching_threshold(Rapidity::from_velocity(vms[c]));
            CHECK(best >= floor * (1.0 - 1e-12));
        }
    }
    CHECK_THROWS_AS(figure_preset("2a"), DomainError);
}

TEST_CASE("moving-gap wedge follows the edge curves within one grid cell") {
    SweepSpec s;
    s.axis1 = Axis{"vm", 0.0, 0.95, 96, AxisScale::Linear, {}};
    s.axis2 = Axis{"dv", 0.0, 6.0, 241, AxisScale::Linear, {}};
    s.fixed = {{"ei", 4.0}, {"rav", -1.0}};
    const SweepTable t = run_sweep(s, 2);
    const double cell = 6.0 / 240.0;
    const IncidentState in = incident_from_energy(4.0, Region{});
    for (std::size_t k = 0; k < t.rows.size(); ++k) {
        const std::string regime = str(t, k, "regime");
        if (regime == "no_catch_up") continue;
        const GapSpec g = gap_edges(in, num(t, k, "v_m"), -1.0);
        const double dv = num(t, k, "qV2");
        if (dv > g.qdV_plus + cell && dv < g.qdV_minus - cell) CHECK(regime == "klein_gap");
        if (dv < g.qdV_plus - cell || dv > g.qdV_minus + cell) CHECK(regime != "klein_gap");
    }
}

TEST_CASE("plot script names the data file") {
    for (const char* w : {"1b", "3a", "3b"}) {
        const std::string py = plot_script(w, "data.csv");
        CHECK(py.find("\"data.csv\"") != std::string::npos);
        CHECK(py.find("savefig") != std::string::npos);
    }
}

TEST_CASE("thread count from the environment") {
    setenv("ST_KLEIN_THREADS", "3", 1);
    CHECK(sweep_threads_from_env() == 3);
    setenv("ST_KLEIN_THREADS", "zero", 1);
    CHECK(sweep_threads_from_env() >= 1);
    unsetenv("ST_KLEIN_THREADS");
}
