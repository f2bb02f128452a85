#include "stklein/verify.hpp"

#include <algorithm>
#include <cmath>

#include "stklein/lorentz.hpp"
#include "stklein/oracle.hpp"
#include "stklein/regime.hpp"
#include "stklein/scattering.hpp"
#include "stklein/thresholds.hpp"

namespace stklein {

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

StepProblem draw(std::mt19937_64& rng, bool static_step) {
    const Region r1{uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0)};
    const double eps = 1.0 + std::exp(uniform(rng, std::log(0.05), std::log(20.0)));
    const IncidentState in = incident_from_energy(r1.qV + eps, r1);
    const Region r2{r1.qV + uniform(rng, -12.0, 12.0), r1.qA + uniform(rng, -6.0, 6.0)};
    const double v = static_step ? 0.0 : uniform(rng, 0.0, 0.97) * group_velocity(in);
    return StepProblem::make(in, r2, v);
}

bool clear_of_tangency(const StepProblem& p) {
    const TransitionGeometry g = transition_geometry(p);
    return g.radicand > 1e-6 * std::max(1.0, g.W2 * g.W2);
}

double rel(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace

StepProblem random_problem(std::mt19937_64& rng) { return draw(rng, false); }

StepProblem random_propagating_problem(std::mt19937_64& rng) {
    for (;;) {
        StepProblem p = draw(rng, false);
        if (clear_of_tangency(p)) return p;
    }
}

StepProblem random_static_problem(std::mt19937_64& rng) {
    for (;;) {
        StepProblem p = draw(rng, true);
        if (clear_of_tangency(p)) return p;
    }
}

void CheckStats::record(double residual) {
    ++samples;
    max_residual = std::max(max_residual, residual);
    if (!(residual <= tolerance)) ++failures;
}

bool VerifyReport::passed() const {
    return !checks.empty() &&
           std::all_of(checks.begin(), checks.end(), [](const CheckStats& c) { return c.passed(); });
}

VerifyReport run_oracle_checks(std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    CheckStats transmitted{"line_hyperbola_transmitted", 1e-9};
    CheckStats reflected{"line_hyperbola_reflected", 1e-9};
    CheckStats tangents{"tangent_velocities_bisection", 1e-9};
    CheckStats edges{"gap_edges_bisection", 1e-9};
    CheckStats statics{"static_matching", 1e-10};

    for (std::size_t n = 0; n < samples; ++n) {
        const StepProblem p = random_propagating_problem(rng);
        const auto& in = p.incident();

        // Transmitted roots: line of slope v_m through the incident point.
        const TransmittedChannels tc = transmitted_channels(p);
        const auto roots2 = oracle::intersect_line_hyperbola(
            {in.momentum(), in.energy(), p.v_m(), p.region2()});
        if (roots2.size() == 2) {
            transmitted.record(std::max({rel(roots2[0].p, tc.minus.p.real()),
                                         rel(roots2[0].E, tc.minus.E.real()),
                                         rel(roots2[1].p, tc.plus.p.real()),
                                         rel(roots2[1].E, tc.plus.E.real())}));
        } else {
            transmitted.record(INFINITY);
        }

        // Reflected root: the second intersection with the medium-1 hyperbola.
        const ChannelSolution rc = reflected_channel(p);
        const auto roots1 = oracle::intersect_line_hyperbola(
            {in.momentum(), in.energy(), p.v_m(), p.region1()});
        double best = INFINITY;
        for (const auto& pt : roots1) {
            best = std::min(best, std::max(rel(pt.p, rc.p.real()), rel(pt.E, rc.E.real())));
        }
        reflected.record(best);

        // Gap edges against bisection of the radicand in qdV.
        const double r_AV = uniform(rng, -3.0, 0.9);
        const double v_gap = std::min(p.v_m(), 0.99);
        const GapSpec g = gap_edges(in, v_gap, r_AV);
        const auto scan = oracle::radicand_roots_scan(oracle::radicand_in_step(in, v_gap, r_AV),
                                                      g.qdV_plus - 1.0, g.qdV_minus + 1.0);
        if (scan.size() == 2) {
            edges.record(std::max(std::abs(scan[0] - g.qdV_plus), std::abs(scan[1] - g.qdV_minus)));
        } else {
            edges.record(INFINITY);
        }

        // Static matching against the moving-front formulas at v_m = 0.
        const StepProblem s = random_static_problem(rng);
        const auto sol = oracle::static_matching_solve(s.incident().energy(), s.region1(), s.region2());
        const ScatterResult res = scatter(s);
        statics.record(std::max({std::abs(sol.R - res.R), std::abs(sol.T - res.T),
                                 std::abs(sol.r - res.r_amp), std::abs(sol.t - res.t_amp)}));
    }
    // Tangent velocities against bisection of the radicand in v_m. Only
    // configurations with well-separated roots inside (0, 1) are eligible;
    // draws continue until `samples` of them have been checked.
    for (std::size_t attempts = 0; tangents.samples < samples && attempts < 100 * samples;
         ++attempts) {
        const StepProblem p = random_problem(rng);
        const auto& in = p.incident();
        std::pair<double, double> tan;
        try {
            tan = tangent_velocities(in, p.region2());
        } catch (const DomainError&) {
            continue;
        }
        const auto [up, low] = tan;
        auto near_end = [](double v) { return std::abs(v) < 1e-6 || std::abs(1.0 - v) < 1e-6; };
        if (near_end(up) || near_end(low) || std::abs(up - low) < 2e-3) continue;
        std::vector<double> expected;
        for (double v : {up, low}) {
            if (v > 0.0 && v < 1.0) expected.push_back(v);
        }
        if (expected.empty()) continue;
        const auto scan = oracle::radicand_roots_scan(
            oracle::radicand_in_velocity(in, p.region2()), 0.0, 1.0 - 1e-9);
        if (scan.size() != expected.size()) {
            tangents.record(INFINITY);
            continue;
        }
        double worst = 0.0;
        for (std::size_t k = 0; k < scan.size(); ++k) {
            worst = std::max(worst, std::abs(scan[k] - expected[k]));
        }
        tangents.record(worst);
    }
    return {{transmitted, reflected, tangents, edges, statics}};
}

VerifyReport run_continuity_checks(std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    CheckStats continuity{"comoving_spinor_continuity", 1e-10};
    CheckStats energy{"comoving_energy_equality", 1e-10};
    CheckStats direct{"comoving_direct_solve", 1e-10};
    CheckStats flux{"flux_partition", 1e-10};
    // Residual here is the inverse of the detected mismatch; it must stay
    // below 1e4, i.e. a 1e-3 perturbation must show up above 1e-4.
    CheckStats sensitivity{"perturbation_detected", 1e4};

    for (std::size_t n = 0; n < samples; ++n) {
        const StepProblem p = random_propagating_problem(rng);
        const ScatterResult res = scatter(p);
        continuity.record(verify_continuity(p, res));
        energy.record(comoving_energy_mismatch(p, res));
        flux.record(std::abs(res.R + res.T - 1.0));

        const Amplitudes a = comoving_amplitudes(p);
        const double scale = std::max({1.0, std::abs(res.r_amp), std::abs(res.t_amp)});
        direct.record(std::max(std::abs(a.r - res.r_amp), std::abs(a.t - res.t_amp)) / scale);

        ScatterResult bad = res;
        bad.r_amp += 1e-3;
        sensitivity.record(1.0 / verify_continuity(p, bad));
    }
    return {{continuity, energy, direct, flux, sensitivity}};
}

}  // namespace stklein
