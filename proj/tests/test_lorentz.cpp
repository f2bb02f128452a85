#include <doctest.h>

#include <cmath>

#include "stklein/errors.hpp"
#include "stklein/lorentz.hpp"
#include "support.hpp"

using namespace stklein;
using stklein::test::kPropertySamples;
using stklein::test::rel_err;
using stklein::test::uniform;

TEST_CASE("rapidity") {
    const Rapidity w = Rapidity::from_velocity(0.6);
    CHECK(w.gamma() == doctest::Approx(1.25).epsilon(1e-15));
    CHECK(w.gamma_velocity() == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(w.one_minus_velocity() == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(Rapidity::from_gamma(1e8).one_minus_velocity() == doctest::Approx(5e-17).epsilon(1e-8));
    CHECK_THROWS_AS(Rapidity::from_velocity(1.0), DomainError);
    CHECK_THROWS_AS(Rapidity::from_velocity(-1.0), DomainError);
    CHECK_THROWS_AS(Rapidity::from_gamma(0.5), DomainError);
    CHECK((w + (-w)).value() == 0.0);
}

TEST_CASE("energy-momentum boost") {
    const auto [E0, p0] = boost_energy_momentum(4.0, 1.5, 0.0);
    CHECK(E0 == 4.0);
    CHECK(p0 == 1.5);
    const auto [E, p] = boost_energy_momentum(1.0, 0.0, 0.6);
    CHECK(E == doctest::Approx(1.25).epsilon(1e-15));
    CHECK(p == doctest::Approx(-0.75).epsilon(1e-15));
    CHECK(E * E - p * p == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(boost_energy_momentum(1.0, 0.0, 1.0), DomainError);

    // Potentials boost alongside, preserving the mass shell.
    const Region r{1.3, -0.4};
    const double Ek = 3.0, pk = std::sqrt(8.0);
    const BoostZ b = BoostZ::from_velocity(0.7);
    const auto [Eb, pb] = boost_energy_momentum(Complex(Ek + r.qV), Complex(pk + r.qA), b);
    const Region rb = boost_region(r, b);
    CHECK(std::abs(on_shell_residual(Eb, pb, rb)) < 1e-13);
}

TEST_CASE("spinor boost") {
    const BoostedSpinor id = boost_spinor(Complex(0.3, -0.2), 0.0);
    CHECK(id.upper == Complex(1.0, 0.0));
    CHECK(id.lower == Complex(0.3, -0.2));
    CHECK_THROWS_AS(boost_spinor(0.3, 1.0), DomainError);

    SUBCASE("rest spinor") {
        const BoostZ b = BoostZ::from_velocity(0.6);
        const BoostedSpinor s = boost_spinor(0.0, b);
        CHECK(s.ratio().real() == doctest::Approx(-std::tanh(0.5 * b.omega)).epsilon(1e-15));
        // Same ratio from the boosted state (gamma, -beta gamma), fallback form.
        const auto [E, p] = boost_energy_momentum(1.0, 0.0, 0.6);
        CHECK(s.ratio().real() == doctest::Approx(p / (E + 1.0)).epsilon(1e-15));
        CHECK(gamma_ratio(E, p, Region{}).real() == doctest::Approx(s.ratio().real()).epsilon(1e-15));
    }
    SUBCASE("inverse boost") {
        const Complex g(0.42, 0.1);
        const BoostedSpinor s = boost_spinor(g, 0.8);
        const BoostZ back = BoostZ::from_velocity(-0.8);
        const BoostedSpinor t{back.c1 * s.upper - back.c2 * s.lower, -back.c2 * s.upper + back.c1 * s.lower};
        CHECK(std::abs(t.upper - 1.0) < 1e-12);
        CHECK(std::abs(t.lower - g) < 1e-12);
    }
}

TEST_CASE("spinor boost covariance on random on-shell states") {
    std::mt19937_64 rng(501);
    for (int n = 0; n < 1000; ++n) {
        const Region r{uniform(rng, -3, 3), uniform(rng, -3, 3)};
        const double pk = uniform(rng, -10, 10);
        const double s = uniform(rng, 0, 1) < 0.5 ? -1.0 : 1.0;
        const double E = r.qV + s * std::sqrt(1.0 + pk * pk);
        const double p = r.qA + pk;
        const BoostZ b = BoostZ::from_velocity(uniform(rng, -0.95, 0.95));
        const auto [Eb, pb] = boost_energy_momentum(Complex(E), Complex(p), b);
        const Complex direct = gamma_ratio(Eb, pb, boost_region(r, b));
        const Complex boosted = boost_spinor(gamma_ratio(E, p, r), b).ratio();
        CHECK(rel_err(direct, boosted) < 1e-10);
    }
}

TEST_CASE("continuity in the comoving frame") {
    SUBCASE("no interface") {
        const StepProblem p = StepProblem::make(incident_from_energy(3.0, Region{0.4, 0.2}), Region{0.4, 0.2}, 0.5);
        CHECK(verify_continuity(p, scatter(p)) == 0.0);
    }
    SUBCASE("perturbed amplitudes are detected") {
        const StepProblem p = StepProblem::make(incident_from_energy(4.0, Region{}), Region{2.0, -1.0}, 0.4);
        ScatterResult r = scatter(p);
        CHECK(verify_continuity(p, r) < 1e-14);
        r.r_amp += 1e-3;
        CHECK(verify_continuity(p, r) > 1e-4);
    }
    SUBCASE("direct comoving solve matches the lab amplitudes") {
        const StepProblem p = StepProblem::make(incident_from_energy(4.0, Region{}), Region{6.0, 1.0}, 0.3);
        const ScatterResult r = scatter(p);
        const Amplitudes a = comoving_amplitudes(p);
        CHECK(std::abs(a.r - r.r_amp) < 1e-12);
        CHECK(std::abs(a.t - r.t_amp) < 1e-12);
    }
}

TEST_CASE("property: unit determinant of the spinor boost") {
    for (int k = 0; k <= 400; ++k) {
        const double w = 40.0 * k / 400.0;
        const BoostZ b = BoostZ::from_rapidity(Rapidity(w));
        CHECK(std::abs(b.determinant() * b.determinant() - 1.0) < 1e-12);
        CHECK(b.c1 == doctest::Approx(0.5 * (b.lightcone_plus + b.lightcone_minus)).epsilon(1e-15));
        CHECK(b.c2 == doctest::Approx(0.5 * (b.lightcone_plus - b.lightcone_minus)).epsilon(1e-15));
        // The raw difference of squares resolves the determinant while c1^2 stays moderate.
        if (w <= 8.0) {
            const double det = b.c1 * b.c1 - b.c2 * b.c2;
            CHECK(std::abs(det * det - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("property: rapidities add under composition") {
    std::mt19937_64 rng(502);
    for (std::size_t n = 0; n < kPropertySamples; ++n) {
        const Rapidity w1(uniform(rng, -3, 3)), w2(uniform(rng, -3, 3));
        const BoostZ b1 = BoostZ::from_rapidity(w1), b2 = BoostZ::from_rapidity(w2);
        const BoostZ b12 = BoostZ::from_rapidity(w1 + w2);
        const double E = 1.0 + std::exp(uniform(rng, -3, 3));
        const double p = std::sqrt(E * E - 1.0) * (uniform(rng, 0, 1) < 0.5 ? -1 : 1);
        const auto [Ea, pa] = boost_energy_momentum(Complex(E), Complex(p), b1);
        const auto [Eb, pb] = boost_energy_momentum(Ea, pa, b2);
        const auto [Ec, pc] = boost_energy_momentum(Complex(E), Complex(p), b12);
        CHECK(rel_err(Eb, Ec) < 1e-10);
        CHECK(rel_err(pb, pc) < 1e-10);

        const Complex g = gamma_ratio(E, p, Region{});
        const BoostedSpinor s1 = boost_spinor(g, b1);
        const BoostedSpinor s2{b2.c1 * s1.upper - b2.c2 * s1.lower, -b2.c2 * s1.upper + b2.c1 * s1.lower};
        CHECK(rel_err(s2.ratio(), boost_spinor(g, b12).ratio()) < 1e-10);
    }
}

TEST_CASE("property: comoving frame sees one energy and continuous spinors") {
    std::mt19937_64 rng(503);
    for (std::size_t n = 0; n < kPropertySamples; ++n) {
        const StepProblem p = random_propagating_problem(rng);
        const ScatterResult r = scatter(p);
        CHECK(comoving_energy_mismatch(p, r) < 1e-10);
        CHECK(verify_continuity(p, r) < 1e-10);
    }
}
