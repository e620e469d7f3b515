#include "doctest.h"
#include "test_support.hpp"

#include "swtorus/random.hpp"
#include "swtorus/sw_system.hpp"

#include <cmath>
#include <numbers>

using namespace swtorus;
using namespace testing_support;

namespace {

RealScalarField randomGauge(const Lattice& lat, Rng& rng) {
    RealScalarField f(lat);
    for (auto& v : f) v = rng.uniform(-4.0, 4.0);
    return f;
}

// A state with every term of the energy active: order-one spinor, moderate connection.
SWState busyState(const Lattice& lat, Rng& rng) {
    OneForm a(lat);
    for (auto& v : a)
        for (auto& c : v) c = 0.3 * rng.normal() / lat.spacing();
    SpinorPlusField<> psi(lat);
    for (auto& v : psi) v = randomSpinor(rng);
    return {U1Connection(std::move(a)), std::move(psi)};
}

Perturbation randomPerturbation(const Lattice& lat, Rng& rng) {
    SelfDualField d(lat);
    for (auto& v : d)
        for (auto& c : v) c = 0.5 * rng.normal();
    return {d};
}

double energyOf(const SWState& s, const Perturbation& p) { return residualReport(s, p).energy; }

SWState displaced(const SWState& s, const OneForm& da, const SpinorPlusField<>& dpsi, double t) {
    OneForm a = s.A.oneForm();
    SpinorPlusField<> psi = s.psi;
    for (std::size_t x = 0; x < a.size(); ++x) {
        for (std::size_t c = 0; c < 4; ++c) a[x][c] += t * da[x][c];
        psi[x] += Complex(t) * dpsi[x];
    }
    return {U1Connection(std::move(a)), std::move(psi)};
}

}  // namespace

TEST_CASE("SW residual examples") {
    const Lattice lat({4, 4, 4, 4}, 0.5);
    const auto none = Perturbation::none(lat);
    SUBCASE("reducible flat solution") {
        const SWState s{U1Connection::trivial(lat), SpinorPlusField<>(lat)};
        const SWResidual r = swResidual(s, none);
        CHECK(norm2(r.r1) == 0.0);
        CHECK(hermitianNorm(r.r2) == 0.0);
    }
    SUBCASE("constant spinor leaves minus sigma") {
        const Complex c{0.6, -0.8};
        const SWState s{U1Connection::trivial(lat), SpinorPlusField<>(lat, {c, 0.0})};
        const SWResidual r = swResidual(s, none);
        CHECK(norm2(r.r1) == 0.0);
        for (const auto& v : r.r2) {
            CHECK(std::abs(v.d + std::norm(c) / 2.0) < 1e-15);
            CHECK(std::abs(v.c) == 0.0);
        }
    }
    SUBCASE("curvature residual matches rho(i c) - sigma") {
        Rng rng(1);
        for (int s = 0; s < 50; ++s) {
            const std::array<double, 3> c{rng.normal(), rng.normal(), rng.normal()};
            const std::array<double, 3> d{rng.normal(), rng.normal(), rng.normal()};
            const auto psi = randomSpinor(rng);
            const Mat2<> expected =
                Complex(0.0, 1.0) * selfDualPlusBlock<Complex>({c[0] + d[0], c[1] + d[1], c[2] + d[2]}) -
                sigma(psi).matrix();
            const Mat2<> got = curvatureResidual(c, d, psi).matrix();
            for (int i = 0; i < 4; ++i) CHECK(std::abs(got.m[static_cast<std::size_t>(i)] - expected.m[static_cast<std::size_t>(i)]) < 1e-14);
        }
    }
    SUBCASE("report energy is the sum of squared norms") {
        Rng rng(2);
        const SWState s = busyState(lat, rng);
        const ResidualReport rep = residualReport(s, none);
        CHECK(rep.energy == rep.diracNorm * rep.diracNorm + rep.curvatureNorm * rep.curvatureNorm);
        CHECK(rep.c0Bound == 0.0);
    }
}

TEST_CASE("gauge action") {
    Rng rng(3);
    const Lattice lat({4, 6, 4, 4}, 0.7);
    const SWState s = busyState(lat, rng);
    const auto pert = randomPerturbation(lat, rng);
    SUBCASE("zero gauge is the identity") {
        const SWState g = applyGauge(s, RealScalarField(lat));
        CHECK(g.A.oneForm() == s.A.oneForm());
        CHECK(g.psi == s.psi);
    }
    SUBCASE("constant gauge rotates psi globally") {
        const SWState g = applyGauge(s, RealScalarField(lat, 1.25));
        CHECK(g.A.oneForm() == s.A.oneForm());
        for (std::size_t x = 0; x < lat.sites(); ++x) {
            CHECK(std::abs(g.psi[x].z - std::polar(1.0, -1.25) * s.psi[x].z) < 1e-15);
        }
    }
    SUBCASE("residuals transform covariantly under 20 random gauges") {
        const SWResidual r = swResidual(s, pert);
        const ResidualReport rep = residualReport(s, pert);
        for (int t = 0; t < 20; ++t) {
            const RealScalarField f = randomGauge(lat, rng);
            const SWState g = applyGauge(s, f);
            const SWResidual rg = swResidual(g, pert);
            double r1err = 0.0, r2err = 0.0;
            for (std::size_t x = 0; x < lat.sites(); ++x) {
                const Complex ph = std::polar(1.0, -f[x]);
                r1err = std::max(r1err, std::abs(rg.r1[x].z - ph * r.r1[x].z) + std::abs(rg.r1[x].w - ph * r.r1[x].w));
                r2err = std::max(r2err, std::abs(rg.r2[x].d - r.r2[x].d) + std::abs(rg.r2[x].c - r.r2[x].c));
            }
            CHECK(r1err < 1e-12);
            CHECK(r2err < 1e-12);
            const ResidualReport repg = residualReport(g, pert);
            CHECK(relErr(repg.energy, rep.energy) < 1e-12);
            CHECK(relErr(repg.diracNorm, rep.diracNorm) < 1e-12);
            CHECK(relErr(repg.curvatureNorm, rep.curvatureNorm) < 1e-12);
            CHECK(relErr(repg.maxPsiSq, rep.maxPsiSq) < 1e-12);
        }
    }
}

TEST_CASE("Coulomb gauge fixing") {
    Rng rng(4);
    const Lattice lat({6, 4, 4, 8}, 0.6);
    const auto none = Perturbation::none(lat);
    const auto checkCoulomb = [&](const SWState& s) {
        const RealScalarField div = codifferential(s.A.oneForm());
        for (double v : div) CHECK(std::abs(v) <= 1e-10);
        const OneForm mean = harmonicPart(s.A.oneForm());
        for (int mu = 0; mu < 4; ++mu) {
            const double m = mean[0][static_cast<std::size_t>(mu)];
            CHECK(m >= -1e-9);
            CHECK(m < 2.0 * std::numbers::pi / lat.extent(mu));
        }
    };
    SUBCASE("random state") {
        const SWState s = busyState(lat, rng);
        const SWState fixed = coulombFix(s);
        checkCoulomb(fixed);
        CHECK(relErr(energyOf(fixed, none), energyOf(s, none)) < 1e-12);
        const SWState twice = coulombFix(fixed);
        double change = 0.0;
        for (std::size_t x = 0; x < lat.sites(); ++x) {
            for (std::size_t c = 0; c < 4; ++c) change = std::max(change, std::abs(twice.A.oneForm()[x][c] - fixed.A.oneForm()[x][c]));
            change = std::max(change, std::abs(twice.psi[x].z - fixed.psi[x].z) + std::abs(twice.psi[x].w - fixed.psi[x].w));
        }
        CHECK(change <= 1e-10);
    }
    SUBCASE("large holonomy is reduced into the fundamental domain") {
        OneForm a(lat, {3.0, -2.0, 7.5, 0.1});
        const SWState s{U1Connection(a), bandLimitedSpinor(lat, {5, 1.0, 1, 6})};
        const SWState fixed = coulombFix(s);
        checkCoulomb(fixed);
        CHECK(relErr(energyOf(fixed, none), energyOf(s, none)) < 1e-12);
    }
    SUBCASE("pure gauge is removed") {
        const RealScalarField f = bandLimitedReal(lat, {6, 2.0, 1, 6});
        const SWState s = applyGauge({U1Connection::trivial(lat), bandLimitedSpinor(lat, {7, 1.0, 1, 6})}, f);
        const SWState fixed = coulombFix(s);
        for (const auto& v : fixed.A.oneForm())
            for (double c : v) CHECK(std::abs(c) < 1e-10);
    }
    SUBCASE("central exact form ends constant-free and divergence-free") {
        const SWState s{U1Connection(d0(bandLimitedReal(lat, {8, 1.0, 1, 6}))), SpinorPlusField<>(lat)};
        const SWState fixed = coulombFix(s);
        checkCoulomb(fixed);
        const OneForm mean = harmonicPart(fixed.A.oneForm());
        for (double m : mean[0]) CHECK(std::abs(m) < 1e-12);
    }
    SUBCASE("Coulomb state is unchanged") {
        const SWState s = coulombFix(busyState(lat, rng));
        const SWState again = coulombFix(s);
        for (std::size_t x = 0; x < lat.sites(); ++x)
            for (std::size_t c = 0; c < 4; ++c) CHECK(std::abs(again.A.oneForm()[x][c] - s.A.oneForm()[x][c]) < 1e-10);
    }
}

TEST_CASE("energy gradient matches finite differences on 20 random states") {
    Rng rng(5);
    const Lattice lat({4, 4, 4, 6}, 0.8);
    const double eps = 1e-5;
    for (int trial = 0; trial < 20; ++trial) {
        const SWState s = busyState(lat, rng);
        const Perturbation pert = trial % 2 == 0 ? Perturbation::none(lat) : randomPerturbation(lat, rng);
        const EnergyGradient eg = energyAndGradient(s, pert);
        CHECK(relErr(eg.energy, energyOf(s, pert)) < 1e-14);
        OneForm da(lat);
        for (auto& v : da)
            for (auto& c : v) c = rng.normal();
        SpinorPlusField<> dpsi(lat);
        for (auto& v : dpsi) v = randomSpinor(rng);
        const double analytic = innerProduct(eg.gradA, da) + innerProduct(eg.gradPsi, dpsi).real();
        const double fd = (energyOf(displaced(s, da, dpsi, eps), pert) - energyOf(displaced(s, da, dpsi, -eps), pert)) / (2 * eps);
        CHECK(std::abs(fd - analytic) <= 1e-6 * std::abs(analytic));

        // Each block separately, so an error in one cannot hide behind the other.
        const double fdA = (energyOf(displaced(s, da, SpinorPlusField<>(lat), eps), pert) -
                            energyOf(displaced(s, da, SpinorPlusField<>(lat), -eps), pert)) / (2 * eps);
        CHECK(std::abs(fdA - innerProduct(eg.gradA, da)) <= 1e-6 * std::abs(fdA));
    }
}

TEST_CASE("gradient at solutions and on the psi = 0 slice") {
    const Lattice lat({4, 4, 4, 4}, 1.0);
    const auto none = Perturbation::none(lat);
    const EnergyGradient flat = energyAndGradient({U1Connection::trivial(lat), SpinorPlusField<>(lat)}, none);
    CHECK(flat.energy == 0.0);
    CHECK(norm2(flat.gradA) == 0.0);
    CHECK(norm2(flat.gradPsi) == 0.0);

    // Irreducible constant solution of the perturbed equations with delta = (eps, 0, 0).
    const double e = 0.3;
    const SWState sol{U1Connection::trivial(lat), SpinorPlusField<>(lat, {0.0, std::sqrt(2 * e)})};
    const EnergyGradient g = energyAndGradient(sol, Perturbation::constant(lat, {e, 0.0, 0.0}));
    CHECK(g.energy < 1e-28);
    CHECK(std::sqrt(norm2(g.gradA)) < 1e-13);
    CHECK(std::sqrt(norm2(g.gradPsi)) < 1e-13);

    Rng rng(6);
    const SWState zeroPsi{U1Connection(bandLimitedOneForm(lat, {9, 0.3, 1, 6})), SpinorPlusField<>(lat)};
    CHECK(norm2(energyAndGradient(zeroPsi, none).gradPsi) == 0.0);
}

TEST_CASE("solver from an exact solution takes no steps") {
    const Lattice lat({4, 4, 4, 4}, 1.0);
    const SolveResult r = solve({U1Connection::trivial(lat), SpinorPlusField<>(lat)}, Perturbation::none(lat), {});
    CHECK(r.converged);
    CHECK(r.iterations == 0);
}

TEST_CASE("solver reaches a reducible solution on the flat torus") {
    const Lattice lat({8, 8, 8, 8}, 1.0);
    const SWState init = randomInitialState(lat, 42);
    SolverConfig cfg;
    const SolveResult r = solve(init, Perturbation::none(lat), cfg);
    CHECK(r.converged);
    CHECK(r.report.energy < 1e-16);
    CHECK(std::sqrt(r.report.maxPsiSq) <= 1e-4);
    CHECK(curvatureTwoFormNorm(r.final.A) <= 1e-6);
    for (std::size_t i = 1; i < r.energyHistory.size(); ++i) CHECK(r.energyHistory[i] <= r.energyHistory[i - 1]);
    const C0Check c0 = c0BoundCheck(r.final);
    CHECK(c0.satisfied);
    CHECK(c0.bound == 0.0);
}

TEST_CASE("solver with a constant perturbation finds the irreducible constant solution") {
    const Lattice lat({6, 6, 6, 6}, 1.0);
    const double e = 0.05;
    const Perturbation pert = Perturbation::constant(lat, {e, 0.0, 0.0});
    const SolveResult r = solve(randomInitialState(lat, 7), pert, {});
    REQUIRE(r.converged);
    // Integrating the curvature equation over the torus kills da, so the mean of sigma(psi)
    // must equal rho(i delta): mean (|z|^2 - |w|^2)/2 = -eps and mean z conj(w) = 0.
    double d = 0.0;
    Complex c{};
    for (const auto& v : r.final.psi) {
        d += (std::norm(v.z) - std::norm(v.w)) / 2.0;
        c += v.z * std::conj(v.w);
    }
    d /= static_cast<double>(lat.sites());
    c /= static_cast<double>(lat.sites());
    CHECK(std::abs(d + e) < 1e-7);
    CHECK(std::abs(c) < 1e-7);
}

TEST_CASE("solver reports non-convergence at the iteration cap") {
    const Lattice lat({4, 4, 4, 4}, 1.0);
    SolverConfig cfg;
    cfg.maxIterations = 3;
    const SWState init = randomInitialState(lat, 1);
    const SolveResult r = solve(init, Perturbation::none(lat), cfg);
    CHECK_FALSE(r.converged);
    CHECK(r.iterations == 3);
    CHECK(r.report.energy < residualReport(init, Perturbation::none(lat)).energy);
}

TEST_CASE("solver configuration is validated") {
    const Lattice lat({4, 4, 4, 4}, 1.0);
    SolverConfig cfg;
    cfg.stepSize = 0.0;
    CHECK_THROWS_AS(solve(randomInitialState(lat, 1), Perturbation::none(lat), cfg), std::invalid_argument);
    cfg = {};
    cfg.residualTolerance = -1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("C0 bound check") {
    const Lattice lat({4, 4, 4, 4}, 1.0);
    const C0Check zero = c0BoundCheck({U1Connection::trivial(lat), SpinorPlusField<>(lat)});
    CHECK(zero.maxPsiSq == 0.0);
    CHECK(zero.bound == 0.0);
    CHECK(zero.satisfied);
    const C0Check nonzero = c0BoundCheck({U1Connection::trivial(lat), SpinorPlusField<>(lat, {0.5, 0.0})});
    CHECK(nonzero.maxPsiSq == 0.25);
    CHECK_FALSE(nonzero.satisfied);
}
