#pragma once

// The perturbed Seiberg-Witten equations on the flat lattice torus:
//   D+_A psi = 0,   rho(F+_A + i delta) = sigma(psi),
// with F_A = i da. Both sides of the curvature equation are traceless hermitian on W+,
// so the residual is stored as a TracelessHermitian2 field.

#include "swtorus/dirac.hpp"
#include "swtorus/field.hpp"

#include <cstdint>
#include <vector>

namespace swtorus {

struct SWState {
    U1Connection A;
    SpinorPlusField<> psi;
};

struct Perturbation {
    SelfDualField delta;
    static Perturbation none(const Lattice& lat) { return {SelfDualField(lat)}; }
    static Perturbation constant(const Lattice& lat, const std::array<double, 3>& c) { return {SelfDualField(lat, c)}; }
};

struct SolverConfig {
    double stepSize = 1.0;  // initial trial step of each line search
    int maxIterations = 5000;
    double residualTolerance = 1e-8;  // converged iff energy < residualTolerance^2
    int gaugeFixEvery = 25;
    std::uint64_t seed = 42;
    // Alternate damped Gauss-Newton steps on the connection and the spinor, each using the
    // Fourier symbol of the linearisation at the mean connection, followed by an exact radial
    // line search on psi. When false, plain gradient descent with Armijo backtracking.
    bool precondition = true;
    int maxBacktracks = 60;

    void validate() const;
};

struct ResidualReport {
    double diracNorm = 0.0;
    double curvatureNorm = 0.0;
    double energy = 0.0;
    double maxPsiSq = 0.0;
    double c0Bound = 0.0;
};

using HermitianField = Field<TracelessHermitian2<>>;

struct SWResidual {
    SpinorMinusField<> r1;
    HermitianField r2;
};

// Fiberwise curvature residual rho(i (c + delta)) - sigma(psi) for self-dual coefficients c.
TracelessHermitian2<> curvatureResidual(const std::array<double, 3>& c, const std::array<double, 3>& delta,
                                        const SpinorPlus<>& psi);

SWResidual swResidual(const SWState& state, const Perturbation& pert);

// h^4-weighted norm of a traceless hermitian field under innerSu2.
double hermitianNorm(const HermitianField& r);

ResidualReport residualReport(const SWState& state, const Perturbation& pert);

// Gauge action of exp(i f): a -> a + (f(x+mu) - f(x)) / h, psi -> exp(-i f) psi.
SWState applyGauge(const SWState& state, const RealScalarField& f);

// Gauge-equivalent representative with codifferential(a) = 0 and each per-direction mean
// of a reduced into [0, 2 pi / (n_mu h)); a mean within 1e-9 of a period multiple is
// snapped to that multiple. Removes forward-difference exact parts, which are exactly the
// gauge directions of the link variables.
SWState coulombFix(const SWState& state);

struct EnergyGradient {
    double energy;
    OneForm gradA;
    SpinorPlusField<> gradPsi;
};

// Energy ||r1||^2 + ||r2||^2 and its L^2 gradient (Euclidean gradient divided by h^4) with
// respect to the generating 1-form a and to psi, where d/dt E(psi + t v) = Re<gradPsi, v>.
EnergyGradient energyAndGradient(const SWState& state, const Perturbation& pert);

struct SolveResult {
    SWState final;
    ResidualReport report;
    bool converged;
    int iterations;
    std::vector<double> energyHistory;  // energy after each accepted step, starting with the initial one
};

// Minimises E = ||D+_A psi||^2 + ||rho(F+_A + i delta) - sigma(psi)||^2. Accepted energies are
// non-increasing and recorded in energyHistory.
SolveResult solve(const SWState& init, const Perturbation& pert, const SolverConfig& cfg);

struct C0Check {
    double maxPsiSq;
    double bound;
    bool satisfied;
};

// |psi|^2 <= max(0, -2 s_min) with s = 0 on the flat torus. Only meaningful for solutions.
C0Check c0BoundCheck(const SWState& state, double tolerance = 1e-8);

// Seeded initial state: psi = 0.1 * unit-variance complex Gaussian per component,
// a = (0.1 / h) * standard Gaussian per component, drawn from one generator.
SWState randomInitialState(const Lattice& lat, std::uint64_t seed);

// Norm of the full curvature 2-form da (all six components).
double curvatureTwoFormNorm(const U1Connection& a);

}  // namespace swtorus
