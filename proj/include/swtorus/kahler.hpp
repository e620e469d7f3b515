#pragma once

// The canonical Spin_c structure of the flat Kahler torus. The coframe is paired as
// e2 = I(e1), e4 = I(e3), the Kahler form is omega = f1 = (e12 + e34)/2, and
// W+ = C (+) K^-1 with u0 = (1, 0) spanning the trivial summand and the unit frame of K^-1
// given by (0, 1). In this frame f = 2(f2 - i f3) acts as [[0, -4], [0, 0]] and
// fbar = 2(f2 + i f3) as [[0, 0], [4, 0]].

#include "swtorus/clifford.hpp"
#include "swtorus/dirac.hpp"
#include "swtorus/field.hpp"
#include "swtorus/sw_system.hpp"

#include <array>
#include <string>
#include <vector>

namespace swtorus {

// Self-dual coefficients of the standard Kahler form.
inline constexpr std::array<double, 3> kKahlerForm{1.0, 0.0, 0.0};

struct KahlerStructure {
    SelfDualField omega;
    static KahlerStructure standard(const Lattice& lat) { return {SelfDualField(lat, kKahlerForm)}; }
};

template <class C = Complex>
Mat2<C> rhoF() {
    using T = ComplexTraits<C>;
    return {{T::make(0), T::make(-4), T::make(0), T::make(0)}};
}

template <class C = Complex>
Mat2<C> rhoFbar() {
    using T = ComplexTraits<C>;
    return {{T::make(0), T::make(0), T::make(4), T::make(0)}};
}

// rho(omega), rho(beta) = beta rho(fbar) and rho(conj beta) = conj(beta) rho(f) on W+.
template <class C = Complex>
Mat2<C> rhoOmega() {
    return pauli<C>(1);
}
template <class C>
Mat2<C> rhoBeta(const C& beta) {
    return beta * rhoFbar<C>();
}
template <class C>
Mat2<C> rhoBetaBar(const C& beta) {
    return ComplexTraits<C>::conjugate(beta) * rhoF<C>();
}

template <class C = Complex>
SpinorPlus<C> u0() {
    return {ComplexTraits<C>::make(1), ComplexTraits<C>::make(0)};
}
// The K^-1 section with coefficient beta against the unit frame.
template <class C>
SpinorPlus<C> kMinusOneSection(const C& beta) {
    return {ComplexTraits<C>::make(0), beta};
}

struct KahlerSpinorSplit {
    ScalarField alpha;
    ScalarField beta;
};

KahlerSpinorSplit split(const SpinorPlusField<>& psi);
SpinorPlusField<> recombine(const KahlerSpinorSplit& s);

struct IdentityCheck {
    std::string name;
    bool exact;  // every sample agreed exactly
    int samples;
};

// The action table on u0 and K^-1, checked in exact arithmetic on the unit frame and on
// `samples` seeded random Gaussian-rational coefficients.
std::vector<IdentityCheck> actionTableCheck(int samples = 100, std::uint64_t seed = 1);

// sigma(psi) = rho[omegaCoeff i omega + f20 f + f02 fbar].
template <class C = Complex>
struct KahlerSigma {
    RealOf<C> omegaCoeff;
    C f20;
    C f02;
};

template <class C>
KahlerSigma<C> sigmaKahler(const C& alpha, const C& beta) {
    using T = ComplexTraits<C>;
    const RealOf<C> omegaCoeff = (T::norm2(beta) - T::norm2(alpha)) / RealOf<C>(2);
    const C quarter = T::fromReal(RealOf<C>(1) / RealOf<C>(4));
    return {omegaCoeff, -(quarter * alpha * T::conjugate(beta)), quarter * T::conjugate(alpha) * beta};
}

// rho applied to omegaCoeff i omega + f20 f + f02 fbar, as a full 2x2 matrix on W+.
template <class C>
Mat2<C> kahlerMatrix(const KahlerSigma<C>& k) {
    const C iOmega = ComplexTraits<C>::fromReal(k.omegaCoeff) * imagUnit<C>();
    return iOmega * rhoOmega<C>() + k.f20 * rhoF<C>() + k.f02 * rhoFbar<C>();
}

// Components of a real self-dual 2-form c1 f1 + c2 f2 + c3 f3, multiplied by i, in the
// basis {i omega, f, fbar}.
template <class C = Complex>
KahlerSigma<C> kahlerComponents(const std::array<RealOf<C>, 3>& c) {
    using T = ComplexTraits<C>;
    const C quarter = T::fromReal(RealOf<C>(1) / RealOf<C>(4));
    const C ic2 = imagUnit<C>() * T::fromReal(c[1]);
    return {c[0], quarter * (ic2 - T::fromReal(c[2])), quarter * (ic2 + T::fromReal(c[2]))};
}

struct WittenResiduals {
    double f20;   // || F^{2,0} + alpha conj(beta) / 4 ||
    double f02;   // || F^{0,2} - conj(alpha) beta / 4 ||
    double f11;   // || F^{1,1} - ((|beta|^2 - |alpha|^2) / 2) i omega ||, measured on the i omega coefficient
};

// Residuals of the form-type split of rho(F+) = sigma(psi) for F+ = i (c1 f1 + c2 f2 + c3 f3).
WittenResiduals wittenResiduals(const SelfDualField& c, const KahlerSpinorSplit& s);
// Same, with c taken from the plaquette curvature of the state's connection.
WittenResiduals wittenFormulasCheck(const SWState& state, const KahlerSpinorSplit& s);

struct U0HarmonicReport {
    double diracNorm;        // || D+_{A0} u0 ||
    double theoryNorm;       // || rho(*d omega) u0 || / 2
    double identityResidual; // || i D+_{A0} u0 + rho(*d omega) u0 ||
};

// u0 is the unit +i eigenvector of rho(omega / |omega|) at every site, normalised by the
// projector (1 - i rho) / 2 applied to (1, 0); A0 is the link connection that parallel
// transports u0 with a real positive overlap, the lattice form of the connection whose
// Dirac operator restricted to C u0 is d. For a constant omega this is u0 = (1, 0), A0 = 0.
// Throws std::invalid_argument if omega vanishes or points along -f1 at some site.
U0HarmonicReport u0HarmonicCheck(const SelfDualField& omega);

// Unit-norm Kahler form rotating in the (f1, f2) plane by angle eps sin(2 pi x1 / L1).
SelfDualField rotatingKahlerForm(const Lattice& lat, double eps);
// The standard form scaled by 1 + eps sin(2 pi x1 / L1).
SelfDualField scaledKahlerForm(const Lattice& lat, double eps);

// *d of a self-dual 2-form given by its coefficients, using central differences.
OneForm starDSelfDual(const SelfDualField& omega);

struct TaubesResidual {
    SpinorMinusField<> r1;
    HermitianField r2;
    HermitianField r2Kahler;  // the same residual assembled from the {i omega, f, fbar} split
    double pathDifference;    // max over sites of the entrywise difference between the two
};

// D_A psi and rho(F+_A) - rho(F+_{A0}) - r [sigma(psi) + i rho(omega)] with A0 trivial.
// Throws std::invalid_argument if r < 0 and std::logic_error if the two evaluations of r2
// disagree by more than 1e-12.
TaubesResidual taubesResidual(const SWState& state, double r);
// Pointwise version on explicit self-dual curvature coefficients.
TaubesResidual taubesResidual(const SelfDualField& c, const SpinorPlusField<>& psi, const SpinorMinusField<>& diracPsi,
                              double r);

// Coefficient of rho(F+_a) in D^2_A (alpha u0) = (nabla*_a nabla_a alpha) u0 + k rho(F+_a) alpha u0,
// with the link curvature convention of the Dirac module.
inline constexpr double kLeibnizCurvatureCoefficient = 1.0;

// || D^2_A (alpha u0) - [(nabla*_a nabla_a alpha) u0 + k rho(F+_a) alpha u0] ||. The term
// 2 <nabla_a alpha, nabla_{A0} u0> vanishes identically here because u0 is constant and A0 is
// trivial, so this check does not exercise it.
double leibnizIdentityCheck(const OneForm& a, const ScalarField& alpha,
                            double coefficient = kLeibnizCurvatureCoefficient);

struct AlphaBetaDiagnostic {
    double alphaNorm;
    double betaNorm;
    double productNorm;
};

AlphaBetaDiagnostic alphaBetaVanishingDiagnostic(const SWState& state);

}  // namespace swtorus
