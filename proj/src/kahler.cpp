#include "swtorus/kahler.hpp"

#include "swtorus/lattice.hpp"
#include "swtorus/random.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace swtorus {

namespace {

double siteNorm(const Lattice& lat, double sumSquares) { return std::sqrt(lat.measure() * sumSquares); }

GaussianRational randomGaussianRational(Rng& rng) {
    const auto part = [&rng] { return Rational(rng.uniformInt(-20, 20)) / Rational(rng.uniformInt(1, 20)); };
    const Rational re = part();
    return {re, part()};
}

Mat2<> toMat(const TracelessHermitian2<>& t) { return t.matrix(); }

double maxEntryDifference(const Mat2<>& a, const Mat2<>& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < 4; ++k) m = std::max(m, std::abs(a.m[k] - b.m[k]));
    return m;
}

}  // namespace

KahlerSpinorSplit split(const SpinorPlusField<>& psi) {
    KahlerSpinorSplit s{ScalarField(psi.lattice()), ScalarField(psi.lattice())};
    for (std::size_t x = 0; x < psi.size(); ++x) {
        s.alpha[x] = psi[x].z;
        s.beta[x] = psi[x].w;
    }
    return s;
}

SpinorPlusField<> recombine(const KahlerSpinorSplit& s) {
    requireSameLattice(s.alpha.lattice(), s.beta.lattice(), "recombine");
    SpinorPlusField<> psi(s.alpha.lattice());
    for (std::size_t x = 0; x < psi.size(); ++x) psi[x] = {s.alpha[x], s.beta[x]};
    return psi;
}

std::vector<IdentityCheck> actionTableCheck(int samples, std::uint64_t seed) {
    using G = GaussianRational;
    const G i = imagUnit<G>();
    const SpinorPlus<G> zero{};
    struct Entry {
        const char* name;
        bool (*holds)(const G& beta, const G& i, const SpinorPlus<G>& zero);
    };
    const Entry entries[] = {
        {"rho(omega) u0 = i u0",
         [](const G&, const G& i, const SpinorPlus<G>&) { return rhoOmega<G>() * u0<G>() == i * u0<G>(); }},
        {"rho(omega) beta = -i beta",
         [](const G& b, const G& i, const SpinorPlus<G>&) {
             return rhoOmega<G>() * kMinusOneSection(b) == -i * kMinusOneSection(b);
         }},
        {"rho(beta) u0 = 4 beta",
         [](const G& b, const G&, const SpinorPlus<G>&) {
             return rhoBeta(b) * u0<G>() == G(4) * kMinusOneSection(b);
         }},
        {"rho(beta) beta = 0",
         [](const G& b, const G&, const SpinorPlus<G>& z) { return rhoBeta(b) * kMinusOneSection(b) == z; }},
        {"rho(conj beta) u0 = 0",
         [](const G& b, const G&, const SpinorPlus<G>& z) { return rhoBetaBar(b) * u0<G>() == z; }},
        {"rho(conj beta) beta = -4 |beta|^2 u0",
         [](const G& b, const G&, const SpinorPlus<G>&) {
             return rhoBetaBar(b) * kMinusOneSection(b) == G(Rational(-4) * norm(b)) * u0<G>();
         }},
    };
    std::vector<G> betas{G(1)};
    Rng rng(seed);
    for (int s = 0; s < samples; ++s) betas.push_back(randomGaussianRational(rng));

    std::vector<IdentityCheck> out;
    for (const Entry& e : entries) {
        bool all = true;
        for (const G& b : betas) all = all && e.holds(b, i, zero);
        out.push_back({e.name, all, static_cast<int>(betas.size())});
    }
    return out;
}

WittenResiduals wittenResiduals(const SelfDualField& c, const KahlerSpinorSplit& s) {
    requireSameLattice(c.lattice(), s.alpha.lattice(), "wittenResiduals");
    double r20 = 0.0, r02 = 0.0, r11 = 0.0;
    for (std::size_t x = 0; x < c.size(); ++x) {
        const KahlerSigma<> f = kahlerComponents<Complex>(c[x]);
        const KahlerSigma<> rhs = sigmaKahler(s.alpha[x], s.beta[x]);
        r20 += std::norm(f.f20 - rhs.f20);
        r02 += std::norm(f.f02 - rhs.f02);
        r11 += (f.omegaCoeff - rhs.omegaCoeff) * (f.omegaCoeff - rhs.omegaCoeff);
    }
    const Lattice& lat = c.lattice();
    return {siteNorm(lat, r20), siteNorm(lat, r02), siteNorm(lat, r11)};
}

WittenResiduals wittenFormulasCheck(const SWState& state, const KahlerSpinorSplit& s) {
    return wittenResiduals(selfDualCurvature(state.A), s);
}

SelfDualField rotatingKahlerForm(const Lattice& lat, double eps) {
    SelfDualField w(lat);
    for (std::size_t x = 0; x < lat.sites(); ++x) {
        const double theta = eps * std::sin(2.0 * std::numbers::pi * lat.coord(x, 0) / lat.dim(0));
        w[x] = {std::cos(theta), std::sin(theta), 0.0};
    }
    return w;
}

SelfDualField scaledKahlerForm(const Lattice& lat, double eps) {
    SelfDualField w(lat);
    for (std::size_t x = 0; x < lat.sites(); ++x) {
        const double s = 1.0 + eps * std::sin(2.0 * std::numbers::pi * lat.coord(x, 0) / lat.dim(0));
        w[x] = {s * kKahlerForm[0], s * kKahlerForm[1], s * kKahlerForm[2]};
    }
    return w;
}

OneForm starDSelfDual(const SelfDualField& omega) {
    const Lattice& lat = omega.lattice();
    const TwoForm w = embed(omega);
    // Central derivatives of each 2-form component: dw[p][x][i] = D_i w_p(x).
    std::array<OneForm, 6> dw{OneForm(lat), OneForm(lat), OneForm(lat), OneForm(lat), OneForm(lat), OneForm(lat)};
    for (std::size_t p = 0; p < 6; ++p) {
        RealScalarField comp(lat);
        for (std::size_t x = 0; x < lat.sites(); ++x) comp[x] = w[x][p];
        dw[p] = d0(comp);
    }
    const auto comp = [&](int i, int j) { return static_cast<std::size_t>(pairIndex(i, j)); };
    // (dw)_{ijk} = D_i w_jk - D_j w_ik + D_k w_ij for i < j < k.
    const auto tau = [&](std::size_t x, int i, int j, int k) {
        return dw[comp(j, k)][x][static_cast<std::size_t>(i)] - dw[comp(i, k)][x][static_cast<std::size_t>(j)] +
               dw[comp(i, j)][x][static_cast<std::size_t>(k)];
    };
    // *e123 = e4, *e124 = -e3, *e134 = e2, *e234 = -e1.
    OneForm out(lat);
    for (std::size_t x = 0; x < lat.sites(); ++x) {
        out[x] = {-tau(x, 1, 2, 3), tau(x, 0, 2, 3), -tau(x, 0, 1, 3), tau(x, 0, 1, 2)};
    }
    return out;
}

U0HarmonicReport u0HarmonicCheck(const SelfDualField& omega) {
    const Lattice& lat = omega.lattice();
    SelfDualField unit(lat);
    SpinorPlusField<> u(lat);
    for (std::size_t x = 0; x < lat.sites(); ++x) {
        const auto& c = omega[x];
        const double n = std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);
        if (!(n > 0.0)) throw std::invalid_argument("u0HarmonicCheck: omega vanishes at a site");
        const std::array<double, 3> h{c[0] / n, c[1] / n, c[2] / n};
        if (1.0 + h[0] < 1e-12) throw std::invalid_argument("u0HarmonicCheck: omega points along -f1 at a site");
        unit[x] = h;
        const SpinorPlus<> v{(1.0 + h[0]) / 2.0, Complex(-h[2], -h[1]) / 2.0};
        u[x] = Complex(1.0 / std::sqrt(v.norm2())) * v;
    }
    LinkField links(lat);
    for (std::size_t x = 0; x < lat.sites(); ++x) {
        for (int mu = 0; mu < 4; ++mu) {
            const Complex p = inner(u[lat.shift(x, mu, 1)], u[x]);
            links[x][static_cast<std::size_t>(mu)] = std::conj(p) / std::abs(p);
        }
    }
    const SpinorMinusField<> du = diracPlus(links, u);
    const OneForm v = starDSelfDual(unit);
    SpinorMinusField<> rv(lat);
    for (std::size_t x = 0; x < lat.sites(); ++x) {
        for (int mu = 0; mu < 4; ++mu) {
            rv[x] += Complex(v[x][static_cast<std::size_t>(mu)]) * applyBlock<MinusTag>(plusToMinusBlock(mu + 1), u[x]);
        }
    }
    const SpinorMinusField<> identity = scaled(du, Complex(0.0, 1.0)) + rv;
    return {std::sqrt(norm2(du)), 0.5 * std::sqrt(norm2(rv)), std::sqrt(norm2(identity))};
}

TaubesResidual taubesResidual(const SelfDualField& c, const SpinorPlusField<>& psi, const SpinorMinusField<>& diracPsi,
                              double r) {
    if (!(r >= 0.0)) throw std::invalid_argument("taubesResidual: r must be non-negative");
    requireSameLattice(c.lattice(), psi.lattice(), "taubesResidual");
    const Lattice& lat = psi.lattice();
    TaubesResidual out{diracPsi, HermitianField(lat), HermitianField(lat), 0.0};
    // i rho(omega) = diag(-1, 1) for the standard form; rho(F+_{A0}) = 0 for the trivial A0.
    const TracelessHermitian2<> iRhoOmega{-1.0, 0.0};
    for (std::size_t x = 0; x < lat.sites(); ++x) {
        const TracelessHermitian2<> source = sigma(psi[x]) + iRhoOmega;
        const TracelessHermitian2<> direct = hermitianSelfDual<Complex>(c[x]) - TracelessHermitian2<>{r * source.d, r * source.c};
        const KahlerSigma<> f = kahlerComponents<Complex>(c[x]);
        const KahlerSigma<> s = sigmaKahler(psi[x].z, psi[x].w);
        const KahlerSigma<> diff{f.omegaCoeff - r * (s.omegaCoeff + 1.0), f.f20 - r * s.f20, f.f02 - r * s.f02};
        const Mat2<> viaSplit = kahlerMatrix(diff);
        out.r2[x] = direct;
        out.r2Kahler[x] = TracelessHermitian2<>::fromMatrix(viaSplit);
        out.pathDifference = std::max(out.pathDifference, maxEntryDifference(toMat(direct), viaSplit));
    }
    if (out.pathDifference > 1e-12) {
        throw std::logic_error("taubesResidual: the two evaluations of the curvature residual disagree");
    }
    return out;
}

TaubesResidual taubesResidual(const SWState& state, double r) {
    return taubesResidual(selfDualCurvature(state.A), state.psi, diracPlus(state.A, state.psi), r);
}

double leibnizIdentityCheck(const OneForm& a, const ScalarField& alpha, double coefficient) {
    requireSameLattice(a.lattice(), alpha.lattice(), "leibnizIdentityCheck");
    const U1Connection conn(a);
    const SelfDualField c = selfDualCurvature(conn);  // also guards against branch cuts
    const Lattice& lat = alpha.lattice();
    SpinorPlusField<> psi(lat);
    for (std::size_t x = 0; x < lat.sites(); ++x) psi[x] = alpha[x] * u0<Complex>();
    const SpinorPlusField<> lhs = diracMinus(conn, diracPlus(conn, psi));
    const ScalarField rough = connectionLaplacian(conn.links(), alpha);
    SpinorPlusField<> rhs = applySelfDualCurvature(c, psi, coefficient);
    for (std::size_t x = 0; x < lat.sites(); ++x) rhs[x] += rough[x] * u0<Complex>();
    return std::sqrt(norm2(lhs - rhs));
}

AlphaBetaDiagnostic alphaBetaVanishingDiagnostic(const SWState& state) {
    const KahlerSpinorSplit s = split(state.psi);
    const double a = std::sqrt(norm2(s.alpha));
    const double b = std::sqrt(norm2(s.beta));
    return {a, b, a * b};
}

}  // namespace swtorus
