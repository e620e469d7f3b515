#include "swtorus/sw_system.hpp"

#include "swtorus/random.hpp"
#include "swtorus/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace swtorus {

void SolverConfig::validate() const {
    if (!(stepSize > 0.0)) throw std::invalid_argument("stepSize must be positive");
    if (maxIterations < 0) throw std::invalid_argument("maxIterations must be non-negative");
    if (!(residualTolerance > 0.0)) throw std::invalid_argument("residualTolerance must be positive");
    if (gaugeFixEvery < 0) throw std::invalid_argument("gaugeFixEvery must be non-negative");
    if (maxBacktracks <= 0) throw std::invalid_argument("maxBacktracks must be positive");
}

TracelessHermitian2<> curvatureResidual(const std::array<double, 3>& c, const std::array<double, 3>& delta,
                                        const SpinorPlus<>& psi) {
    return hermitianSelfDual<Complex>({c[0] + delta[0], c[1] + delta[1], c[2] + delta[2]}) - sigma(psi);
}

namespace {

void requireConsistent(const SWState& state, const Perturbation& pert) {
    requireSameLattice(state.A.lattice(), state.psi.lattice(), "SWState");
    requireSameLattice(state.A.lattice(), pert.delta.lattice(), "Perturbation");
}

double siteNorm2(const TracelessHermitian2<>& r) { return r.d * r.d + std::norm(r.c); }

// Energy without gradients, for line searches.
double energyOnly(const SWState& state, const Perturbation& pert) {
    const SWResidual r = swResidual(state, pert);
    double s = 0.0;
    for (std::size_t x = 0; x < r.r1.size(); ++x) s += r.r1[x].norm2() + siteNorm2(r.r2[x]);
    return s * state.A.lattice().measure();
}

}  // namespace

SWResidual swResidual(const SWState& state, const Perturbation& pert) {
    requireConsistent(state, pert);
    const SelfDualField c = selfDualCurvature(state.A);
    SWResidual out{diracPlus(state.A, state.psi), HermitianField(state.A.lattice())};
    for (std::size_t x = 0; x < c.size(); ++x) out.r2[x] = curvatureResidual(c[x], pert.delta[x], state.psi[x]);
    return out;
}

double hermitianNorm(const HermitianField& r) {
    double s = 0.0;
    for (const auto& v : r) s += siteNorm2(v);
    return std::sqrt(s * r.lattice().measure());
}

ResidualReport residualReport(const SWState& state, const Perturbation& pert) {
    const SWResidual r = swResidual(state, pert);
    ResidualReport rep;
    rep.diracNorm = std::sqrt(norm2(r.r1));
    rep.curvatureNorm = hermitianNorm(r.r2);
    rep.energy = rep.diracNorm * rep.diracNorm + rep.curvatureNorm * rep.curvatureNorm;
    const C0Check c0 = c0BoundCheck(state);
    rep.maxPsiSq = c0.maxPsiSq;
    rep.c0Bound = c0.bound;
    return rep;
}

SWState applyGauge(const SWState& state, const RealScalarField& f) {
    const Lattice& lat = state.A.lattice();
    requireSameLattice(lat, f.lattice(), "applyGauge");
    const double h = lat.spacing();
    OneForm a = state.A.oneForm();
    SpinorPlusField<> psi = state.psi;
    for (std::size_t x = 0; x < lat.sites(); ++x) {
        for (int mu = 0; mu < 4; ++mu) a[x][static_cast<std::size_t>(mu)] += (f[lat.shift(x, mu, 1)] - f[x]) / h;
        psi[x] = std::polar(1.0, -f[x]) * psi[x];
    }
    return {U1Connection(std::move(a)), std::move(psi)};
}

SWState coulombFix(const SWState& state) {
    const Lattice& lat = state.A.lattice();
    const double h = lat.spacing();
    const OneForm& a = state.A.oneForm();

    // Solve sum_mu Dc_mu D+_mu f = -sum_mu Dc_mu a_mu, with Dc central and D+ forward.
    std::vector<Complex> div(lat.sites());
    const RealScalarField codiff = codifferential(a);
    for (std::size_t x = 0; x < lat.sites(); ++x) div[x] = codiff[x];  // = -sum Dc a
    const SpectralGrid grid(lat);
    std::vector<Complex> modes = grid.forward(div);
    for (std::size_t m = 0; m < modes.size(); ++m) {
        const auto k = grid.waveNumbers(m);
        Complex symbol{};
        bool allCorner = true;
        for (int mu = 0; mu < 4; ++mu) {
            if (grid.isCornerMode(m, mu)) continue;
            allCorner = false;
            const double km = k[static_cast<std::size_t>(mu)];
            symbol += Complex(0.0, std::sin(km)) * (std::polar(1.0, km) - 1.0);
        }
        modes[m] = allCorner ? Complex(0.0) : modes[m] * (h * h) / symbol;
    }
    const std::vector<Complex> solved = grid.inverse(modes);
    RealScalarField f(lat);
    for (std::size_t x = 0; x < lat.sites(); ++x) f[x] = solved[x].real();
    SWState fixed = applyGauge(state, f);

    // Reduce the harmonic part modulo the integral lattice 2 pi / (n_mu h).
    OneForm a2 = fixed.A.oneForm();
    SpinorPlusField<> psi = std::move(fixed.psi);
    const OneForm mean = harmonicPart(a2);
    for (int mu = 0; mu < 4; ++mu) {
        const auto um = static_cast<std::size_t>(mu);
        const double period = 2.0 * std::numbers::pi / lat.extent(mu);
        // A mean within round-off of a lattice point is snapped to it rather than wrapped
        // to the far end of the fundamental domain.
        const double q = mean[0][um] / period;
        const double shifts = std::abs(q - std::round(q)) < 1e-9 ? std::round(q) : std::floor(q);
        if (shifts == 0.0) continue;
        for (std::size_t x = 0; x < lat.sites(); ++x) {
            a2[x][um] -= shifts * period;
            psi[x] = std::polar(1.0, shifts * period * lat.coord(x, mu) * h) * psi[x];
        }
    }

    const RealScalarField check = codifferential(a2);
    double worst = 0.0, scale = 1.0;
    for (std::size_t x = 0; x < lat.sites(); ++x) {
        worst = std::max(worst, std::abs(check[x]));
        for (double v : a[x]) scale = std::max(scale, std::abs(v) * h);
    }
    if (!(worst <= 1e-10 * scale)) {
        throw SolverFailure("Coulomb gauge fixing left a divergence of " + std::to_string(worst), worst);
    }
    return {U1Connection(std::move(a2)), std::move(psi)};
}

EnergyGradient energyAndGradient(const SWState& state, const Perturbation& pert) {
    const SWResidual r = swResidual(state, pert);
    const Lattice& lat = state.A.lattice();
    const double h = lat.spacing();
    const LinkField& u = state.A.links();

    double e = 0.0;
    for (std::size_t x = 0; x < lat.sites(); ++x) e += r.r1[x].norm2() + siteNorm2(r.r2[x]);
    e *= lat.measure();

    SpinorPlusField<> gradPsi = diracMinus(state.A, r.r1);
    for (std::size_t x = 0; x < lat.sites(); ++x) {
        gradPsi[x] = Complex(2.0) * (gradPsi[x] - r.r2[x].matrix() * state.psi[x]);
    }

    OneForm gradA(lat);
    // Dirac term: a_mu(y) enters r1(y) through U psi(y+mu) and r1(y+mu) through conj(U) psi(y).
    std::array<Mat2<>, 4> b;
    for (int mu = 0; mu < 4; ++mu) b[static_cast<std::size_t>(mu)] = plusToMinusBlock<Complex>(mu + 1);
    for (std::size_t y = 0; y < lat.sites(); ++y) {
        for (int mu = 0; mu < 4; ++mu) {
            const auto m = static_cast<std::size_t>(mu);
            const std::size_t fwd = lat.shift(y, mu, 1);
            const SpinorMinus<> t1 = applyBlock<MinusTag>(b[m], u[y][m] * state.psi[fwd]);
            const SpinorMinus<> t2 = applyBlock<MinusTag>(b[m], std::conj(u[y][m]) * state.psi[y]);
            gradA[y][m] = -(inner(t1, r.r1[y]) + inner(t2, r.r1[fwd])).imag();
        }
    }

    // Curvature term: dE/dc = 2 (-d, -Im e, Re e) per site, pulled back through the
    // self-dual projection, the clover average and the plaquette sums.
    TwoForm g(lat);
    for (std::size_t x = 0; x < lat.sites(); ++x) {
        const double s1 = -2.0 * r.r2[x].d, s2 = -2.0 * r.r2[x].c.imag(), s3 = 2.0 * r.r2[x].c.real();
        g[x] = {s1, s2, s3, s3, -s2, s1};
    }
    const double inv4h = 1.0 / (4.0 * h);
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            const auto p = static_cast<std::size_t>(pairIndex(i, j));
            const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
            RealScalarField clover(lat);
            for (std::size_t y = 0; y < lat.sites(); ++y) {
                const std::size_t yi = lat.shift(y, i, 1), yj = lat.shift(y, j, 1);
                clover[y] = g[y][p] + g[yi][p] + g[yj][p] + g[lat.shift(yi, j, 1)][p];
            }
            for (std::size_t z = 0; z < lat.sites(); ++z) {
                gradA[z][ui] += (clover[z] - clover[lat.shift(z, j, -1)]) * inv4h;
                gradA[z][uj] += (clover[lat.shift(z, i, -1)] - clover[z]) * inv4h;
            }
        }
    }
    return {e, std::move(gradA), std::move(gradPsi)};
}

namespace {

// Solves the 4x4 system h x = b by Gaussian elimination with partial pivoting.
std::array<Complex, 4> solve4(std::array<std::array<Complex, 4>, 4> h, std::array<Complex, 4> b) {
    for (std::size_t c = 0; c < 4; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < 4; ++r)
            if (std::abs(h[r][c]) > std::abs(h[piv][c])) piv = r;
        std::swap(h[c], h[piv]);
        std::swap(b[c], b[piv]);
        for (std::size_t r = c + 1; r < 4; ++r) {
            const Complex f = h[r][c] / h[c][c];
            for (std::size_t k = c; k < 4; ++k) h[r][k] -= f * h[c][k];
            b[r] -= f * b[c];
        }
    }
    std::array<Complex, 4> x{};
    for (std::size_t c = 4; c-- > 0;) {
        Complex s = b[c];
        for (std::size_t k = c + 1; k < 4; ++k) s -= h[c][k] * x[k];
        x[c] = s / h[c][c];
    }
    return x;
}

// Approximate inverse Hessians applied in the plane-wave basis.
//
// Spinors: (2 (mu + L))^-1 with L = sum sin^2(k + h abar) / h^2, the symbol of D-D+ for the
// constant part abar of the connection.
//
// Connection: (2 (mu + M^H M))^-1, where M(k) maps a plane wave of a to the self-dual part of
// its clover curvature. The clover curvature is linear in a,
//   F_ij(k) = (i / 2h) [sin k_i (1 + e^{-i k_j}) a_j - sin k_j (1 + e^{-i k_i}) a_i],
// so M^H M is the exact Hessian of the curvature term. The Dirac term adds the Gauss-Newton
// diagonal (|psi(y)|^2 + |psi(y + mu)|^2) / 4 per link, replaced here by its mean psiWeight;
// it is what keeps directions invisible to the clover curvature from taking 1/mu steps.
class Preconditioner {
public:
    explicit Preconditioner(const Lattice& lat) : lat_(lat), grid_(lat), buf_(lat.sites()) {}

    OneForm apply(const OneForm& g, double mu, double psiWeight) {
        const double h = lat_.spacing();
        std::array<std::vector<Complex>, 4> modes;
        for (std::size_t c = 0; c < 4; ++c) {
            for (std::size_t x = 0; x < lat_.sites(); ++x) buf_[x] = g[x][c];
            modes[c] = grid_.forward(buf_);
        }
        const Complex iOver2h(0.0, 0.5 / h);
        for (std::size_t m = 0; m < lat_.sites(); ++m) {
            const auto k = grid_.waveNumbers(m);
            std::array<double, 4> sn{};
            std::array<Complex, 4> q{};
            for (std::size_t d = 0; d < 4; ++d) {
                sn[d] = std::sin(k[d]);
                q[d] = 1.0 + std::polar(1.0, -k[d]);
            }
            // Rows of F_ij in the a-basis, then the self-dual combinations.
            std::array<std::array<Complex, 4>, 6> f{};
            for (int i = 0; i < 4; ++i) {
                for (int j = i + 1; j < 4; ++j) {
                    auto& row = f[static_cast<std::size_t>(pairIndex(i, j))];
                    const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
                    row[uj] += iOver2h * sn[ui] * q[uj];
                    row[ui] -= iOver2h * sn[uj] * q[ui];
                }
            }
            std::array<std::array<Complex, 4>, 3> sd{};
            for (std::size_t c = 0; c < 4; ++c) {
                const std::array<Complex, 6> col{f[0][c], f[1][c], f[2][c], f[3][c], f[4][c], f[5][c]};
                const auto p = projectSelfDual(col);
                for (std::size_t r = 0; r < 3; ++r) sd[r][c] = p[r];
            }
            std::array<std::array<Complex, 4>, 4> hess{};
            for (std::size_t r = 0; r < 4; ++r) {
                for (std::size_t c = 0; c < 4; ++c) {
                    Complex s = r == c ? Complex(mu + psiWeight) : Complex(0.0);
                    for (std::size_t t = 0; t < 3; ++t) s += std::conj(sd[t][r]) * sd[t][c];
                    hess[r][c] = 2.0 * s;
                }
            }
            const auto x = solve4(hess, {modes[0][m], modes[1][m], modes[2][m], modes[3][m]});
            for (std::size_t c = 0; c < 4; ++c) modes[c][m] = x[c];
        }
        OneForm out(lat_);
        for (std::size_t c = 0; c < 4; ++c) {
            const auto res = grid_.inverse(modes[c]);
            for (std::size_t x = 0; x < lat_.sites(); ++x) out[x][c] = res[x].real();
        }
        return out;
    }

    SpinorPlusField<> apply(const SpinorPlusField<>& g, const std::array<double, 4>& abar, double mu) {
        SpinorPlusField<> out(lat_);
        for (std::size_t x = 0; x < lat_.sites(); ++x) buf_[x] = g[x].z;
        auto res = filter(abar, mu);
        for (std::size_t x = 0; x < lat_.sites(); ++x) out[x].z = res[x];
        for (std::size_t x = 0; x < lat_.sites(); ++x) buf_[x] = g[x].w;
        res = filter(abar, mu);
        for (std::size_t x = 0; x < lat_.sites(); ++x) out[x].w = res[x];
        return out;
    }

private:
    std::vector<Complex> filter(const std::array<double, 4>& abar, double mu) {
        std::vector<Complex> modes = grid_.forward(buf_);
        const double h = lat_.spacing();
        for (std::size_t m = 0; m < modes.size(); ++m) {
            const auto k = grid_.waveNumbers(m);
            double symbol = 0.0;
            for (std::size_t d = 0; d < 4; ++d) {
                const double s = std::sin(k[d] + h * abar[d]);
                symbol += s * s;
            }
            modes[m] /= 2.0 * (mu + symbol / (h * h));
        }
        return grid_.inverse(modes);
    }

    Lattice lat_;
    SpectralGrid grid_;
    std::vector<Complex> buf_;
};

SWState step(const SWState& s, const OneForm& da, const SpinorPlusField<>& dpsi, double t) {
    OneForm a = s.A.oneForm();
    SpinorPlusField<> psi = s.psi;
    for (std::size_t x = 0; x < a.size(); ++x) {
        for (std::size_t c = 0; c < 4; ++c) a[x][c] += t * da[x][c];
        psi[x] += Complex(t) * dpsi[x];
    }
    return {U1Connection(std::move(a)), std::move(psi)};
}

double trialEnergy(const SWState& s, const Perturbation& pert) {
    try {
        return energyOnly(s, pert);
    } catch (const BranchCutError&) {
        return std::numeric_limits<double>::infinity();
    }
}

// Coefficients e[k] of t^k in E(psi + t dpsi) with the connection held fixed. The Dirac
// residual is affine in t and the curvature residual quadratic, so E is an exact quartic.
std::array<double, 5> spinorLineQuartic(const SWState& s, const SpinorPlusField<>& dpsi, const Perturbation& pert) {
    const SWResidual r0 = swResidual(s, pert);
    const SWResidual rp = swResidual(step(s, OneForm(s.A.lattice()), dpsi, 1.0), pert);
    const SWResidual rm = swResidual(step(s, OneForm(s.A.lattice()), dpsi, -1.0), pert);
    const auto dot = [](const TracelessHermitian2<>& x, const TracelessHermitian2<>& y) {
        return x.d * y.d + (x.c * std::conj(y.c)).real();
    };
    std::array<double, 5> e{};
    for (std::size_t x = 0; x < r0.r1.size(); ++x) {
        const SpinorMinus<> b1 = Complex(0.5) * (rp.r1[x] - rm.r1[x]);
        e[0] += r0.r1[x].norm2();
        e[1] += 2.0 * inner(r0.r1[x], b1).real();
        e[2] += b1.norm2();
        const TracelessHermitian2<>& a = r0.r2[x];
        const TracelessHermitian2<> b{0.5 * (rp.r2[x].d - rm.r2[x].d), 0.5 * (rp.r2[x].c - rm.r2[x].c)};
        const TracelessHermitian2<> c{0.5 * (rp.r2[x].d + rm.r2[x].d) - a.d, 0.5 * (rp.r2[x].c + rm.r2[x].c) - a.c};
        e[0] += dot(a, a);
        e[1] += 2.0 * dot(a, b);
        e[2] += dot(b, b) + 2.0 * dot(a, c);
        e[3] += 2.0 * dot(b, c);
        e[4] += dot(c, c);
    }
    for (double& v : e) v *= s.A.lattice().measure();
    return e;
}

// The positive t minimising the quartic, found among the real roots of its derivative.
// Returns 0 if the quartic does not decrease for t > 0.
double quarticMinimiser(const std::array<double, 5>& e) {
    const auto value = [&](double t) { return e[0] + t * (e[1] + t * (e[2] + t * (e[3] + t * e[4]))); };
    const auto slope = [&](double t) { return e[1] + t * (2.0 * e[2] + t * (3.0 * e[3] + t * 4.0 * e[4])); };
    if (!(e[1] < 0.0)) return 0.0;
    // E' < 0 at 0 and E' -> +inf when e4 > 0: bracket the first sign change, then bisect.
    double lo = 0.0, hi = 1.0;
    int grow = 0;
    while (slope(hi) < 0.0) {
        lo = hi;
        hi *= 2.0;
        if (++grow > 200) return lo;
    }
    for (int k = 0; k < 200 && hi - lo > 1e-15 * hi; ++k) {
        const double mid = 0.5 * (lo + hi);
        (slope(mid) < 0.0 ? lo : hi) = mid;
    }
    const double t = 0.5 * (lo + hi);
    return value(t) <= e[0] ? t : 0.0;
}

}  // namespace

SolveResult solve(const SWState& init, const Perturbation& pert, const SolverConfig& cfg) {
    cfg.validate();
    requireConsistent(init, pert);
    const Lattice& lat = init.A.lattice();
    const double h2 = lat.spacing() * lat.spacing();
    const double target = cfg.residualTolerance * cfg.residualTolerance;
    constexpr double kArmijo = 1e-4;
    const double muMin = 1e-14 / h2, muMax = 1e14 / h2;

    SWState state = init;
    EnergyGradient eg = energyAndGradient(state, pert);
    std::vector<double> history{eg.energy};
    Preconditioner pre(lat);
    int iter = 0;

    // Backtracking Armijo search along (da, dpsi) from the current state. Returns the
    // number of halvings used; `state`, `eg` are updated to the accepted point.
    const auto lineSearch = [&](const OneForm& da, const SpinorPlusField<>& dpsi) {
        const double slope = innerProduct(eg.gradA, da) + innerProduct(eg.gradPsi, dpsi).real();
        if (!(slope < 0.0)) return -1;
        double t = cfg.stepSize;
        int backtracks = 0;
        SWState trial = step(state, da, dpsi, t);
        double e = trialEnergy(trial, pert);
        while (!(e <= eg.energy + kArmijo * t * slope)) {
            if (++backtracks > cfg.maxBacktracks) {
                std::ostringstream os;
                os << "line search failed to decrease the energy " << eg.energy << " after " << cfg.maxBacktracks
                   << " backtracks at iteration " << iter;
                throw SolverFailure(os.str(), std::sqrt(eg.energy));
            }
            t *= 0.5;
            trial = step(state, da, dpsi, t);
            e = trialEnergy(trial, pert);
        }
        if (e > eg.energy) throw std::logic_error("accepted step increased the energy");
        state = std::move(trial);
        eg = energyAndGradient(state, pert);
        return backtracks;
    };
    const auto adapt = [&](double mu, int backtracks) {
        if (backtracks < 0) return mu;
        return backtracks == 0 ? std::max(mu / 3.0, muMin) : std::min(mu * std::pow(2.0, backtracks), muMax);
    };

    // The connection and the spinor are updated in alternating blocks, each with its own
    // damping: near the reducible solutions the spinor sees an energy that is quartic along
    // ker D+, so its damping must follow |psi|^2 down, while the connection stays quadratic.
    double muA = 1.0 / h2, muPsi = 1.0 / h2;
    while (eg.energy >= target && iter < cfg.maxIterations) {
        const double before = eg.energy;
        if (cfg.precondition) {
            double psiWeight = 0.0;
            for (const auto& v : state.psi) psiWeight += v.norm2();
            psiWeight /= 2.0 * static_cast<double>(lat.sites());
            muA = adapt(muA, lineSearch(scaled(pre.apply(eg.gradA, muA, psiWeight), -1.0), SpinorPlusField<>(lat)));
            if (eg.energy >= target) {
                const OneForm abar = harmonicPart(state.A.oneForm());
                const SpinorPlusField<> dpsi = scaled(pre.apply(eg.gradPsi, abar[0], muPsi), Complex(-1.0));
                // The energy along a spinor direction is an exact quartic, so the step is taken at
                // its minimiser and the damping rescaled by the step length it implied. This is
                // what resolves the degenerate quartic tail when psi lies in ker D+.
                const double t = quarticMinimiser(spinorLineQuartic(state, dpsi, pert));
                SWState trial = step(state, OneForm(lat), dpsi, t);
                if (t > 0.0 && trialEnergy(trial, pert) <= eg.energy) {
                    state = std::move(trial);
                    eg = energyAndGradient(state, pert);
                    muPsi = std::clamp(muPsi / std::clamp(t, 0.125, 8.0), muMin, muMax);
                } else {
                    muPsi = adapt(muPsi, lineSearch(OneForm(lat), dpsi));
                }
                // Radial step psi -> (1 - t) psi at the quartic's minimiser. The shrink is capped so
                // psi never lands exactly on 0, which is a critical point the gradient cannot leave
                // when a perturbation makes the irreducible solutions the minima.
                const SpinorPlusField<> radial = scaled(state.psi, Complex(-1.0));
                const double tr = std::min(quarticMinimiser(spinorLineQuartic(state, radial, pert)), 0.9);
                SWState shrunk = step(state, OneForm(lat), radial, tr);
                if (tr > 0.0 && trialEnergy(shrunk, pert) < eg.energy) {
                    state = std::move(shrunk);
                    eg = energyAndGradient(state, pert);
                }
            }
        } else {
            lineSearch(scaled(eg.gradA, -1.0), scaled(eg.gradPsi, Complex(-1.0)));
        }
        ++iter;
        if (cfg.gaugeFixEvery > 0 && iter % cfg.gaugeFixEvery == 0) {
            SWState fixed = coulombFix(state);
            // Keep the accepted energies exactly monotone: gauge fixing may only move the
            // energy by round-off, and such a move upward is simply not adopted.
            if (energyOnly(fixed, pert) <= eg.energy) {
                state = std::move(fixed);
                eg = energyAndGradient(state, pert);
            }
        }
        history.push_back(eg.energy);
        if (eg.energy == before && eg.energy >= target) break;  // stationary to machine precision
    }

    return {state, residualReport(state, pert), eg.energy < target, iter, std::move(history)};
}

C0Check c0BoundCheck(const SWState& state, double tolerance) {
    double m = 0.0;
    for (const auto& v : state.psi) m = std::max(m, v.norm2());
    const double bound = std::max(0.0, -2.0 * kScalarCurvature);
    return {m, bound, m <= bound + tolerance};
}

SWState randomInitialState(const Lattice& lat, std::uint64_t seed) {
    Rng rng(seed);
    const double s = 0.1 / std::sqrt(2.0);
    SpinorPlusField<> psi(lat);
    for (auto& v : psi) {
        const Complex z = s * rng.complexNormal();
        const Complex w = s * rng.complexNormal();
        v = {z, w};
    }
    OneForm a(lat);
    const double sa = 0.1 / lat.spacing();
    for (auto& v : a)
        for (auto& c : v) c = sa * rng.normal();
    return {U1Connection(std::move(a)), std::move(psi)};
}

double curvatureTwoFormNorm(const U1Connection& a) { return std::sqrt(norm2(curvature(a))); }

}  // namespace swtorus
