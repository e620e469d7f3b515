#include "doctest.h"
#include "test_support.hpp"

#include "swtorus/dirac.hpp"
#include "swtorus/random.hpp"

#include <Eigen/Sparse>

#include <cmath>
#include <numbers>

using namespace swtorus;
using namespace testing_support;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr Complex I{0.0, 1.0};

Lattice torus(int n, double length = kTwoPi) { return Lattice({n, n, n, n}, length / n); }

SpinorPlusField<> randomSpinorField(const Lattice& lat, Rng& rng) {
    SpinorPlusField<> psi(lat);
    for (auto& v : psi) v = randomSpinor(rng);
    return psi;
}

SpinorMinusField<> randomMinusField(const Lattice& lat, Rng& rng) {
    SpinorMinusField<> phi(lat);
    for (auto& v : phi) v = {rng.complexNormal(), rng.complexNormal()};
    return phi;
}

OneForm randomOneForm(const Lattice& lat, Rng& rng, double scale) {
    OneForm a(lat);
    for (auto& v : a)
        for (auto& c : v) c = scale * rng.normal();
    return a;
}

// Bottom-left (W+ to W-) blocks of the four displayed Clifford matrices, typed in by hand.
Eigen::Matrix2cd displayedPlusToMinus(int mu) {
    Eigen::Matrix2cd m;
    switch (mu) {
        case 0: m << -1.0, 0.0, 0.0, -1.0; break;
        case 1: m << I, 0.0, 0.0, -I; break;
        case 2: m << 0.0, -1.0, 1.0, 0.0; break;
        default: m << 0.0, -I, -I, 0.0; break;
    }
    return m;
}

// Independently assembled sparse matrix of D+ acting on (site, component) vectors.
Eigen::SparseMatrix<Complex> assembleDiracPlus(const U1Connection& a) {
    const Lattice& lat = a.lattice();
    const auto n = static_cast<Eigen::Index>(2 * lat.sites());
    std::vector<Eigen::Triplet<Complex>> triplets;
    const double c = 1.0 / (2.0 * lat.spacing());
    for (std::size_t x = 0; x < lat.sites(); ++x) {
        for (int mu = 0; mu < 4; ++mu) {
            const Eigen::Matrix2cd b = displayedPlusToMinus(mu);
            const std::size_t fwd = lat.shift(x, mu, 1), bwd = lat.shift(x, mu, -1);
            const Complex uf = std::polar(1.0, lat.spacing() * a.oneForm()[x][static_cast<std::size_t>(mu)]);
            const Complex ub = std::polar(1.0, -lat.spacing() * a.oneForm()[bwd][static_cast<std::size_t>(mu)]);
            for (int r = 0; r < 2; ++r) {
                for (int s = 0; s < 2; ++s) {
                    const auto row = static_cast<Eigen::Index>(2 * x) + r;
                    triplets.emplace_back(row, static_cast<Eigen::Index>(2 * fwd) + s, c * b(r, s) * uf);
                    triplets.emplace_back(row, static_cast<Eigen::Index>(2 * bwd) + s, -c * b(r, s) * ub);
                }
            }
        }
    }
    Eigen::SparseMatrix<Complex> m(n, n);
    m.setFromTriplets(triplets.begin(), triplets.end());
    return m;
}

// Links of a constant field strength F12 = b on the torus, with the flux quantum folded
// into the wrap-around links along direction 1.
LinkField constantFluxLinks(const Lattice& lat, int fluxQuanta, double& b) {
    const double h = lat.spacing();
    const int n1 = lat.dim(0), n2 = lat.dim(1);
    b = kTwoPi * fluxQuanta / (n1 * n2 * h * h);
    LinkField u = trivialLinks(lat);
    for (std::size_t x = 0; x < lat.sites(); ++x) {
        const int x1 = lat.coord(x, 0), x2 = lat.coord(x, 1);
        u[x][1] = std::polar(1.0, b * h * h * x1);
        if (x1 == n1 - 1) u[x][0] = std::polar(1.0, -b * h * h * n1 * x2);
    }
    return u;
}

// Fields vary along x1 and x2 only, so the thin directions can stay at four sites. Their
// physical extent shrinks with h, so the norm is divided by the volume to give an RMS value.
double weitzenbockRms(int n, std::uint64_t seed) {
    const Lattice lat({n, n, 4, 4}, kTwoPi / n);
    const U1Connection a(bandLimitedOneForm(lat, {seed, 0.5, 1, 6, 2}));
    const SpinorPlusField<> psi = bandLimitedSpinor(lat, {seed + 1, 1.0, 1, 6, 2});
    double volume = 1.0;
    for (int mu = 0; mu < 4; ++mu) volume *= lat.extent(mu);
    return weitzenbockResidual(a, psi).norm / std::sqrt(volume);
}

}  // namespace

TEST_CASE("U1 connection links have unit modulus") {
    Rng rng(1);
    const Lattice lat = torus(4);
    const U1Connection a(randomOneForm(lat, rng, 2.0));
    for (const auto& v : a.links())
        for (const Complex& u : v) CHECK(std::abs(std::abs(u) - 1.0) < 1e-14);
    const U1Connection t = U1Connection::trivial(lat);
    CHECK(t.links() == trivialLinks(lat));
}

TEST_CASE("covariant derivative") {
    const Lattice lat = torus(8);
    const U1Connection triv = U1Connection::trivial(lat);
    const SpinorPlusField<> constant(lat, {Complex(1.0, 2.0), Complex(-0.5, 0.0)});
    CHECK(norm2(covariantDerivative(triv, constant, 2)) == 0.0);
    CHECK_THROWS_AS(covariantDerivative(triv, constant, 0), std::invalid_argument);
    CHECK_THROWS_AS(covariantDerivative(triv, SpinorPlusField<>(torus(4)), 1), std::invalid_argument);

    // Plane wave along x3: the error against i kappa psi shrinks at second order.
    const auto planeWaveError = [](int n) {
        const Lattice l = torus(n);
        const double kappa = kTwoPi / l.extent(2);
        SpinorPlusField<> psi(l);
        for (std::size_t x = 0; x < l.sites(); ++x) {
            const Complex e = std::polar(1.0, kappa * l.coord(x, 2) * l.spacing());
            psi[x] = {e, 2.0 * e};
        }
        const auto d = covariantDerivative(U1Connection::trivial(l), psi, 3);
        double err = 0.0;
        for (std::size_t x = 0; x < l.sites(); ++x) {
            err = std::max(err, std::abs(d[x].z - I * kappa * psi[x].z));
            err = std::max(err, std::abs(d[x].w - I * kappa * psi[x].w));
        }
        return err;
    };
    const double p = std::log2(planeWaveError(8) / planeWaveError(16));
    CHECK(p >= 1.7);
    CHECK(p <= 2.3);
}

TEST_CASE("gauge covariance of the covariant derivative and Dirac operator") {
    Rng rng(2);
    const Lattice lat({4, 6, 4, 5}, 0.3);
    const U1Connection a(randomOneForm(lat, rng, 1.0));
    const SpinorPlusField<> psi = randomSpinorField(lat, rng);
    RealScalarField f(lat);
    for (auto& v : f) v = rng.uniform(-3, 3);
    const LinkField u2 = gaugeTransformLinks(a.links(), f);
    SpinorPlusField<> psi2(lat);
    for (std::size_t x = 0; x < lat.sites(); ++x) psi2[x] = std::polar(1.0, -f[x]) * psi[x];

    const auto dpsi = diracPlus(a, psi);
    const auto dpsi2 = diracPlus(u2, psi2);
    double err = 0.0;
    for (std::size_t x = 0; x < lat.sites(); ++x) {
        const Complex g = std::polar(1.0, -f[x]);
        err = std::max(err, std::abs(dpsi2[x].z - g * dpsi[x].z) + std::abs(dpsi2[x].w - g * dpsi[x].w));
    }
    CHECK(err < 1e-13);
    for (int mu = 1; mu <= 4; ++mu) {
        const auto c1 = covariantDerivative(a, psi, mu);
        const auto c2 = covariantDerivative(u2, psi2, mu);
        double e = 0.0;
        for (std::size_t x = 0; x < lat.sites(); ++x)
            e = std::max(e, std::abs(c2[x].z - std::polar(1.0, -f[x]) * c1[x].z));
        CHECK(e < 1e-13);
    }
}

TEST_CASE("Dirac operator examples") {
    const Lattice lat = torus(6);
    const U1Connection triv = U1Connection::trivial(lat);
    const SpinorPlusField<> u0(lat, {1.0, 0.0});
    CHECK(diracPlus(triv, u0) == SpinorMinusField<>(lat));
    CHECK(diracMinus(triv, SpinorMinusField<>(lat, {Complex(0.3, 1.0), 2.0})) == SpinorPlusField<>(lat));

    // D-D+ of a plane wave equals |kappa|^2 psi up to O(h^2).
    const auto error = [](int n) {
        const Lattice l = torus(n);
        const double k1 = kTwoPi / l.extent(0), k4 = kTwoPi / l.extent(3);
        SpinorPlusField<> psi(l);
        for (std::size_t x = 0; x < l.sites(); ++x) {
            const Complex e = std::polar(1.0, (k1 * l.coord(x, 0) + k4 * l.coord(x, 3)) * l.spacing());
            psi[x] = {e, -I * e};
        }
        const auto lap = diracMinus(U1Connection::trivial(l), diracPlus(U1Connection::trivial(l), psi));
        double err = 0.0;
        for (std::size_t x = 0; x < l.sites(); ++x)
            err = std::max(err, std::abs(lap[x].z - (k1 * k1 + k4 * k4) * psi[x].z));
        return err;
    };
    const double p = std::log2(error(8) / error(16));
    CHECK(p >= 1.7);
    CHECK(p <= 2.3);
}

TEST_CASE("Dirac operator matches a sparse-matrix assembly") {
    const Lattice lat = torus(6);
    const U1Connection a(bandLimitedOneForm(lat, {7, 0.8, 1, 6}));
    const SpinorPlusField<> psi = bandLimitedSpinor(lat, {8, 1.0, 1, 6});
    Eigen::VectorXcd v(2 * lat.sites());
    for (std::size_t x = 0; x < lat.sites(); ++x) {
        v(static_cast<Eigen::Index>(2 * x)) = psi[x].z;
        v(static_cast<Eigen::Index>(2 * x + 1)) = psi[x].w;
    }
    const Eigen::VectorXcd expected = assembleDiracPlus(a) * v;
    const auto got = diracPlus(a, psi);
    double diff = 0.0;
    for (std::size_t x = 0; x < lat.sites(); ++x) {
        diff += std::norm(got[x].z - expected(static_cast<Eigen::Index>(2 * x)));
        diff += std::norm(got[x].w - expected(static_cast<Eigen::Index>(2 * x + 1)));
    }
    const double scale = expected.squaredNorm();
    CHECK(std::sqrt(diff / scale) < 1e-12);
    CHECK(relErr(std::sqrt(norm2(got) / lat.measure()), std::sqrt(scale)) < 1e-12);
}

TEST_CASE("D- is the adjoint of D+ and D-D+ is nonnegative") {
    Rng rng(3);
    const Lattice lat({4, 5, 6, 4}, 0.41);
    for (int s = 0; s < 5; ++s) {
        const U1Connection a(randomOneForm(lat, rng, 2.0));
        const auto psi = randomSpinorField(lat, rng);
        const auto phi = randomMinusField(lat, rng);
        const Complex lhs = innerProduct(diracPlus(a, psi), phi);
        const Complex rhs = innerProduct(psi, diracMinus(a, phi));
        CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(lhs)));
        const Complex q = innerProduct(diracMinus(a, diracPlus(a, psi)), psi);
        CHECK(q.real() >= -1e-12 * norm2(psi));
    }
}

TEST_CASE("curvature from plaquettes") {
    const Lattice lat = torus(8);
    SUBCASE("branch cut guard") {
        OneForm big(lat);
        for (auto& v : big) v[0] = 0.0;
        for (std::size_t x = 0; x < lat.sites(); ++x) big[x][1] = (lat.coord(x, 0) % 2 == 0 ? 1.0 : -1.0) * 2.5 / lat.spacing();
        CHECK_THROWS_AS(curvature(U1Connection(big)), BranchCutError);
    }
    SUBCASE("constant flux") {
        double b = 0.0;
        const LinkField u = constantFluxLinks(lat, 1, b);
        const TwoForm f = curvature(u);
        for (const auto& v : f) {
            CHECK(std::abs(v[0] - b) < 1e-12);
            for (std::size_t p = 1; p < 6; ++p) CHECK(std::abs(v[p]) < 1e-12);
        }
    }
    SUBCASE("smooth field converges to da") {
        const auto err = [](int n) {
            const Lattice l = torus(n);
            const double k = kTwoPi / l.extent(1);
            OneForm a(l);
            for (std::size_t x = 0; x < l.sites(); ++x) a[x][0] = 0.7 * std::sin(k * l.coord(x, 1) * l.spacing());
            const TwoForm f = curvature(U1Connection(a));
            double e = 0.0;
            for (std::size_t x = 0; x < l.sites(); ++x)
                e = std::max(e, std::abs(f[x][0] + 0.7 * k * std::cos(k * l.coord(x, 1) * l.spacing())));
            return e;
        };
        const double p = std::log2(err(8) / err(16));
        CHECK(p >= 1.7);
        CHECK(p <= 2.3);
    }
}

TEST_CASE("Weitzenbock residual vanishes exactly at the trivial connection") {
    const Lattice lat = torus(8);
    Rng rng(4);
    SpinorPlusField<GaussianRational> psi(lat);
    for (auto& v : psi) v = randomExactSpinor(rng);
    const auto res = weitzenbockResidual(trivialLinks<GaussianRational>(lat), psi);
    bool allZero = true;
    for (const auto& v : res.residual) allZero = allZero && v == SpinorPlus<GaussianRational>{};
    CHECK(allZero);
    CHECK(res.norm == 0.0);
}

TEST_CASE("Weitzenbock residual converges at second order") {
    // The 8 to 16 step is still pre-asymptotic for lowest-band fields; 16 to 32 is not.
    const double coarse = weitzenbockRms(16, 11), fine = weitzenbockRms(32, 11);
    const double p = std::log2(coarse / fine);
    CHECK(p >= 1.7);
    CHECK(p <= 2.3);
}

TEST_CASE("Weitzenbock curvature coefficient measured with constant flux") {
    // Fit k in D-D+ psi - nabla* nabla psi = k i rho((da)+) psi. The spinor vanishes to
    // fourth order at the seam where the flux quantum is folded in, so it is a smooth
    // section of the twisted bundle.
    const auto fit = [](int n) {
        const Lattice lat({n, n, 4, 4}, kTwoPi / n);
        double b = 0.0;
        const LinkField u = constantFluxLinks(lat, 1, b);
        SpinorPlusField<> psi(lat);
        for (std::size_t x = 0; x < lat.sites(); ++x) {
            const double s = std::sin(std::numbers::pi * lat.coord(x, 0) / n);
            const double env = s * s * s * s;
            const double t = kTwoPi * lat.coord(x, 1) / n;
            psi[x] = {Complex(env * (1.0 + 0.5 * std::cos(t)), 0.0), env * std::polar(0.7, t)};
        }
        const auto lhs = diracMinus(u, diracPlus(u, psi)) - connectionLaplacian(u, psi);
        const auto basis = applySelfDualCurvature(selfDualCurvature(u), psi, 1.0);
        return innerProduct(lhs, basis).real() / norm2(basis);
    };
    const double k16 = fit(16), k32 = fit(32);
    const double p = std::log2(std::abs(k16 - 1.0) / std::abs(k32 - 1.0));
    CHECK(p >= 1.7);
    CHECK(p <= 2.3);
    CHECK(std::abs(k32 - kWeitzenbockCurvatureCoefficient) < 0.05);
    CHECK(std::abs(k32 - 0.25) > 0.5);
}

TEST_CASE("Weitzenbock residual is gauge covariant") {
    Rng rng(5);
    const Lattice lat = torus(6);
    const U1Connection a(bandLimitedOneForm(lat, {3, 0.5, 1, 6}));
    const auto psi = bandLimitedSpinor(lat, {4, 1.0, 1, 6});
    RealScalarField f(lat);
    for (auto& v : f) v = rng.uniform(-3, 3);
    SpinorPlusField<> psi2(lat);
    for (std::size_t x = 0; x < lat.sites(); ++x) psi2[x] = std::polar(1.0, -f[x]) * psi[x];
    const double n1 = weitzenbockResidual(a.links(), psi).norm;
    const double n2 = weitzenbockResidual(gaugeTransformLinks(a.links(), f), psi2).norm;
    CHECK(relErr(n1, n2) < 1e-12);
}
