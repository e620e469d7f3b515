#include "swtorus/lattice.hpp"

#include "swtorus/spectral.hpp"

#include <cmath>

namespace swtorus {

OneForm harmonicPart(const OneForm& a) {
    std::array<double, 4> mean{};
    for (const auto& v : a) {
        for (std::size_t mu = 0; mu < 4; ++mu) mean[mu] += v[mu];
    }
    for (double& m : mean) m /= static_cast<double>(a.size());
    return OneForm(a.lattice(), mean);
}

RealScalarField solvePoisson(const RealScalarField& rhs, double tolerance) {
    const Lattice& lat = rhs.lattice();
    const SpectralGrid grid(lat);
    std::vector<Complex> values(lat.sites());
    for (std::size_t x = 0; x < lat.sites(); ++x) values[x] = rhs[x];
    std::vector<Complex> modes = grid.forward(values);

    const double h2 = lat.spacing() * lat.spacing();
    for (std::size_t m = 0; m < modes.size(); ++m) {
        const auto k = grid.waveNumbers(m);
        double symbol = 0.0;
        for (int mu = 0; mu < 4; ++mu) {
            if (grid.isCornerMode(m, mu)) continue;
            const double s = std::sin(k[static_cast<std::size_t>(mu)]);
            symbol += s * s;
        }
        modes[m] = symbol > 0.0 ? modes[m] / (symbol / h2) : Complex(0.0);
    }
    const std::vector<Complex> solved = grid.inverse(modes);
    RealScalarField f(lat);
    for (std::size_t x = 0; x < lat.sites(); ++x) f[x] = solved[x].real();

    const RealScalarField check = codifferential(d0(f));
    double res = 0.0, scale = 0.0;
    for (std::size_t x = 0; x < lat.sites(); ++x) {
        res = std::max(res, std::abs(check[x] - rhs[x]));
        scale = std::max(scale, std::abs(rhs[x]));
    }
    if (!(res <= tolerance * std::max(1.0, scale))) {
        throw SolverFailure("Poisson solve left a residual of " + std::to_string(res), res);
    }
    return f;
}

HodgeParts hodgeDecompose(const OneForm& a) {
    OneForm harmonic = harmonicPart(a);
    RealScalarField potential = solvePoisson(codifferential(a));
    OneForm exact = d0(potential);
    OneForm coexact = a - harmonic - exact;
    return {std::move(harmonic), std::move(coexact), std::move(exact), std::move(potential)};
}

}  // namespace swtorus
