#include "swtorus/random.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace swtorus {

namespace {

struct Wave {
    std::array<int, 4> m;
    Complex coeff;
};

std::vector<Wave> drawWaves(Rng& rng, const BandLimitedSpec& spec) {
    std::vector<Wave> waves;
    waves.reserve(static_cast<std::size_t>(spec.terms));
    for (int t = 0; t < spec.terms; ++t) {
        Wave w{};
        for (int mu = 0; mu < 4; ++mu) {
            const int m = rng.uniformInt(-spec.maxWave, spec.maxWave);
            w.m[static_cast<std::size_t>(mu)] = mu < spec.activeAxes ? m : 0;
        }
        w.coeff = spec.amplitude * rng.complexNormal() / std::sqrt(static_cast<double>(spec.terms));
        waves.push_back(w);
    }
    return waves;
}

Complex evaluate(const std::vector<Wave>& waves, const Lattice& lat, std::size_t x) {
    const auto c = lat.coords(x);
    Complex s{};
    for (const Wave& w : waves) {
        double phase = 0.0;
        for (int mu = 0; mu < 4; ++mu) {
            phase += 2.0 * std::numbers::pi * w.m[static_cast<std::size_t>(mu)] * c[static_cast<std::size_t>(mu)] /
                     lat.dim(mu);
        }
        s += w.coeff * std::polar(1.0, phase);
    }
    return s;
}

}  // namespace

OneForm bandLimitedOneForm(const Lattice& lat, const BandLimitedSpec& spec) {
    Rng rng(spec.seed);
    std::array<std::vector<Wave>, 4> comp;
    for (auto& c : comp) c = drawWaves(rng, spec);
    OneForm a(lat);
    for (std::size_t x = 0; x < lat.sites(); ++x) {
        for (std::size_t mu = 0; mu < 4; ++mu) a[x][mu] = evaluate(comp[mu], lat, x).real();
    }
    return a;
}

RealScalarField bandLimitedReal(const Lattice& lat, const BandLimitedSpec& spec) {
    Rng rng(spec.seed);
    const auto waves = drawWaves(rng, spec);
    RealScalarField f(lat);
    for (std::size_t x = 0; x < lat.sites(); ++x) f[x] = evaluate(waves, lat, x).real();
    return f;
}

ScalarField bandLimitedComplex(const Lattice& lat, const BandLimitedSpec& spec) {
    Rng rng(spec.seed);
    const auto waves = drawWaves(rng, spec);
    ScalarField f(lat);
    for (std::size_t x = 0; x < lat.sites(); ++x) f[x] = evaluate(waves, lat, x);
    return f;
}

SpinorPlusField<> bandLimitedSpinor(const Lattice& lat, const BandLimitedSpec& spec) {
    Rng rng(spec.seed);
    const auto up = drawWaves(rng, spec);
    const auto down = drawWaves(rng, spec);
    SpinorPlusField<> psi(lat);
    for (std::size_t x = 0; x < lat.sites(); ++x) psi[x] = {evaluate(up, lat, x), evaluate(down, lat, x)};
    return psi;
}

}  // namespace swtorus
