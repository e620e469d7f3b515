#pragma once

// Single named generator through which every random draw in the toolkit flows.

#include "swtorus/field.hpp"

#include <cstdint>
#include <random>

namespace swtorus {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double normal() { return normal_(engine_); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit_(engine_); }
    int uniformInt(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
    Complex complexNormal() {
        const double re = normal();
        const double im = normal();
        return {re, im};
    }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> unit_{0.0, 1.0};
};

// Smooth band-limited fields on the physical torus [0, L)^4 with L = n h. The same seed
// and torus size give the same continuum field at every resolution, which is what the
// convergence-order measurements rely on.
struct BandLimitedSpec {
    std::uint64_t seed = 1;
    double amplitude = 1.0;
    int maxWave = 1;  // wave vectors with components in [-maxWave, maxWave]
    int terms = 6;
    int activeAxes = 4;  // waves vary only along the first activeAxes directions
};

OneForm bandLimitedOneForm(const Lattice& lat, const BandLimitedSpec& spec);
RealScalarField bandLimitedReal(const Lattice& lat, const BandLimitedSpec& spec);
ScalarField bandLimitedComplex(const Lattice& lat, const BandLimitedSpec& spec);
SpinorPlusField<> bandLimitedSpinor(const Lattice& lat, const BandLimitedSpec& spec);

}  // namespace swtorus
