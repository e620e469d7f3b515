#pragma once

// Plane-wave diagonalization of translation-invariant lattice operators.

#include "swtorus/field.hpp"

#include <array>
#include <memory>
#include <span>
#include <vector>

namespace swtorus {

class SpectralGrid {
public:
    explicit SpectralGrid(const Lattice& lat);
    ~SpectralGrid();
    SpectralGrid(const SpectralGrid&) = delete;
    SpectralGrid& operator=(const SpectralGrid&) = delete;
    SpectralGrid(SpectralGrid&&) noexcept;
    SpectralGrid& operator=(SpectralGrid&&) noexcept;

    const Lattice& lattice() const { return lat_; }

    // Coefficients c_m with f(x) = (1/N) sum_m c_m exp(i k_m . x).
    std::vector<Complex> forward(std::span<const Complex> values) const;
    std::vector<Complex> inverse(std::span<const Complex> modes) const;

    // Lattice wave numbers k_mu = 2 pi m_mu / n_mu for the mode stored at `mode`.
    std::array<double, 4> waveNumbers(std::size_t mode) const;
    // True when sin(k_mu) vanishes exactly, i.e. m_mu is 0 or n_mu / 2.
    bool isCornerMode(std::size_t mode, int mu) const;

private:
    struct Plans;
    Lattice lat_;
    std::unique_ptr<Plans> plans_;
};

}  // namespace swtorus
