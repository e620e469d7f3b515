#include "swtorus/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace swtorus {

namespace {

struct FftwFree {
    void operator()(fftw_complex* p) const { fftw_free(p); }
};
struct PlanDestroy {
    void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
};

}  // namespace

// Aligned scratch buffers keep FFTW on the same code path for every call, which keeps
// repeated transforms bit-identical.
struct SpectralGrid::Plans {
    std::size_t n;
    std::unique_ptr<fftw_complex, FftwFree> buffer;
    std::unique_ptr<fftw_plan_s, PlanDestroy> fwd;
    std::unique_ptr<fftw_plan_s, PlanDestroy> bwd;

    explicit Plans(const Lattice& lat) : n(lat.sites()), buffer(fftw_alloc_complex(lat.sites())) {
        const std::array<int, 4>& d = lat.dims();
        fwd.reset(fftw_plan_dft(4, d.data(), buffer.get(), buffer.get(), FFTW_FORWARD, FFTW_ESTIMATE));
        bwd.reset(fftw_plan_dft(4, d.data(), buffer.get(), buffer.get(), FFTW_BACKWARD, FFTW_ESTIMATE));
    }

    std::vector<Complex> run(fftw_plan plan, std::span<const Complex> in, double scale) const {
        fftw_complex* b = buffer.get();
        for (std::size_t i = 0; i < n; ++i) {
            b[i][0] = in[i].real();
            b[i][1] = in[i].imag();
        }
        fftw_execute(plan);
        std::vector<Complex> out(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = Complex(b[i][0] * scale, b[i][1] * scale);
        return out;
    }
};

SpectralGrid::SpectralGrid(const Lattice& lat) : lat_(lat), plans_(std::make_unique<Plans>(lat)) {}
SpectralGrid::~SpectralGrid() = default;
SpectralGrid::SpectralGrid(SpectralGrid&&) noexcept = default;
SpectralGrid& SpectralGrid::operator=(SpectralGrid&&) noexcept = default;

std::vector<Complex> SpectralGrid::forward(std::span<const Complex> values) const {
    if (values.size() != plans_->n) throw std::invalid_argument("spectral transform: size mismatch");
    return plans_->run(plans_->fwd.get(), values, 1.0);
}

std::vector<Complex> SpectralGrid::inverse(std::span<const Complex> modes) const {
    if (modes.size() != plans_->n) throw std::invalid_argument("spectral transform: size mismatch");
    return plans_->run(plans_->bwd.get(), modes, 1.0 / static_cast<double>(plans_->n));
}

std::array<double, 4> SpectralGrid::waveNumbers(std::size_t mode) const {
    std::array<double, 4> k{};
    for (int mu = 0; mu < 4; ++mu) {
        const int m = lat_.coord(mode, mu);
        k[static_cast<std::size_t>(mu)] = 2.0 * std::numbers::pi * m / lat_.dim(mu);
    }
    return k;
}

bool SpectralGrid::isCornerMode(std::size_t mode, int mu) const {
    const int m = lat_.coord(mode, mu);
    return (2 * m) % lat_.dim(mu) == 0;
}

}  // namespace swtorus
