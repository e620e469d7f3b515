#include "swtorus/field.hpp"

#include <cmath>
#include <sstream>

namespace swtorus {

Lattice::Lattice(std::array<int, 4> dims, double spacing) : n_(dims), h_(spacing), sites_(1) {
    for (int d : n_) {
        if (d < 4) throw std::invalid_argument("every lattice dimension must be at least 4");
    }
    if (!(spacing > 0.0) || !std::isfinite(spacing)) throw std::invalid_argument("lattice spacing must be positive");
    for (int d : n_) sites_ *= static_cast<std::size_t>(d);
    stride_[3] = 1;
    for (int mu = 2; mu >= 0; --mu) {
        const auto m = static_cast<std::size_t>(mu);
        stride_[m] = stride_[m + 1] * static_cast<std::size_t>(n_[m + 1]);
    }
}

std::size_t Lattice::index(const std::array<int, 4>& x) const {
    std::size_t idx = 0;
    for (std::size_t mu = 0; mu < 4; ++mu) {
        const int n = n_[mu];
        const int c = ((x[mu] % n) + n) % n;
        idx += static_cast<std::size_t>(c) * stride_[mu];
    }
    return idx;
}

std::array<int, 4> Lattice::coords(std::size_t idx) const {
    return {coord(idx, 0), coord(idx, 1), coord(idx, 2), coord(idx, 3)};
}

std::size_t Lattice::shift(std::size_t idx, int mu, int step) const {
    const int n = dim(mu);
    const int c = coord(idx, mu);
    const int nc = (((c + step) % n) + n) % n;
    const auto s = stride_[static_cast<std::size_t>(mu)];
    return idx + static_cast<std::size_t>(nc) * s - static_cast<std::size_t>(c) * s;
}

std::string Lattice::describe() const {
    std::ostringstream os;
    os << n_[0] << 'x' << n_[1] << 'x' << n_[2] << 'x' << n_[3] << " h=" << h_;
    return os.str();
}

void requireSameLattice(const Lattice& a, const Lattice& b, const char* what) {
    if (!(a == b)) {
        throw std::invalid_argument(std::string(what) + ": lattice mismatch (" + a.describe() + " vs " +
                                    b.describe() + ")");
    }
}

}  // namespace swtorus
