#include "swtorus/dirac.hpp"

#include <numbers>
#include <sstream>

namespace swtorus {

U1Connection::U1Connection(OneForm a) : a_(std::move(a)), links_(a_.lattice()) {
    const double h = a_.lattice().spacing();
    for (std::size_t x = 0; x < a_.size(); ++x) {
        for (std::size_t mu = 0; mu < 4; ++mu) links_[x][mu] = std::polar(1.0, h * a_[x][mu]);
    }
}

TwoForm curvatureFromAngles(const TwoForm& angles) {
    const Lattice& lat = angles.lattice();
    const double scale = 1.0 / (4.0 * lat.spacing() * lat.spacing());
    TwoForm out(lat);
    for (std::size_t x = 0; x < lat.sites(); ++x) {
        for (int i = 0; i < 4; ++i) {
            for (int j = i + 1; j < 4; ++j) {
                const auto p = static_cast<std::size_t>(pairIndex(i, j));
                const std::size_t xi = lat.shift(x, i, -1);
                const std::size_t xj = lat.shift(x, j, -1);
                const std::size_t xij = lat.shift(xi, j, -1);
                out[x][p] = (angles[x][p] + angles[xi][p] + angles[xj][p] + angles[xij][p]) * scale;
            }
        }
    }
    return out;
}

TwoForm curvature(const U1Connection& conn) {
    const OneForm& a = conn.oneForm();
    const Lattice& lat = a.lattice();
    const double h = lat.spacing();
    for (std::size_t y = 0; y < lat.sites(); ++y) {
        for (int i = 0; i < 4; ++i) {
            for (int j = i + 1; j < 4; ++j) {
                const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
                const double raw =
                    h * (a[y][ui] + a[lat.shift(y, i, 1)][uj] - a[lat.shift(y, j, 1)][ui] - a[y][uj]);
                if (!(std::abs(raw) < std::numbers::pi)) {
                    const auto c = lat.coords(y);
                    std::ostringstream os;
                    os << "plaquette phase " << raw << " in plane (" << i + 1 << ',' << j + 1 << ") at site ("
                       << c[0] << ',' << c[1] << ',' << c[2] << ',' << c[3]
                       << ") crosses the branch cut; refine the lattice or reduce the field amplitude";
                    throw BranchCutError(os.str());
                }
            }
        }
    }
    return curvature(conn.links());
}

SelfDualField selfDualCurvature(const U1Connection& a) {
    return selfDualProject(curvature(a));
}

LinkField gaugeTransformLinks(const LinkField& u, const RealScalarField& f) {
    requireSameLattice(u.lattice(), f.lattice(), "gaugeTransformLinks");
    const Lattice& lat = u.lattice();
    LinkField out(lat);
    for (std::size_t x = 0; x < lat.sites(); ++x) {
        for (int mu = 0; mu < 4; ++mu) {
            const auto m = static_cast<std::size_t>(mu);
            out[x][m] = u[x][m] * std::polar(1.0, f[lat.shift(x, mu, 1)] - f[x]);
        }
    }
    return out;
}

}  // namespace swtorus
