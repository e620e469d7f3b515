#pragma once

// Spin_c Dirac operator on the flat lattice torus with a compact U(1) link connection.
//
// The covariant derivative is the symmetric stencil
//   (nabla_mu psi)(x) = (U_mu(x) psi(x + mu) - conj(U_mu(x - mu)) psi(x - mu)) / 2h,
// which is skew-adjoint for the h^4 inner product. With rho(e^mu) = [[0, A_mu], [B_mu, 0]]
// we set D+ = sum B_mu nabla_mu and D- = sum A_mu nabla_mu; since A_mu = -B_mu^dagger, D- is
// the exact adjoint of D+. The flat metric makes the spin connection vanish identically.

#include "swtorus/clifford.hpp"
#include "swtorus/field.hpp"
#include "swtorus/lattice.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace swtorus {

template <class C = Complex>
using LinkFieldT = Field<std::array<C, 4>>;
using LinkField = LinkFieldT<>;

class BranchCutError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

template <class C = Complex>
LinkFieldT<C> trivialLinks(const Lattice& lat) {
    const C one = ComplexTraits<C>::make(1);
    return LinkFieldT<C>(lat, {one, one, one, one});
}

// A = A0 + i a stored through its generating 1-form a; links are U_mu(x) = exp(i h a_mu(x)).
class U1Connection {
public:
    explicit U1Connection(OneForm a);
    static U1Connection trivial(const Lattice& lat) { return U1Connection(OneForm(lat)); }

    const Lattice& lattice() const { return a_.lattice(); }
    const OneForm& oneForm() const { return a_; }
    const LinkField& links() const { return links_; }

private:
    OneForm a_;
    LinkField links_;
};

namespace detail {

template <class V, class S>
V scaleValue(const S& s, const V& v) {
    if constexpr (requires { s * v; }) {
        return s * v;
    } else {
        return V(s) * v;
    }
}

template <class V, class C>
V transport(const C& u, const V& v) {
    return u * v;
}

template <class C>
ScaleType<C> inverseTwoH(const Lattice& lat) {
    using S = ScaleType<C>;
    return scaleFromDouble<S>(1.0) / scaleFromDouble<S>(2.0 * lat.spacing());
}

// Unscaled symmetric difference U psi(x+mu) - conj(U(x-mu)) psi(x-mu).
template <class V, class C>
V linkDifference(const LinkFieldT<C>& u, const Field<V>& psi, std::size_t x, int mu) {
    const Lattice& lat = psi.lattice();
    const auto m = static_cast<std::size_t>(mu);
    const std::size_t fwd = lat.shift(x, mu, 1), bwd = lat.shift(x, mu, -1);
    return transport(u[x][m], psi[fwd]) - transport(ComplexTraits<C>::conjugate(u[bwd][m]), psi[bwd]);
}

}  // namespace detail

// Works for spinor fields of either chirality and for complex scalar fields.
template <class V, class C>
Field<V> covariantDerivative(const LinkFieldT<C>& u, const Field<V>& psi, int direction) {
    requireSameLattice(u.lattice(), psi.lattice(), "covariantDerivative");
    if (direction < 1 || direction > 4) throw std::invalid_argument("direction must lie in 1..4");
    const Lattice& lat = psi.lattice();
    const auto inv2h = detail::inverseTwoH<C>(lat);
    Field<V> out(lat);
    for (std::size_t x = 0; x < lat.sites(); ++x) {
        out[x] = detail::scaleValue(inv2h, detail::linkDifference(u, psi, x, direction - 1));
    }
    return out;
}

template <class V>
Field<V> covariantDerivative(const U1Connection& a, const Field<V>& psi, int direction) {
    return covariantDerivative(a.links(), psi, direction);
}

template <class C>
SpinorMinusField<C> diracPlus(const LinkFieldT<C>& u, const SpinorPlusField<C>& psi) {
    requireSameLattice(u.lattice(), psi.lattice(), "diracPlus");
    const Lattice& lat = psi.lattice();
    const auto inv2h = detail::inverseTwoH<C>(lat);
    std::array<Mat2<C>, 4> b;
    for (int mu = 0; mu < 4; ++mu) b[static_cast<std::size_t>(mu)] = plusToMinusBlock<C>(mu + 1);
    SpinorMinusField<C> out(lat);
    for (std::size_t x = 0; x < lat.sites(); ++x) {
        SpinorMinus<C> acc{};
        for (int mu = 0; mu < 4; ++mu) {
            acc += applyBlock<MinusTag>(b[static_cast<std::size_t>(mu)], detail::linkDifference(u, psi, x, mu));
        }
        out[x] = detail::scaleValue(inv2h, acc);
    }
    return out;
}

template <class C>
SpinorPlusField<C> diracMinus(const LinkFieldT<C>& u, const SpinorMinusField<C>& phi) {
    requireSameLattice(u.lattice(), phi.lattice(), "diracMinus");
    const Lattice& lat = phi.lattice();
    const auto inv2h = detail::inverseTwoH<C>(lat);
    std::array<Mat2<C>, 4> a;
    for (int mu = 0; mu < 4; ++mu) a[static_cast<std::size_t>(mu)] = minusToPlusBlock<C>(mu + 1);
    SpinorPlusField<C> out(lat);
    for (std::size_t x = 0; x < lat.sites(); ++x) {
        SpinorPlus<C> acc{};
        for (int mu = 0; mu < 4; ++mu) {
            acc += applyBlock<PlusTag>(a[static_cast<std::size_t>(mu)], detail::linkDifference(u, phi, x, mu));
        }
        out[x] = detail::scaleValue(inv2h, acc);
    }
    return out;
}

inline SpinorMinusField<> diracPlus(const U1Connection& a, const SpinorPlusField<>& psi) {
    return diracPlus(a.links(), psi);
}
inline SpinorPlusField<> diracMinus(const U1Connection& a, const SpinorMinusField<>& phi) {
    return diracMinus(a.links(), phi);
}

// nabla* nabla = -sum_mu nabla_mu nabla_mu, the wide-stencil connection Laplacian.
template <class V, class C>
Field<V> connectionLaplacian(const LinkFieldT<C>& u, const Field<V>& psi) {
    const Lattice& lat = psi.lattice();
    Field<V> out(lat);
    for (int mu = 1; mu <= 4; ++mu) {
        const Field<V> once = covariantDerivative(u, psi, mu);
        const Field<V> twice = covariantDerivative(u, once, mu);
        out = out - twice;
    }
    return out;
}

// Oriented plaquette angles arg(U_i(y) U_j(y+i) conj(U_i(y+j)) conj(U_j(y))), per pair i<j.
template <class C>
TwoForm plaquetteAngles(const LinkFieldT<C>& u) {
    using T = ComplexTraits<C>;
    const Lattice& lat = u.lattice();
    TwoForm out(lat);
    for (std::size_t y = 0; y < lat.sites(); ++y) {
        for (int i = 0; i < 4; ++i) {
            for (int j = i + 1; j < 4; ++j) {
                const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
                const C p = u[y][ui] * u[lat.shift(y, i, 1)][uj] * T::conjugate(u[lat.shift(y, j, 1)][ui]) *
                            T::conjugate(u[y][uj]);
                out[y][static_cast<std::size_t>(pairIndex(i, j))] = std::arg(T::toComplexDouble(p));
            }
        }
    }
    return out;
}

// Site-centred curvature da: the mean of the four plaquettes touching x in each plane,
// divided by h^2. Averaging centres the estimate on the site, which keeps it O(h^2).
TwoForm curvatureFromAngles(const TwoForm& angles);

template <class C>
TwoForm curvature(const LinkFieldT<C>& u) {
    return curvatureFromAngles(plaquetteAngles(u));
}

// Same, but first checks that every plaquette phase generated by a stays inside (-pi, pi).
TwoForm curvature(const U1Connection& a);

template <class C>
SelfDualField selfDualCurvature(const LinkFieldT<C>& u) {
    return selfDualProject(curvature(u));
}
SelfDualField selfDualCurvature(const U1Connection& a);

// rho(F+_A) psi with F_A = i da, i.e. i * rho((da)+) acting on W+.
template <class C>
SpinorPlusField<C> applySelfDualCurvature(const SelfDualField& c, const SpinorPlusField<C>& psi,
                                          const RealOf<C>& coefficient) {
    using T = ComplexTraits<C>;
    SpinorPlusField<C> out(psi.lattice());
    for (std::size_t x = 0; x < psi.size(); ++x) {
        const std::array<RealOf<C>, 3> cx{coefficient * T::fromDouble(c[x][0]), coefficient * T::fromDouble(c[x][1]),
                                          coefficient * T::fromDouble(c[x][2])};
        out[x] = hermitianSelfDual<C>(cx).matrix() * psi[x];
    }
    return out;
}

// Coefficient of rho(F+_A) in D-D+ = nabla*nabla + s/4 + k rho(F+_A) when F_A is the
// curvature of the connection the spinors are coupled to through the links.
inline constexpr double kWeitzenbockCurvatureCoefficient = 1.0;
// Scalar curvature of the flat torus.
inline constexpr double kScalarCurvature = 0.0;

template <class C = Complex>
struct WeitzenbockResult {
    SpinorPlusField<C> residual;
    double norm;
};

template <class C>
WeitzenbockResult<C> weitzenbockResidual(const LinkFieldT<C>& u, const SpinorPlusField<C>& psi,
                                         double coefficient = kWeitzenbockCurvatureCoefficient) {
    using T = ComplexTraits<C>;
    const SpinorPlusField<C> lhs = diracMinus(u, diracPlus(u, psi));
    const SpinorPlusField<C> rough = connectionLaplacian(u, psi);
    const SpinorPlusField<C> curv = applySelfDualCurvature(selfDualCurvature(u), psi, T::fromDouble(coefficient));
    const RealOf<C> quarterS = T::fromDouble(kScalarCurvature) / RealOf<C>(4);
    SpinorPlusField<C> residual = lhs - rough - curv;
    if (quarterS != RealOf<C>(0)) residual = residual - scaled(psi, T::fromReal(quarterS));
    const double n = std::sqrt(T::toDouble(norm2(residual)));
    return {std::move(residual), n};
}

inline WeitzenbockResult<> weitzenbockResidual(const U1Connection& a, const SpinorPlusField<>& psi,
                                               double coefficient = kWeitzenbockCurvatureCoefficient) {
    (void)curvature(a);  // branch-cut guard
    return weitzenbockResidual(a.links(), psi, coefficient);
}

// Multiplies links by exp(i (f(x+mu) - f(x))), the lattice coboundary of a real gauge function.
LinkField gaugeTransformLinks(const LinkField& u, const RealScalarField& f);

}  // namespace swtorus
