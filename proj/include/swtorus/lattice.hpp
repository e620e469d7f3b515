#pragma once

// Discrete exterior calculus on the periodic lattice. All derivatives are central
// differences; inner products carry the h^4 measure, under which codifferential is the
// exact adjoint of d0.

#include "swtorus/field.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace swtorus {

class SolverFailure : public std::runtime_error {
public:
    SolverFailure(const std::string& what, double residual) : std::runtime_error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

// Index of the pair (i, j), 0 <= i < j < 4, in TwoForm storage.
constexpr int pairIndex(int i, int j) {
    constexpr int table[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
    return table[i][j];
}

template <class T>
Field<std::array<T, 4>> d0(const Field<T>& f) {
    const Lattice& lat = f.lattice();
    const ScaleType<T> inv2h = scaleFromDouble<ScaleType<T>>(1.0) / scaleFromDouble<ScaleType<T>>(2.0 * lat.spacing());
    Field<std::array<T, 4>> out(lat);
    for (std::size_t x = 0; x < lat.sites(); ++x) {
        for (int mu = 0; mu < 4; ++mu) {
            out[x][static_cast<std::size_t>(mu)] = (f[lat.shift(x, mu, 1)] - f[lat.shift(x, mu, -1)]) * inv2h;
        }
    }
    return out;
}

// (d1 a)_ij = D_i a_j - D_j a_i, written as one four-term difference per pair.
template <class T>
Field<std::array<T, 6>> d1(const Field<std::array<T, 4>>& a) {
    const Lattice& lat = a.lattice();
    const ScaleType<T> inv2h = scaleFromDouble<ScaleType<T>>(1.0) / scaleFromDouble<ScaleType<T>>(2.0 * lat.spacing());
    Field<std::array<T, 6>> out(lat);
    for (std::size_t x = 0; x < lat.sites(); ++x) {
        for (int i = 0; i < 4; ++i) {
            for (int j = i + 1; j < 4; ++j) {
                const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
                T dij = a[lat.shift(x, i, 1)][uj] - a[lat.shift(x, i, -1)][uj];
                T dji = a[lat.shift(x, j, 1)][ui] - a[lat.shift(x, j, -1)][ui];
                out[x][static_cast<std::size_t>(pairIndex(i, j))] = (dij - dji) * inv2h;
            }
        }
    }
    return out;
}

template <class T>
Field<T> codifferential(const Field<std::array<T, 4>>& a) {
    const Lattice& lat = a.lattice();
    const ScaleType<T> inv2h = scaleFromDouble<ScaleType<T>>(1.0) / scaleFromDouble<ScaleType<T>>(2.0 * lat.spacing());
    Field<T> out(lat);
    for (std::size_t x = 0; x < lat.sites(); ++x) {
        T s = T{};
        for (int mu = 0; mu < 4; ++mu) {
            const auto m = static_cast<std::size_t>(mu);
            s += a[lat.shift(x, mu, -1)][m] - a[lat.shift(x, mu, 1)][m];
        }
        out[x] = s * inv2h;
    }
    return out;
}

// Coefficients in f1 = (e12 + e34)/2, f2 = (e13 + e42)/2, f3 = (e14 + e23)/2.
template <class T>
std::array<T, 3> projectSelfDual(const std::array<T, 6>& f) {
    return {f[0] + f[5], f[1] - f[4], f[2] + f[3]};
}

template <class T>
std::array<T, 3> projectAntiSelfDual(const std::array<T, 6>& f) {
    return {f[0] - f[5], f[1] + f[4], f[2] - f[3]};
}

template <class T>
std::array<T, 6> embedSelfDual(const std::array<T, 3>& c) {
    const T a = c[0] / T(2), b = c[1] / T(2), d = c[2] / T(2);
    return {a, b, d, d, -b, a};
}

template <class T>
std::array<T, 6> embedAntiSelfDual(const std::array<T, 3>& c) {
    const T a = c[0] / T(2), b = c[1] / T(2), d = c[2] / T(2);
    return {a, b, d, -d, b, -a};
}

template <class T>
Field<std::array<T, 3>> selfDualProject(const Field<std::array<T, 6>>& f) {
    Field<std::array<T, 3>> out(f.lattice());
    for (std::size_t x = 0; x < f.size(); ++x) out[x] = projectSelfDual(f[x]);
    return out;
}

template <class T>
Field<std::array<T, 3>> antiSelfDualProject(const Field<std::array<T, 6>>& f) {
    Field<std::array<T, 3>> out(f.lattice());
    for (std::size_t x = 0; x < f.size(); ++x) out[x] = projectAntiSelfDual(f[x]);
    return out;
}

template <class T>
Field<std::array<T, 6>> embed(const Field<std::array<T, 3>>& c) {
    Field<std::array<T, 6>> out(c.lattice());
    for (std::size_t x = 0; x < c.size(); ++x) out[x] = embedSelfDual(c[x]);
    return out;
}

template <class T>
Field<std::array<T, 6>> embedAnti(const Field<std::array<T, 3>>& c) {
    Field<std::array<T, 6>> out(c.lattice());
    for (std::size_t x = 0; x < c.size(); ++x) out[x] = embedAntiSelfDual(c[x]);
    return out;
}

// Per-direction lattice mean: the harmonic part of a 1-form on the flat torus.
OneForm harmonicPart(const OneForm& a);

struct HodgeParts {
    OneForm harmonic;
    OneForm coexact;
    OneForm exact;
    RealScalarField potential;  // exact = d0(potential), potential has zero mean
};

// a = harmonic + coexact + exact. The potential solves codifferential(d0 f) =
// codifferential(a) in the plane-wave basis; corner modes (sin k = 0 in every direction)
// lie in the kernel of d0 and are excluded. Components at nonzero corner momenta are
// discretely harmonic as well and end up in the coexact remainder.
HodgeParts hodgeDecompose(const OneForm& a);

// Solves codifferential(d0 f) = rhs spectrally. Throws SolverFailure when the residual
// exceeds tolerance (for example if rhs has a component on the kernel).
RealScalarField solvePoisson(const RealScalarField& rhs, double tolerance = 1e-10);

}  // namespace swtorus
