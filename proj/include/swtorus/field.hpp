#pragma once

// Periodic 4-torus lattice and site-indexed fields.

#include "swtorus/clifford.hpp"
#include "swtorus/scalar.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace swtorus {

class Lattice {
public:
    Lattice(std::array<int, 4> dims, double spacing);

    const std::array<int, 4>& dims() const { return n_; }
    int dim(int mu) const { return n_[static_cast<std::size_t>(mu)]; }
    double spacing() const { return h_; }
    std::size_t sites() const { return sites_; }
    // Integration weight h^4 of one site.
    double measure() const { return h_ * h_ * h_ * h_; }
    // Side length n_mu * h along axis mu (0-based).
    double extent(int mu) const { return dim(mu) * h_; }

    // Lexicographic order with x1 slowest and x4 fastest.
    std::size_t index(const std::array<int, 4>& x) const;
    std::array<int, 4> coords(std::size_t idx) const;
    int coord(std::size_t idx, int mu) const {
        return static_cast<int>((idx / stride_[static_cast<std::size_t>(mu)]) % static_cast<std::size_t>(dim(mu)));
    }
    // Neighbor reached by `step` sites along axis mu (0-based), with periodic wrap.
    std::size_t shift(std::size_t idx, int mu, int step) const;

    friend bool operator==(const Lattice& a, const Lattice& b) { return a.n_ == b.n_ && a.h_ == b.h_; }

    std::string describe() const;

private:
    std::array<int, 4> n_;
    double h_;
    std::size_t sites_;
    std::array<std::size_t, 4> stride_{};
};

void requireSameLattice(const Lattice& a, const Lattice& b, const char* what);

template <class T>
class Field {
public:
    using value_type = T;

    explicit Field(const Lattice& lat, const T& init = T{}) : lat_(lat), data_(lat.sites(), init) {}

    const Lattice& lattice() const { return lat_; }
    std::size_t size() const { return data_.size(); }

    T& operator[](std::size_t i) { return data_[i]; }
    const T& operator[](std::size_t i) const { return data_[i]; }

    std::span<T> values() { return data_; }
    std::span<const T> values() const { return data_; }
    auto begin() { return data_.begin(); }
    auto end() { return data_.end(); }
    auto begin() const { return data_.begin(); }
    auto end() const { return data_.end(); }

    friend bool operator==(const Field& a, const Field& b) { return a.lat_ == b.lat_ && a.data_ == b.data_; }

private:
    Lattice lat_;
    std::vector<T> data_;
};

template <class R = double>
using RealScalarFieldT = Field<R>;
template <class R = double>
using OneFormT = Field<std::array<R, 4>>;
template <class R = double>
using TwoFormT = Field<std::array<R, 6>>;
template <class R = double>
using SelfDualFieldT = Field<std::array<R, 3>>;

using RealScalarField = RealScalarFieldT<>;
using ScalarField = Field<Complex>;
using OneForm = OneFormT<>;
using TwoForm = TwoFormT<>;
using SelfDualField = SelfDualFieldT<>;

template <class C = Complex>
using SpinorPlusField = Field<SpinorPlus<C>>;
template <class C = Complex>
using SpinorMinusField = Field<SpinorMinus<C>>;

// Real scale factor type matching a field value type: double for floating fields,
// Rational for exact ones.
template <class T>
struct ScaleOf {
    using type = double;
};
template <>
struct ScaleOf<Rational> {
    using type = Rational;
};
template <>
struct ScaleOf<GaussianRational> {
    using type = Rational;
};
template <class T, std::size_t N>
struct ScaleOf<std::array<T, N>> {
    using type = typename ScaleOf<T>::type;
};
template <class Tag, class C>
struct ScaleOf<Spinor<Tag, C>> {
    using type = typename ScaleOf<C>::type;
};
template <class T>
using ScaleType = typename ScaleOf<T>::type;

template <class S>
S scaleFromDouble(double x) {
    return S(x);
}

// Pointwise pairings used by the h^4-weighted inner products.
inline double dot(double a, double b) { return a * b; }
inline Rational dot(const Rational& a, const Rational& b) { return a * b; }
inline Complex dot(const Complex& a, const Complex& b) { return a * std::conj(b); }
inline GaussianRational dot(const GaussianRational& a, const GaussianRational& b) { return a * conj(b); }
template <class T, std::size_t N>
auto dot(const std::array<T, N>& a, const std::array<T, N>& b) {
    decltype(dot(a[0], b[0])) s = dot(a[0], b[0]);
    for (std::size_t i = 1; i < N; ++i) s += dot(a[i], b[i]);
    return s;
}
template <class Tag, class C>
C dot(const Spinor<Tag, C>& a, const Spinor<Tag, C>& b) {
    return inner(a, b);
}

// Sum over sites of h^4 <f(x), g(x)>, accumulated in site order so results are reproducible.
template <class T>
auto innerProduct(const Field<T>& f, const Field<T>& g) {
    requireSameLattice(f.lattice(), g.lattice(), "innerProduct");
    using Acc = decltype(dot(f[0], g[0]));
    Acc s = dot(f[0], g[0]);
    for (std::size_t i = 1; i < f.size(); ++i) s += dot(f[i], g[i]);
    const ScaleType<T> w = scaleFromDouble<ScaleType<T>>(f.lattice().measure());
    return Acc(s * w);
}

inline double realPart(double x) { return x; }
inline double realPart(const Complex& z) { return z.real(); }
inline Rational realPart(const Rational& x) { return x; }
inline Rational realPart(const GaussianRational& z) { return z.real(); }

// Squared h^4-norm.
template <class T>
auto norm2(const Field<T>& f) {
    return realPart(innerProduct(f, f));
}

// Field arithmetic for the value types that support it.
template <class T>
Field<T> operator+(Field<T> a, const Field<T>& b) {
    requireSameLattice(a.lattice(), b.lattice(), "field addition");
    for (std::size_t i = 0; i < a.size(); ++i) {
        if constexpr (requires(T x, T y) { x += y; }) {
            a[i] += b[i];
        } else {
            for (std::size_t k = 0; k < a[i].size(); ++k) a[i][k] += b[i][k];
        }
    }
    return a;
}

template <class T>
Field<T> operator-(Field<T> a, const Field<T>& b) {
    requireSameLattice(a.lattice(), b.lattice(), "field subtraction");
    for (std::size_t i = 0; i < a.size(); ++i) {
        if constexpr (requires(T x, T y) { x -= y; }) {
            a[i] -= b[i];
        } else {
            for (std::size_t k = 0; k < a[i].size(); ++k) a[i][k] -= b[i][k];
        }
    }
    return a;
}

template <class T, class S>
Field<T> scaled(Field<T> a, const S& s) {
    for (auto& v : a) {
        if constexpr (requires(T x) { s * x; }) {
            v = s * v;
        } else {
            for (auto& c : v) c = s * c;
        }
    }
    return a;
}

}  // namespace swtorus
