#pragma once

// Fiberwise Spin_c(4) algebra on W+ (+) W- = C^2 (+) C^2.
//
// Coframe conventions: e1 = 1, e2 = i, e3 = j, e4 = k in the quaternions, W+ listed
// first. Every routine is templated on the complex scalar so the same code runs in
// double precision and in exact Gaussian-rational arithmetic.

#include "swtorus/scalar.hpp"

#include <array>
#include <stdexcept>

namespace swtorus {

template <class R>
struct Quaternion {
    R r{}, i{}, j{}, k{};

    friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
        return {a.r * b.r - a.i * b.i - a.j * b.j - a.k * b.k,
                a.r * b.i + a.i * b.r + a.j * b.k - a.k * b.j,
                a.r * b.j - a.i * b.k + a.j * b.r + a.k * b.i,
                a.r * b.k + a.i * b.j - a.j * b.i + a.k * b.r};
    }
    friend Quaternion operator+(const Quaternion& a, const Quaternion& b) {
        return {a.r + b.r, a.i + b.i, a.j + b.j, a.k + b.k};
    }
    friend Quaternion operator-(const Quaternion& a, const Quaternion& b) {
        return {a.r - b.r, a.i - b.i, a.j - b.j, a.k - b.k};
    }
    friend bool operator==(const Quaternion&, const Quaternion&) = default;

    Quaternion conjugate() const { return {r, -i, -j, -k}; }
    R norm2() const { return r * r + i * i + j * j + k * k; }
    // Coefficients against e1..e4.
    std::array<R, 4> coframe() const { return {r, i, j, k}; }
};

struct PlusTag {};
struct MinusTag {};

// A fiber value of W+ or W-; the tag keeps the two chiralities from mixing silently.
template <class Tag, class C = Complex>
struct Spinor {
    C z{}, w{};

    Spinor& operator+=(const Spinor& o) {
        z += o.z;
        w += o.w;
        return *this;
    }
    Spinor& operator-=(const Spinor& o) {
        z -= o.z;
        w -= o.w;
        return *this;
    }
    friend Spinor operator+(Spinor a, const Spinor& b) { return a += b; }
    friend Spinor operator-(Spinor a, const Spinor& b) { return a -= b; }
    friend Spinor operator-(const Spinor& a) { return {-a.z, -a.w}; }
    friend Spinor operator*(const C& s, const Spinor& a) { return {s * a.z, s * a.w}; }
    friend bool operator==(const Spinor& a, const Spinor& b) { return a.z == b.z && a.w == b.w; }

    RealOf<C> norm2() const { return ComplexTraits<C>::norm2(z) + ComplexTraits<C>::norm2(w); }
};

template <class C = Complex>
using SpinorPlus = Spinor<PlusTag, C>;
template <class C = Complex>
using SpinorMinus = Spinor<MinusTag, C>;

// Hermitian inner product <x, y> = sum x_k conj(y_k).
template <class Tag, class C>
C inner(const Spinor<Tag, C>& x, const Spinor<Tag, C>& y) {
    return x.z * ComplexTraits<C>::conjugate(y.z) + x.w * ComplexTraits<C>::conjugate(y.w);
}

template <class C = Complex>
struct Mat2 {
    // Row-major: (0,0), (0,1), (1,0), (1,1).
    std::array<C, 4> m{};

    static Mat2 zero() { return {}; }
    static Mat2 identity() { return {{C(1), C(0), C(0), C(1)}}; }

    C& operator()(int r, int c) { return m[2 * r + c]; }
    const C& operator()(int r, int c) const { return m[2 * r + c]; }

    friend Mat2 operator+(const Mat2& a, const Mat2& b) {
        return {{a.m[0] + b.m[0], a.m[1] + b.m[1], a.m[2] + b.m[2], a.m[3] + b.m[3]}};
    }
    friend Mat2 operator-(const Mat2& a, const Mat2& b) {
        return {{a.m[0] - b.m[0], a.m[1] - b.m[1], a.m[2] - b.m[2], a.m[3] - b.m[3]}};
    }
    friend Mat2 operator-(const Mat2& a) { return {{-a.m[0], -a.m[1], -a.m[2], -a.m[3]}}; }
    friend Mat2 operator*(const Mat2& a, const Mat2& b) {
        return {{a.m[0] * b.m[0] + a.m[1] * b.m[2], a.m[0] * b.m[1] + a.m[1] * b.m[3],
                 a.m[2] * b.m[0] + a.m[3] * b.m[2], a.m[2] * b.m[1] + a.m[3] * b.m[3]}};
    }
    friend Mat2 operator*(const C& s, const Mat2& a) {
        return {{s * a.m[0], s * a.m[1], s * a.m[2], s * a.m[3]}};
    }
    friend bool operator==(const Mat2& a, const Mat2& b) { return a.m == b.m; }

    C trace() const { return m[0] + m[3]; }
    Mat2 adjoint() const {
        using T = ComplexTraits<C>;
        return {{T::conjugate(m[0]), T::conjugate(m[2]), T::conjugate(m[1]), T::conjugate(m[3])}};
    }
    RealOf<C> frobenius2() const {
        using T = ComplexTraits<C>;
        return T::norm2(m[0]) + T::norm2(m[1]) + T::norm2(m[2]) + T::norm2(m[3]);
    }
};

// Apply a 2x2 block, producing a spinor of the requested chirality.
template <class OutTag, class InTag, class C>
Spinor<OutTag, C> applyBlock(const Mat2<C>& a, const Spinor<InTag, C>& s) {
    return {a.m[0] * s.z + a.m[1] * s.w, a.m[2] * s.z + a.m[3] * s.w};
}

template <class Tag, class C>
Spinor<Tag, C> operator*(const Mat2<C>& a, const Spinor<Tag, C>& s) {
    return applyBlock<Tag>(a, s);
}

// Image of a form under rho: a 4x4 matrix on W+ (+) W- held as four 2x2 blocks.
// plusPlus acts W+ -> W+, minusPlus acts W+ -> W-, plusMinus acts W- -> W+.
template <class C = Complex>
struct CliffordElement {
    Mat2<C> plusPlus{}, plusMinus{}, minusPlus{}, minusMinus{};

    static CliffordElement zero() { return {}; }
    static CliffordElement identity() {
        return {Mat2<C>::identity(), Mat2<C>::zero(), Mat2<C>::zero(), Mat2<C>::identity()};
    }

    C operator()(int r, int c) const {
        const Mat2<C>& b = r < 2 ? (c < 2 ? plusPlus : plusMinus) : (c < 2 ? minusPlus : minusMinus);
        return b(r % 2, c % 2);
    }

    friend CliffordElement operator+(const CliffordElement& a, const CliffordElement& b) {
        return {a.plusPlus + b.plusPlus, a.plusMinus + b.plusMinus, a.minusPlus + b.minusPlus,
                a.minusMinus + b.minusMinus};
    }
    friend CliffordElement operator-(const CliffordElement& a, const CliffordElement& b) {
        return {a.plusPlus - b.plusPlus, a.plusMinus - b.plusMinus, a.minusPlus - b.minusPlus,
                a.minusMinus - b.minusMinus};
    }
    friend CliffordElement operator*(const CliffordElement& a, const CliffordElement& b) {
        return {a.plusPlus * b.plusPlus + a.plusMinus * b.minusPlus,
                a.plusPlus * b.plusMinus + a.plusMinus * b.minusMinus,
                a.minusPlus * b.plusPlus + a.minusMinus * b.minusPlus,
                a.minusPlus * b.plusMinus + a.minusMinus * b.minusMinus};
    }
    friend CliffordElement operator*(const C& s, const CliffordElement& a) {
        return {s * a.plusPlus, s * a.plusMinus, s * a.minusPlus, s * a.minusMinus};
    }
    friend bool operator==(const CliffordElement& a, const CliffordElement& b) {
        return a.plusPlus == b.plusPlus && a.plusMinus == b.plusMinus && a.minusPlus == b.minusPlus &&
               a.minusMinus == b.minusMinus;
    }

    RealOf<C> frobenius2() const {
        return plusPlus.frobenius2() + plusMinus.frobenius2() + minusPlus.frobenius2() +
               minusMinus.frobenius2();
    }
};

// [[d, c], [conj(c), -d]]: the target of sigma and of rho(i * self-dual form).
template <class C = Complex>
struct TracelessHermitian2 {
    RealOf<C> d{};
    C c{};

    Mat2<C> matrix() const {
        return {{ComplexTraits<C>::fromReal(d), c, ComplexTraits<C>::conjugate(c),
                 ComplexTraits<C>::fromReal(-d)}};
    }
    // Reads the (0,0) and (0,1) entries; the caller vouches for hermiticity.
    static TracelessHermitian2 fromMatrix(const Mat2<C>& a) { return {ComplexTraits<C>::re(a(0, 0)), a(0, 1)}; }

    friend TracelessHermitian2 operator+(const TracelessHermitian2& a, const TracelessHermitian2& b) {
        return {a.d + b.d, a.c + b.c};
    }
    friend TracelessHermitian2 operator-(const TracelessHermitian2& a, const TracelessHermitian2& b) {
        return {a.d - b.d, a.c - b.c};
    }
    friend bool operator==(const TracelessHermitian2& a, const TracelessHermitian2& b) {
        return a.d == b.d && a.c == b.c;
    }
};

// Blocks of rho(e^i): W- -> W+ (top right) and W+ -> W- (bottom left).
template <class C = Complex>
Mat2<C> minusToPlusBlock(int direction) {
    using T = ComplexTraits<C>;
    const C o = T::make(0), p = T::make(1), n = T::make(-1), pi = T::make(0, 1), ni = T::make(0, -1);
    switch (direction) {
        case 1: return {{p, o, o, p}};
        case 2: return {{pi, o, o, ni}};
        case 3: return {{o, n, p, o}};
        case 4: return {{o, ni, ni, o}};
        default: throw std::invalid_argument("Clifford direction must lie in 1..4");
    }
}

template <class C = Complex>
Mat2<C> plusToMinusBlock(int direction) {
    using T = ComplexTraits<C>;
    const C o = T::make(0), n = T::make(-1), pi = T::make(0, 1), ni = T::make(0, -1);
    switch (direction) {
        case 1: return {{n, o, o, n}};
        case 2: return {{pi, o, o, ni}};
        case 3: return minusToPlusBlock<C>(3);
        case 4: return minusToPlusBlock<C>(4);
        default: throw std::invalid_argument("Clifford direction must lie in 1..4");
    }
}

template <class C = Complex>
CliffordElement<C> cliffordVector(int direction) {
    const Mat2<C> top = minusToPlusBlock<C>(direction);
    const Mat2<C> bottom = plusToMinusBlock<C>(direction);
    return {Mat2<C>::zero(), top, bottom, Mat2<C>::zero()};
}

template <class C = Complex>
CliffordElement<C> cliffordOneForm(const std::array<RealOf<C>, 4>& v) {
    CliffordElement<C> out;
    for (int i = 0; i < 4; ++i) out = out + ComplexTraits<C>::fromReal(v[i]) * cliffordVector<C>(i + 1);
    return out;
}

// rho(v1 ^ v2) = (rho(v1) rho(v2) - rho(v2) rho(v1)) / 2.
template <class C = Complex>
CliffordElement<C> cliffordWedge(const CliffordElement<C>& a, const CliffordElement<C>& b) {
    const C half = ComplexTraits<C>::fromReal(RealOf<C>(1) / RealOf<C>(2));
    return half * (a * b - b * a);
}

// Ordered pairs (i<j) used for 2-form storage: 12, 13, 14, 23, 24, 34.
inline constexpr std::array<std::array<int, 2>, 6> kPairs{{{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}};

template <class C = Complex>
CliffordElement<C> cliffordTwoForm(const std::array<RealOf<C>, 6>& f) {
    CliffordElement<C> out;
    for (std::size_t p = 0; p < kPairs.size(); ++p) {
        const auto e = cliffordWedge(cliffordVector<C>(kPairs[p][0]), cliffordVector<C>(kPairs[p][1]));
        out = out + ComplexTraits<C>::fromReal(f[p]) * e;
    }
    return out;
}

// W+ action of f_1 = (e12 + e34)/2, f_2 = (e13 + e42)/2, f_3 = (e14 + e23)/2.
template <class C = Complex>
Mat2<C> pauli(int k) {
    using T = ComplexTraits<C>;
    const C o = T::make(0), p = T::make(1), n = T::make(-1), pi = T::make(0, 1), ni = T::make(0, -1);
    switch (k) {
        case 1: return {{pi, o, o, ni}};
        case 2: return {{o, n, p, o}};
        case 3: return {{o, ni, ni, o}};
        default: throw std::invalid_argument("Pauli index must lie in 1..3");
    }
}

template <class C = Complex>
Mat2<C> selfDualPlusBlock(const std::array<RealOf<C>, 3>& coeffs) {
    Mat2<C> out;
    for (int k = 0; k < 3; ++k) out = out + ComplexTraits<C>::fromReal(coeffs[k]) * pauli<C>(k + 1);
    return out;
}

template <class C = Complex>
CliffordElement<C> cliffordSelfDual(const std::array<RealOf<C>, 3>& coeffs) {
    return {selfDualPlusBlock<C>(coeffs), Mat2<C>::zero(), Mat2<C>::zero(), Mat2<C>::zero()};
}

// i * rho(c) on W+ as a traceless hermitian matrix: [[-c1, c3 - i c2], [c3 + i c2, c1]].
template <class C = Complex>
TracelessHermitian2<C> hermitianSelfDual(const std::array<RealOf<C>, 3>& coeffs) {
    using T = ComplexTraits<C>;
    return {-coeffs[0], T::fromReal(coeffs[2]) - imagUnit<C>() * T::fromReal(coeffs[1])};
}

template <class C>
TracelessHermitian2<C> sigma(const SpinorPlus<C>& psi) {
    using T = ComplexTraits<C>;
    const RealOf<C> d = (T::norm2(psi.z) - T::norm2(psi.w)) / RealOf<C>(2);
    return {d, psi.z * T::conjugate(psi.w)};
}

// Polarization of sigma: psi phi^dagger - (phi^dagger psi / 2) I. Traceless, but only
// hermitian when psi and phi are proportional; sigmaPolar(psi, phi)^dagger = sigmaPolar(phi, psi).
template <class C>
Mat2<C> sigmaPolar(const SpinorPlus<C>& psi, const SpinorPlus<C>& phi) {
    using T = ComplexTraits<C>;
    const C pz = T::conjugate(phi.z), pw = T::conjugate(phi.w);
    const C half = T::fromReal(RealOf<C>(1) / RealOf<C>(2));
    const C shift = half * (pz * psi.z + pw * psi.w);
    return {{psi.z * pz - shift, psi.z * pw, psi.w * pz, psi.w * pw - shift}};
}

// <a, b> = tr(ab) / 2 on traceless hermitian matrices.
template <class C>
RealOf<C> innerSu2(const TracelessHermitian2<C>& a, const TracelessHermitian2<C>& b) {
    const C t = (a.matrix() * b.matrix()).trace();
    return ComplexTraits<C>::re(t) / RealOf<C>(2);
}

// Positive-definite pairing on su(2), -tr(AB)/2, extended complex-bilinearly to sl(2, C).
template <class C>
C pairSu2(const Mat2<C>& a, const Mat2<C>& b) {
    const C minusHalf = ComplexTraits<C>::fromReal(RealOf<C>(-1) / RealOf<C>(2));
    return minusHalf * (a * b).trace();
}

}  // namespace swtorus
