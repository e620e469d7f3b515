#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <complex>
#include <string>

namespace swtorus {

using Real = double;
using Complex = std::complex<double>;
using Rational = boost::multiprecision::mpq_rational;

// Exact complex number with rational components.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im)) {}
    GaussianRational(int re) : re_(re), im_(0) {}

    const Rational& real() const { return re_; }
    const Rational& imag() const { return im_; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational r = re_ * o.re_ - im_ * o.im_;
        im_ = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        return *this;
    }
    GaussianRational& operator*=(const Rational& s) {
        re_ *= s;
        im_ *= s;
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        Rational den = o.re_ * o.re_ + o.im_ * o.im_;
        Rational r = (re_ * o.re_ + im_ * o.im_) / den;
        im_ = (im_ * o.re_ - re_ * o.im_) / den;
        re_ = std::move(r);
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend GaussianRational operator*(GaussianRational a, const Rational& s) { return a *= s; }
    friend GaussianRational operator*(const Rational& s, GaussianRational a) { return a *= s; }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re_, -a.im_}; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    friend GaussianRational conj(const GaussianRational& a) { return {a.re_, -a.im_}; }
    friend Rational norm(const GaussianRational& a) { return a.re_ * a.re_ + a.im_ * a.im_; }

    std::string str() const { return re_.str() + (im_ < 0 ? "" : "+") + im_.str() + "i"; }

private:
    Rational re_{0};
    Rational im_{0};
};

// Uniform access to the two arithmetic backends used by the templated algebra.
template <class C>
struct ComplexTraits;

template <>
struct ComplexTraits<Complex> {
    using RealType = double;
    static Complex make(double re, double im = 0.0) { return {re, im}; }
    static Complex fromReal(RealType r) { return {r, 0.0}; }
    static RealType fromDouble(double x) { return x; }
    static double toDouble(RealType x) { return x; }
    static Complex toComplexDouble(const Complex& z) { return z; }
    static RealType re(const Complex& z) { return z.real(); }
    static RealType im(const Complex& z) { return z.imag(); }
    static RealType norm2(const Complex& z) { return std::norm(z); }
    static Complex conjugate(const Complex& z) { return std::conj(z); }
};

template <>
struct ComplexTraits<GaussianRational> {
    using RealType = Rational;
    static GaussianRational make(int re, int im = 0) { return {Rational(re), Rational(im)}; }
    static GaussianRational fromReal(const RealType& r) { return {r, 0}; }
    // Every finite double is a dyadic rational, so this conversion is exact.
    static RealType fromDouble(double x) { return Rational(x); }
    static double toDouble(const RealType& x) { return x.convert_to<double>(); }
    static Complex toComplexDouble(const GaussianRational& z) {
        return {z.real().convert_to<double>(), z.imag().convert_to<double>()};
    }
    static RealType re(const GaussianRational& z) { return z.real(); }
    static RealType im(const GaussianRational& z) { return z.imag(); }
    static RealType norm2(const GaussianRational& z) { return norm(z); }
    static GaussianRational conjugate(const GaussianRational& z) { return conj(z); }
};

template <class C>
using RealOf = typename ComplexTraits<C>::RealType;

template <class C>
C imagUnit() {
    return ComplexTraits<C>::make(0, 1);
}

}  // namespace swtorus
