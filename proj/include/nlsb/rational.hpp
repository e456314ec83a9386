#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace nlsb {

using Rational = boost::multiprecision::cpp_rational;

// Complex number with exact rational real and imaginary parts.  All
// polynomial coefficients in the algebra layer are of this type; floating
// point only appears when a polynomial is evaluated on a state.
struct RationalComplex {
    Rational re;
    Rational im;

    RationalComplex() = default;
    RationalComplex(Rational r) : re(std::move(r)) {}
    RationalComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    RationalComplex(long r, long i) : re(r), im(i) {}

    static RationalComplex unit_i() { return {Rational(0), Rational(1)}; }

    bool is_zero() const { return re == 0 && im == 0; }

    RationalComplex conj() const { return {re, -im}; }

    // multiplication by i / -i without a full complex product
    RationalComplex times_i() const { return {-im, re}; }
    RationalComplex times_minus_i() const { return {im, -re}; }

    RationalComplex& operator+=(const RationalComplex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    RationalComplex& operator-=(const RationalComplex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }

    friend RationalComplex operator+(RationalComplex a, const RationalComplex& b) { return a += b; }
    friend RationalComplex operator-(RationalComplex a, const RationalComplex& b) { return a -= b; }
    friend RationalComplex operator-(const RationalComplex& a) { return {-a.re, -a.im}; }

    friend RationalComplex operator*(const RationalComplex& a, const RationalComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend RationalComplex operator*(const RationalComplex& a, const Rational& s) {
        return {a.re * s, a.im * s};
    }
    friend RationalComplex operator*(const Rational& s, const RationalComplex& a) { return a * s; }

    RationalComplex divided_by(const Rational& s) const {
        if (s == 0) throw std::domain_error("RationalComplex: division by zero");
        return {re / s, im / s};
    }

    friend bool operator==(const RationalComplex& a, const RationalComplex& b) = default;

    std::complex<double> to_complex() const {
        return {re.convert_to<double>(), im.convert_to<double>()};
    }

    double modulus_squared_double() const {
        Rational m = re * re + im * im;
        return m.convert_to<double>();
    }
};

inline std::string rational_to_string(const Rational& r) {
    std::ostringstream os;
    os << numerator(r) << '/' << denominator(r);
    return os.str();
}

inline Rational rational_from_string(const std::string& s) {
    try {
        return Rational(s);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational literal: '" + s + "'");
    }
}

}  // namespace nlsb
