#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace nilherm {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Mixing exact and floating scalars in one expression.
struct ModeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed textual input (rationals, files).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Complex number with exact rational real and imaginary parts.
/// This is the authoritative representation everywhere a zero-test decides
/// anything; doubles are a derived view only.
struct ExactComplex {
    Rational re;
    Rational im;

    ExactComplex() = default;
    ExactComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    explicit ExactComplex(Rational r) : re(std::move(r)) {}
    ExactComplex(long r, long i) : re(r), im(i) {}

    static ExactComplex zero() { return {}; }
    static ExactComplex one() { return ExactComplex(Rational(1)); }
    static ExactComplex i() { return {Rational(0), Rational(1)}; }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    ExactComplex conj() const { return {re, -im}; }
    Rational norm_sq() const { return re * re + im * im; }

    std::complex<double> to_double() const {
        return {static_cast<double>(re), static_cast<double>(im)};
    }

    ExactComplex operator-() const { return {-re, -im}; }
    ExactComplex& operator+=(const ExactComplex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    ExactComplex& operator-=(const ExactComplex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    ExactComplex& operator*=(const ExactComplex& o) {
        Rational r = re * o.re - im * o.im;
        Rational i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    ExactComplex& operator/=(const ExactComplex& o) {
        Rational d = o.norm_sq();
        if (d == 0) throw std::domain_error("ExactComplex: division by zero");
        Rational r = (re * o.re + im * o.im) / d;
        Rational i = (im * o.re - re * o.im) / d;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }

    friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
    friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
    friend ExactComplex operator*(ExactComplex a, const ExactComplex& b) { return a *= b; }
    friend ExactComplex operator/(ExactComplex a, const ExactComplex& b) { return a /= b; }
    friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
        return a.re == b.re && a.im == b.im;
    }
};

/// Parse "p/q", integer, or decimal ("-0.25", "1.5e-3") text to an exact rational.
Rational parse_rational(std::string_view s);

/// Exact value of an IEEE double (every finite double is a dyadic rational).
Rational rational_from_double(double x);

/// Exact square root when the argument is the square of a rational.
std::optional<Rational> rational_sqrt(const Rational& r);

/// Nearest continued-fraction convergent with denominator <= max_den.
/// Used to turn float search output back into exact candidates.
Rational rationalize(double x, std::int64_t max_den);

std::string to_string(const Rational& r);
std::string to_string(const ExactComplex& z);

enum class ScalarMode { Exact, Floating };

/// Tagged union of an exact rational-complex value and a double-precision
/// complex value. Arithmetic between different modes is rejected rather than
/// silently promoted.
class Scalar {
public:
    Scalar() : v_(ExactComplex{}) {}
    static Scalar exact(ExactComplex z) { return Scalar(std::move(z)); }
    static Scalar exact(Rational r) { return Scalar(ExactComplex(std::move(r))); }
    static Scalar floating(std::complex<double> z) { return Scalar(z); }
    static Scalar zero(ScalarMode m) {
        return m == ScalarMode::Exact ? exact(ExactComplex::zero()) : floating({0.0, 0.0});
    }
    static Scalar one(ScalarMode m) {
        return m == ScalarMode::Exact ? exact(ExactComplex::one()) : floating({1.0, 0.0});
    }

    ScalarMode mode() const {
        return std::holds_alternative<ExactComplex>(v_) ? ScalarMode::Exact
                                                        : ScalarMode::Floating;
    }
    bool is_exact() const { return mode() == ScalarMode::Exact; }

    const ExactComplex& exact_value() const {
        if (!is_exact()) throw ModeError("Scalar: exact value requested from float scalar");
        return std::get<ExactComplex>(v_);
    }
    std::complex<double> float_value() const {
        if (is_exact()) throw ModeError("Scalar: float value requested from exact scalar");
        return std::get<std::complex<double>>(v_);
    }
    /// Double view regardless of mode (never authoritative).
    std::complex<double> to_double() const {
        return is_exact() ? exact_value().to_double() : float_value();
    }
    Scalar to_float() const { return floating(to_double()); }

    bool is_zero() const {
        return is_exact() ? exact_value().is_zero() : float_value() == std::complex<double>{};
    }

    Scalar conj() const {
        return is_exact() ? exact(exact_value().conj()) : floating(std::conj(float_value()));
    }
    /// |z|^2 as a real scalar of the same mode.
    Scalar norm_sq() const {
        return is_exact() ? exact(ExactComplex(exact_value().norm_sq()))
                          : floating({std::norm(float_value()), 0.0});
    }

    Scalar& operator+=(const Scalar& o) { return apply(o, std::plus<>()); }
    Scalar& operator-=(const Scalar& o) { return apply(o, std::minus<>()); }
    Scalar& operator*=(const Scalar& o) { return apply(o, std::multiplies<>()); }
    Scalar& operator/=(const Scalar& o) { return apply(o, std::divides<>()); }
    Scalar operator-() const {
        return is_exact() ? exact(-exact_value()) : floating(-float_value());
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b) {
        if (a.mode() != b.mode()) throw ModeError("Scalar: comparing mixed modes");
        return a.is_exact() ? a.exact_value() == b.exact_value()
                            : a.float_value() == b.float_value();
    }

    std::string str() const;

private:
    explicit Scalar(ExactComplex z) : v_(std::move(z)) {}
    explicit Scalar(std::complex<double> z) : v_(z) {}

    template <class Op>
    Scalar& apply(const Scalar& o, Op op) {
        if (mode() != o.mode()) throw ModeError("Scalar: mixed exact/float arithmetic");
        if (is_exact())
            v_ = op(std::get<ExactComplex>(v_), o.exact_value());
        else
            v_ = op(std::get<std::complex<double>>(v_), o.float_value());
        return *this;
    }

    std::variant<ExactComplex, std::complex<double>> v_;
};

}  // namespace nilherm
