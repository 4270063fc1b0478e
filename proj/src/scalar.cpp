#include "nilherm/scalar.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>

namespace nilherm {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

BigInt pow10(unsigned e) {
    BigInt b = 1;
    for (unsigned i = 0; i < e; ++i) b *= 10;
    return b;
}

// Parses [digits][.digits] into num/den (den a power of ten).
void parse_decimal_body(std::string_view s, BigInt& num, BigInt& den,
                        std::string_view original) {
    den = 1;
    auto dot = s.find('.');
    std::string_view intpart = s.substr(0, dot);
    std::string_view frac = dot == std::string_view::npos ? std::string_view{}
                                                          : s.substr(dot + 1);
    if (intpart.empty() && frac.empty())
        throw ParseError("not a rational: '" + std::string(original) + "'");
    if (!intpart.empty() && !all_digits(intpart))
        throw ParseError("not a rational: '" + std::string(original) + "'");
    if (!frac.empty() && !all_digits(frac))
        throw ParseError("not a rational: '" + std::string(original) + "'");
    num = intpart.empty() ? BigInt(0) : BigInt{std::string(intpart)};
    if (!frac.empty()) {
        den = pow10(static_cast<unsigned>(frac.size()));
        num = num * den + BigInt{std::string(frac)};
    }
}

}  // namespace

Rational parse_rational(std::string_view s) {
    std::string_view orig = s;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) throw ParseError("empty rational string");

    bool neg = false;
    if (s.front() == '+' || s.front() == '-') {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) throw ParseError("not a rational: '" + std::string(orig) + "'");

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        std::string_view p = s.substr(0, slash);
        std::string_view q = s.substr(slash + 1);
        if (!all_digits(p) || !all_digits(q))
            throw ParseError("not a rational: '" + std::string(orig) + "'");
        BigInt num{std::string(p)};
        BigInt den{std::string(q)};
        if (den == 0) throw ParseError("zero denominator: '" + std::string(orig) + "'");
        Rational r{num, den};
        return neg ? -r : r;
    }

    // decimal, optionally with exponent
    int exp10 = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view es = s.substr(e + 1);
        bool eneg = false;
        if (!es.empty() && (es.front() == '+' || es.front() == '-')) {
            eneg = es.front() == '-';
            es.remove_prefix(1);
        }
        if (!all_digits(es) || es.size() > 6)
            throw ParseError("not a rational: '" + std::string(orig) + "'");
        exp10 = std::stoi(std::string(es));
        if (eneg) exp10 = -exp10;
        s = s.substr(0, e);
    }
    BigInt num, den;
    parse_decimal_body(s, num, den, orig);
    if (exp10 > 0)
        num *= pow10(static_cast<unsigned>(exp10));
    else if (exp10 < 0)
        den *= pow10(static_cast<unsigned>(-exp10));
    Rational r{num, den};
    return neg ? -r : r;
}

Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw std::domain_error("rational_from_double: non-finite input");
    if (x == 0.0) return {};
    int exp = 0;
    double m = std::frexp(x, &exp);  // x = m * 2^exp, 0.5 <= |m| < 1
    // 53 doublings make the mantissa integral
    BigInt mant = static_cast<long long>(std::ldexp(m, 53));
    exp -= 53;
    Rational r(mant);
    if (exp > 0) {
        BigInt two = 1;
        two <<= exp;
        r *= Rational(two);
    } else if (exp < 0) {
        BigInt two = 1;
        two <<= -exp;
        r /= Rational(two);
    }
    return r;
}

std::optional<Rational> rational_sqrt(const Rational& r) {
    if (r < 0) return std::nullopt;
    if (r == 0) return Rational(0);
    BigInt num = boost::multiprecision::numerator(r);
    BigInt den = boost::multiprecision::denominator(r);
    BigInt sn = boost::multiprecision::sqrt(num);
    BigInt sd = boost::multiprecision::sqrt(den);
    if (sn * sn != num || sd * sd != den) return std::nullopt;
    return Rational(sn, sd);
}

Rational rationalize(double x, std::int64_t max_den) {
    if (!std::isfinite(x)) throw std::domain_error("rationalize: non-finite input");
    bool neg = x < 0;
    double v = std::fabs(x);
    // continued-fraction convergents p/q of v
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = v;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(frac);
        if (fl > static_cast<double>(std::numeric_limits<std::int64_t>::max() / 4)) break;
        auto a = static_cast<std::int64_t>(fl);
        std::int64_t p2 = a * p1 + p0;
        std::int64_t q2 = a * q1 + q0;
        if (q2 > max_den || p2 < 0 || q2 < 0) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        double rem = frac - fl;
        if (rem < 1e-15 * std::max(1.0, v)) break;
        frac = 1.0 / rem;
    }
    if (q1 == 0) return {};
    Rational r{BigInt(p1), BigInt(q1)};
    return neg ? -r : r;
}

std::string to_string(const Rational& r) {
    BigInt num = boost::multiprecision::numerator(r);
    BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

std::string to_string(const ExactComplex& z) {
    if (z.is_zero()) return "0";
    std::string re = to_string(z.re);
    if (z.im == 0) return re;
    std::string im;
    if (z.im == 1)
        im = "i";
    else if (z.im == -1)
        im = "-i";
    else
        im = to_string(z.im) + "i";
    if (z.re == 0) return im;
    if (im.front() != '-') im.insert(im.begin(), '+');
    return re + im;
}

std::string Scalar::str() const {
    if (is_exact()) return to_string(exact_value());
    std::complex<double> z = float_value();
    char buf[64];
    if (z.imag() == 0.0) {
        std::snprintf(buf, sizeof buf, "%.12g", z.real());
        return buf;
    }
    std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real(), z.imag());
    return buf;
}

}  // namespace nilherm
