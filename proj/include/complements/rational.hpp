#pragma once

/**
 * @file rational.hpp
 * @brief Exact arbitrary-precision rational numbers.
 *
 * Thin value type over GMP's mpq_class. Every price, value, demand and
 * revenue in the library is a Rational, so equilibrium and dynamics
 * decisions never see rounding.
 *
 * Canonical text form is "a/b" in lowest terms, or "a" when b == 1.
 * Parsing additionally accepts finite decimals ("0.125", "-1.5").
 */

#include <gmpxx.h>

#include <compare>
#include <ostream>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace complements {

static_assert(sizeof(long) == sizeof(long long), "LP64 platform expected");

/// Thrown for malformed numeric text.
class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class Rational {
public:
    Rational() = default;
    Rational(int v) : value_(v) {}
    Rational(long v) : value_(v) {}
    Rational(long long v) : value_(static_cast<long>(v)) {}
    Rational(unsigned long v) : value_(v) {}
    Rational(const mpz_class& v) : value_(v) {}
    explicit Rational(const mpq_class& v) : value_(v) { value_.canonicalize(); }

    Rational(const mpz_class& num, const mpz_class& den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        value_ = mpq_class(num, den);
        value_.canonicalize();
    }
    Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}

    /// Parses "a", "a/b" or a finite decimal such as "-12.034".
    static Rational parse(std::string_view text);

    [[nodiscard]] std::string str() const { return value_.get_str(); }
    [[nodiscard]] double to_double() const { return value_.get_d(); }

    [[nodiscard]] const mpz_class& numerator() const { return value_.get_num(); }
    [[nodiscard]] const mpz_class& denominator() const { return value_.get_den(); }
    [[nodiscard]] const mpq_class& raw() const { return value_; }

    [[nodiscard]] int sign() const { return sgn(value_); }
    [[nodiscard]] bool is_zero() const { return sign() == 0; }
    [[nodiscard]] bool is_integer() const { return value_.get_den() == 1; }

    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        value_ /= o.value_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

private:
    mpq_class value_{0};
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// r^e for a non-negative integer exponent.
inline Rational pow(const Rational& r, unsigned e) {
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), r.numerator().get_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), r.denominator().get_mpz_t(), e);
    return Rational(num, den);
}

/// Largest integer L with 2^L <= r. Requires r >= 1.
inline long floor_log2(const Rational& r) {
    if (r < Rational(1)) throw std::domain_error("floor_log2: argument below 1");
    const mpz_class& a = r.numerator();
    const mpz_class& b = r.denominator();
    long guess = static_cast<long>(mpz_sizeinbase(a.get_mpz_t(), 2)) -
                 static_cast<long>(mpz_sizeinbase(b.get_mpz_t(), 2));
    if (guess < 0) guess = 0;
    auto fits = [&](long l) {
        mpz_class lhs = b;
        mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(), static_cast<mp_bitcnt_t>(l));
        return lhs <= a;
    };
    while (guess > 0 && !fits(guess)) --guess;
    while (fits(guess + 1)) ++guess;
    return guess;
}

inline Rational Rational::parse(std::string_view text) {
    auto fail = [&] { return ParseError("not a rational number: '" + std::string(text) + "'"); };
    if (text.empty()) throw fail();

    auto parse_int = [&](std::string_view s, bool allow_sign) {
        if (s.empty()) throw fail();
        std::size_t start = 0;
        if (allow_sign && (s[0] == '-' || s[0] == '+')) start = 1;
        if (start == s.size()) throw fail();
        for (std::size_t i = start; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') throw fail();
        std::string digits(s[0] == '+' ? s.substr(1) : s);
        return mpz_class(digits, 10);
    };

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        mpz_class num = parse_int(text.substr(0, slash), true);
        mpz_class den = parse_int(text.substr(slash + 1), false);
        if (den == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
        return Rational(num, den);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view whole = text.substr(0, dot);
        std::string_view frac = text.substr(dot + 1);
        bool negative = !whole.empty() && whole[0] == '-';
        if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole.remove_prefix(1);
        if (whole.empty() && frac.empty()) throw fail();
        mpz_class int_part = whole.empty() ? mpz_class(0) : parse_int(whole, false);
        mpz_class frac_part = frac.empty() ? mpz_class(0) : parse_int(frac, false);
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        Rational r(int_part * scale + frac_part, scale);
        return negative ? -r : r;
    }
    return Rational(parse_int(text, true));
}

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace complements
