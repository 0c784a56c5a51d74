#pragma once

// Exact rational scalars. Every arithmetic operation and every comparison the
// virtual machine performs goes through this type; there is no floating point
// anywhere in the core.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace bssvm {

using BigInt = mpz_class;

class DivisionByZero : public std::domain_error {
public:
    DivisionByZero() : std::domain_error("division by zero") {}
    explicit DivisionByZero(const std::string& what) : std::domain_error(what) {}
};

class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Arbitrary-precision fraction, always stored in lowest terms with a
/// positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(long long value) : q_(static_cast<long>(value)) {}
    Rational(const BigInt& value) : q_(value) {}
    /// Throws DivisionByZero when `den` is zero.
    Rational(const BigInt& num, const BigInt& den);

    /// Accepts "p/q", "-p/q" and plain integers "p".
    static Rational parse(std::string_view text);

    BigInt numerator() const { return q_.get_num(); }
    BigInt denominator() const { return q_.get_den(); }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    Rational abs() const;
    /// Largest integer <= value.
    BigInt floor() const;
    BigInt ceil() const;

    /// "p/q" with q >= 1; integers print as "p/1".
    std::string str() const;

    Rational operator-() const;
    Rational& operator+=(const Rational& other);
    Rational& operator-=(const Rational& other);
    Rational& operator*=(const Rational& other);
    Rational& operator/=(const Rational& other);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    const mpq_class& raw() const { return q_; }

private:
    mpq_class q_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

enum class ArithOp { Add, Sub, Mul, Div };

/// Exact field arithmetic. Throws DivisionByZero for Div with b == 0.
Rational rat_op(const Rational& a, const Rational& b, ArithOp op);

/// 2^exponent for any integer exponent.
Rational pow2(long exponent);

/// Dyadic d = floor(q * 2^n) / 2^n, so |d - q| <= 2^-n and ties fall toward
/// minus infinity.
Rational dyadic_round(const Rational& q, unsigned n);

/// True when the denominator is a power of two.
bool is_dyadic(const Rational& q);

}  // namespace bssvm
