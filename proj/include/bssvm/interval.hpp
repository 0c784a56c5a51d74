#pragma once

#include <functional>
#include <stdexcept>

#include "bssvm/rational.hpp"

namespace bssvm {

/// Closed interval [lo, hi] with exact rational endpoints.
class Interval {
public:
    Interval() = default;
    explicit Interval(const Rational& point) : lo_(point), hi_(point) {}
    /// Throws std::invalid_argument unless lo <= hi.
    Interval(Rational lo, Rational hi);

    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    Rational width() const { return hi_ - lo_; }

    bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
    bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }

    friend Interval operator+(const Interval& a, const Interval& b);
    friend Interval operator-(const Interval& a, const Interval& b);
    friend Interval operator*(const Interval& a, const Interval& b);
    /// Throws DivisionByZero when b contains zero.
    friend Interval operator/(const Interval& a, const Interval& b);
    Interval operator-() const { return Interval(-hi_, -lo_); }
    /// Tight enclosure of x^k (handles even powers of sign-straddling intervals).
    Interval pow(unsigned k) const;

    friend bool operator==(const Interval&, const Interval&) = default;

private:
    Rational lo_;
    Rational hi_;
};

class ApproximationFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// [lo, hi] with dyadic endpoints and hi - lo <= 2^-precision.
class DyadicInterval {
public:
    /// Throws std::invalid_argument if the invariants do not hold.
    DyadicInterval(Rational lo, Rational hi, unsigned precision);

    /// The tightest grid interval [floor(q 2^n), ceil(q 2^n)] / 2^n around q.
    static DyadicInterval around(const Rational& q, unsigned precision);

    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    unsigned precision() const { return precision_; }
    Interval interval() const { return Interval(lo_, hi_); }

private:
    Rational lo_;
    Rational hi_;
    unsigned precision_;
};

/// Supplies, for any requested precision n, a dyadic interval of width at
/// most 2^-n containing some fixed real number. Throws ApproximationFailure
/// if it cannot.
using ConstantApproximation = std::function<DyadicInterval(unsigned precision)>;

/// Approximation scheme for an exactly known rational.
ConstantApproximation exact_approximation(const Rational& q);

/// Approximation scheme for sqrt(q), q >= 0, via integer square roots.
ConstantApproximation sqrt_approximation(const Rational& q);

}  // namespace bssvm
