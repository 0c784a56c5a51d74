#pragma once

#include <string>

#include "bssvm/polynomial.hpp"

namespace bssvm {

/// Quotient of two polynomials in lowest terms. The denominator has coprime
/// integer coefficients and a positive leading coefficient, and zero is 0/1,
/// so equal functions have equal representations.
class RationalFunction {
public:
    RationalFunction() : den_(1) {}
    RationalFunction(const Rational& q) : num_(q), den_(1) {}
    RationalFunction(long long q) : RationalFunction(Rational(q)) {}
    explicit RationalFunction(const Polynomial& p) : num_(p), den_(1) {}
    explicit RationalFunction(const Variable& v) : num_(v), den_(1) {}
    /// Throws DivisionByZero when den is the zero polynomial.
    RationalFunction(const Polynomial& num, const Polynomial& den);

    const Polynomial& numerator() const { return num_; }
    const Polynomial& denominator() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rational constant_value() const;

    RationalFunction operator-() const;
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    /// Throws DivisionByZero when b is the zero function.
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);

    RationalFunction substitute(const ExactBindings& bindings) const;
    /// Throws DivisionByZero if the denominator vanishes at the point.
    Rational evaluate(const ExactBindings& bindings) const;
    /// Throws DivisionByZero if the denominator enclosure contains zero.
    Interval evaluate(const IntervalBindings& box) const;

    /// "num" when the denominator is 1, else "(num)/(den)".
    std::string str() const;

    friend bool operator==(const RationalFunction&, const RationalFunction&) = default;

private:
    void normalize();
    Polynomial num_;
    Polynomial den_;
};

RationalFunction ratfun_op(const RationalFunction& a, const RationalFunction& b, ArithOp op);

}  // namespace bssvm
