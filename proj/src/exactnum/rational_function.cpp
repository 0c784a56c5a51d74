#include "bssvm/rational_function.hpp"

namespace bssvm {

RationalFunction::RationalFunction(const Polynomial& num, const Polynomial& den) : num_(num), den_(den) {
    if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
    normalize();
}

void RationalFunction::normalize() {
    if (num_.is_zero()) {
        den_ = Polynomial(1);
        return;
    }
    if (!den_.is_constant()) {
        Polynomial g = polynomial_gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = exact_divide(num_, g);
            den_ = exact_divide(den_, g);
        }
    }
    Rational s = den_.primitive_scale();
    num_ = num_.scaled(s);
    den_ = den_.scaled(s);
}

Rational RationalFunction::constant_value() const { return num_.constant_value() / den_.constant_value(); }

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw DivisionByZero("symbolic division by the zero function");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

RationalFunction RationalFunction::substitute(const ExactBindings& bindings) const {
    Polynomial d = den_.substitute(bindings);
    if (d.is_zero()) throw DivisionByZero("denominator vanishes under substitution");
    return RationalFunction(num_.substitute(bindings), d);
}

Rational RationalFunction::evaluate(const ExactBindings& bindings) const {
    Rational d = den_.evaluate(bindings);
    if (d.is_zero()) throw DivisionByZero("denominator vanishes at the point");
    return num_.evaluate(bindings) / d;
}

Interval RationalFunction::evaluate(const IntervalBindings& box) const {
    Interval n = num_.evaluate(box);
    if (den_.is_constant()) return n * Interval(Rational(1) / den_.constant_value());
    return n / den_.evaluate(box);
}

std::string RationalFunction::str() const {
    if (den_ == Polynomial(1)) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

RationalFunction ratfun_op(const RationalFunction& a, const RationalFunction& b, ArithOp op) {
    switch (op) {
        case ArithOp::Add: return a + b;
        case ArithOp::Sub: return a - b;
        case ArithOp::Mul: return a * b;
        case ArithOp::Div: return a / b;
    }
    throw std::logic_error("unknown arithmetic op");
}

}  // namespace bssvm
