#include "bssvm/interval.hpp"

#include <algorithm>
#include <array>

namespace bssvm {

Interval::Interval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (hi_ < lo_) throw std::invalid_argument("interval with lo > hi");
}

Interval operator+(const Interval& a, const Interval& b) { return Interval(a.lo_ + b.lo_, a.hi_ + b.hi_); }

Interval operator-(const Interval& a, const Interval& b) { return Interval(a.lo_ - b.hi_, a.hi_ - b.lo_); }

Interval operator*(const Interval& a, const Interval& b) {
    std::array<Rational, 4> p{a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
    auto [mn, mx] = std::minmax_element(p.begin(), p.end());
    return Interval(*mn, *mx);
}

Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) throw DivisionByZero("interval divisor contains zero");
    return a * Interval(Rational(1) / b.hi_, Rational(1) / b.lo_);
}

Interval Interval::pow(unsigned k) const {
    if (k == 0) return Interval(Rational(1));
    Rational a = lo_, b = hi_, pa = 1, pb = 1;
    for (unsigned i = 0; i < k; ++i) {
        pa *= a;
        pb *= b;
    }
    if (k % 2 == 1) return Interval(pa, pb);
    if (lo_.sign() >= 0) return Interval(pa, pb);
    if (hi_.sign() <= 0) return Interval(pb, pa);
    return Interval(Rational(0), std::max(pa, pb));
}

DyadicInterval::DyadicInterval(Rational lo, Rational hi, unsigned precision)
    : lo_(std::move(lo)), hi_(std::move(hi)), precision_(precision) {
    if (hi_ < lo_) throw std::invalid_argument("dyadic interval with lo > hi");
    if (!is_dyadic(lo_) || !is_dyadic(hi_)) throw std::invalid_argument("dyadic interval with non-dyadic endpoint");
    if (hi_ - lo_ > pow2(-static_cast<long>(precision_)))
        throw std::invalid_argument("dyadic interval wider than its precision");
}

DyadicInterval DyadicInterval::around(const Rational& q, unsigned precision) {
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 2, precision);
    Rational scaled = q * Rational(scale);
    return DyadicInterval(Rational(scaled.floor(), scale), Rational(scaled.ceil(), scale), precision);
}

ConstantApproximation exact_approximation(const Rational& q) {
    return [q](unsigned n) { return DyadicInterval::around(q, n); };
}

ConstantApproximation sqrt_approximation(const Rational& q) {
    if (q.sign() < 0) throw std::invalid_argument("sqrt of a negative rational");
    return [q](unsigned n) {
        // floor(sqrt(q) 2^n) = isqrt(floor(q 4^n)); exact when q 4^n is a perfect square.
        BigInt scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 2, n);
        BigInt scaled = (q * Rational(BigInt(scale * scale))).floor();
        BigInt root;
        mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
        bool exact = root * root == scaled && (q * Rational(BigInt(scale * scale))).is_integer();
        Rational lo(root, scale);
        Rational hi = exact ? lo : Rational(BigInt(root + 1), scale);
        return DyadicInterval(lo, hi, n);
    };
}

}  // namespace bssvm
