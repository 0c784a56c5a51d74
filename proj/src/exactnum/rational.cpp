#include "bssvm/rational.hpp"

#include <cctype>
#include <ostream>

namespace bssvm {

namespace {

bool parse_integer(std::string_view text, BigInt& out) {
    if (text.empty()) return false;
    std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (start == text.size()) return false;
    for (std::size_t i = start; i < text.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
    std::string digits(text[0] == '+' ? text.substr(1) : text);
    return out.set_str(digits, 10) == 0;
}

}  // namespace

Rational::Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DivisionByZero();
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    auto slash = text.find('/');
    BigInt num;
    BigInt den = 1;
    if (slash == std::string_view::npos) {
        if (!parse_integer(text, num)) throw ParseError("malformed rational '" + std::string(text) + "'");
    } else {
        auto den_text = text.substr(slash + 1);
        if (!parse_integer(text.substr(0, slash), num) || den_text.empty() ||
            den_text[0] == '-' || den_text[0] == '+' || !parse_integer(den_text, den))
            throw ParseError("malformed rational '" + std::string(text) + "'");
        if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    }
    return Rational(num, den);
}

Rational Rational::abs() const {
    Rational r;
    r.q_ = ::abs(q_);
    return r;
}

BigInt Rational::floor() const {
    BigInt out;
    mpz_fdiv_q(out.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return out;
}

BigInt Rational::ceil() const {
    BigInt out;
    mpz_cdiv_q(out.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return out;
}

std::string Rational::str() const {
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational Rational::operator-() const {
    Rational r;
    r.q_ = -q_;
    return r;
}

Rational& Rational::operator+=(const Rational& other) {
    q_ += other.q_;
    return *this;
}

Rational& Rational::operator-=(const Rational& other) {
    q_ -= other.q_;
    return *this;
}

Rational& Rational::operator*=(const Rational& other) {
    q_ *= other.q_;
    return *this;
}

Rational& Rational::operator/=(const Rational& other) {
    if (other.is_zero()) throw DivisionByZero();
    q_ /= other.q_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

Rational rat_op(const Rational& a, const Rational& b, ArithOp op) {
    switch (op) {
        case ArithOp::Add: return a + b;
        case ArithOp::Sub: return a - b;
        case ArithOp::Mul: return a * b;
        case ArithOp::Div: return a / b;
    }
    throw std::logic_error("unknown arithmetic op");
}

Rational pow2(long exponent) {
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    return exponent < 0 ? Rational(BigInt(1), p) : Rational(p);
}

Rational dyadic_round(const Rational& q, unsigned n) {
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 2, n);
    return Rational((q * Rational(scale)).floor(), scale);
}

bool is_dyadic(const Rational& q) {
    const BigInt den = q.denominator();
    return mpz_popcount(den.get_mpz_t()) == 1;
}

}  // namespace bssvm
