#include "bssvm/polynomial.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace bssvm {

Variable Variable::parse(const std::string& name) {
    if (name.size() < 2 || (name[0] != 'x' && name[0] != 'c'))
        throw ParseError("malformed variable name '" + name + "'");
    for (std::size_t i = 1; i < name.size(); ++i)
        if (name[i] < '0' || name[i] > '9') throw ParseError("malformed variable name '" + name + "'");
    auto k = static_cast<std::uint32_t>(std::stoul(name.substr(1)));
    return name[0] == 'x' ? input(k) : constant(k);
}

std::string Variable::name() const { return (kind == Kind::Input ? "x" : "c") + std::to_string(index); }

// ---------------------------------------------------------------------------

Monomial::Monomial(Variable v, std::uint32_t exponent) {
    if (exponent > 0) factors_.emplace_back(v, exponent);
}

std::uint32_t Monomial::degree() const {
    std::uint32_t d = 0;
    for (const auto& [v, e] : factors_) d += e;
    return d;
}

std::uint32_t Monomial::degree_in(const Variable& v) const {
    for (const auto& [w, e] : factors_)
        if (w == v) return e;
    return 0;
}

bool Monomial::divides(const Monomial& other) const {
    for (const auto& [v, e] : factors_)
        if (other.degree_in(v) < e) return false;
    return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial out;
    auto i = a.factors_.begin(), j = b.factors_.begin();
    while (i != a.factors_.end() || j != b.factors_.end()) {
        if (j == b.factors_.end() || (i != a.factors_.end() && i->first < j->first)) {
            out.factors_.push_back(*i++);
        } else if (i == a.factors_.end() || j->first < i->first) {
            out.factors_.push_back(*j++);
        } else {
            out.factors_.emplace_back(i->first, i->second + j->second);
            ++i;
            ++j;
        }
    }
    return out;
}

Monomial Monomial::quotient(const Monomial& b, const Monomial& a) {
    Monomial out;
    for (const auto& [v, e] : b.factors_) {
        std::uint32_t d = a.degree_in(v);
        if (d > e) throw std::domain_error("monomial does not divide");
        if (e > d) out.factors_.emplace_back(v, e - d);
    }
    for (const auto& [v, e] : a.factors_)
        if (b.degree_in(v) < e) throw std::domain_error("monomial does not divide");
    return out;
}

Monomial Monomial::without(const Variable& v) const {
    Monomial out;
    for (const auto& f : factors_)
        if (f.first != v) out.factors_.push_back(f);
    return out;
}

std::string Monomial::str() const {
    std::string s;
    for (const auto& [v, e] : factors_) {
        if (!s.empty()) s += "*";
        s += v.name();
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s.empty() ? "1" : s;
}

bool grlex_less(const Monomial& a, const Monomial& b) {
    auto da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    auto i = fa.begin(), j = fb.begin();
    while (i != fa.end() || j != fb.end()) {
        if (j == fb.end() || (i != fa.end() && i->first < j->first)) return false;  // a has the smaller variable
        if (i == fa.end() || j->first < i->first) return true;
        if (i->second != j->second) return i->second < j->second;
        ++i;
        ++j;
    }
    return false;
}

// ---------------------------------------------------------------------------

Polynomial::Polynomial(const Rational& constant) {
    if (!constant.is_zero()) terms_.emplace(Monomial(), constant);
}

Polynomial::Polynomial(const Variable& v) { terms_.emplace(Monomial(v), Rational(1)); }

Polynomial::Polynomial(const Monomial& m, const Rational& coefficient) {
    if (!coefficient.is_zero()) terms_.emplace(m, coefficient);
}

bool Polynomial::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }

Rational Polynomial::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) throw std::logic_error("constant_value of a non-constant polynomial");
    return terms_.begin()->second;
}

std::uint32_t Polynomial::total_degree() const { return terms_.empty() ? 0 : terms_.begin()->first.degree(); }

std::uint32_t Polynomial::degree_in(const Variable& v) const {
    std::uint32_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree_in(v));
    return d;
}

std::vector<Variable> Polynomial::variables() const {
    std::set<Variable> vs;
    for (const auto& [m, c] : terms_)
        for (const auto& [v, e] : m.factors()) vs.insert(v);
    return {vs.begin(), vs.end()};
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Polynomial Polynomial::operator-() const {
    Polynomial out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
    return out;
}

Polynomial Polynomial::scaled(const Rational& factor) const {
    Polynomial out;
    if (factor.is_zero()) return out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, c * factor);
    return out;
}

Polynomial Polynomial::substitute(const ExactBindings& bindings) const {
    Polynomial out;
    for (const auto& [m, c] : terms_) {
        Rational coeff = c;
        Monomial rest;
        for (const auto& [v, e] : m.factors()) {
            auto it = bindings.find(v);
            if (it == bindings.end()) {
                rest = rest * Monomial(v, e);
            } else {
                for (std::uint32_t k = 0; k < e; ++k) coeff *= it->second;
            }
        }
        out.add_term(rest, coeff);
    }
    return out;
}

Rational Polynomial::evaluate(const ExactBindings& bindings) const {
    Polynomial p = substitute(bindings);
    if (!p.is_constant()) throw std::invalid_argument("unbound variable in " + p.str());
    return p.constant_value();
}

Interval Polynomial::evaluate(const IntervalBindings& box) const {
    Interval acc{Rational(0)};
    for (const auto& [m, c] : terms_) {
        Interval term{c};
        for (const auto& [v, e] : m.factors()) {
            auto it = box.find(v);
            if (it == box.end()) throw std::invalid_argument("unbound variable " + v.name());
            term = term * it->second.pow(e);
        }
        acc = acc + term;
    }
    return acc;
}

std::map<std::uint32_t, Polynomial> Polynomial::coefficients_in(const Variable& v) const {
    std::map<std::uint32_t, Polynomial> out;
    for (const auto& [m, c] : terms_) out[m.degree_in(v)].add_term(m.without(v), c);
    return out;
}

Rational Polynomial::primitive_scale() const {
    if (terms_.empty()) return Rational(1);
    // Multiply by the lcm of denominators, then divide by the gcd of numerators.
    BigInt l = 1, g = 0;
    for (const auto& [m, c] : terms_) {
        BigInt d = c.denominator();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    for (const auto& [m, c] : terms_) {
        BigInt n = (c * Rational(l)).numerator();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    }
    Rational s(l, g);
    return leading_coefficient().sign() < 0 ? -s : s;
}

Polynomial Polynomial::primitive_integer() const { return scaled(primitive_scale()); }

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational mag = c.abs();
        if (first) {
            if (c.sign() < 0) s += "-";
        } else {
            s += c.sign() < 0 ? " - " : " + ";
        }
        first = false;
        if (m.is_one()) {
            s += mag.is_integer() ? mag.numerator().get_str() : mag.str();
        } else {
            if (mag != Rational(1)) s += (mag.is_integer() ? mag.numerator().get_str() : mag.str()) + "*";
            s += m.str();
        }
    }
    return s;
}

// ---------------------------------------------------------------------------

Polynomial exact_divide(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    Polynomial q, r = a;
    const Monomial& lb = b.leading_monomial();
    const Rational& cb = b.leading_coefficient();
    while (!r.is_zero()) {
        const Monomial& lr = r.leading_monomial();
        if (!lb.divides(lr)) throw std::domain_error("inexact polynomial division");
        Polynomial t(Monomial::quotient(lr, lb), r.leading_coefficient() / cb);
        q += t;
        r -= t * b;
    }
    return q;
}

namespace {

std::optional<Variable> main_variable(const Polynomial& a, const Polynomial& b) {
    std::optional<Variable> best;
    for (const auto* p : {&a, &b})
        for (const auto& v : p->variables())
            if (!best || *best < v) best = v;
    return best;
}

Polynomial content_in(const Polynomial& p, const Variable& v) {
    Polynomial g;
    for (const auto& [d, c] : p.coefficients_in(v)) {
        g = polynomial_gcd(g, c);
        if (g.is_constant() && !g.is_zero()) break;
    }
    return g;
}

Polynomial leading_coefficient_in(const Polynomial& p, const Variable& v) {
    auto cs = p.coefficients_in(v);
    return cs.rbegin()->second;
}

Polynomial pseudo_remainder(Polynomial r, const Polynomial& b, const Variable& v) {
    const std::uint32_t db = b.degree_in(v);
    const Polynomial lb = leading_coefficient_in(b, v);
    while (!r.is_zero() && r.degree_in(v) >= db) {
        Polynomial lr = leading_coefficient_in(r, v);
        Polynomial shift(Monomial(v, r.degree_in(v) - db), Rational(1));
        r = lb * r - lr * shift * b;
    }
    return r;
}

Polynomial primitive_part_in(const Polynomial& p, const Variable& v) {
    Polynomial c = content_in(p, v);
    return exact_divide(p, c).primitive_integer();
}

}  // namespace

Polynomial polynomial_gcd(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero()) return b.primitive_integer();
    if (b.is_zero()) return a.primitive_integer();
    if (a.is_constant() || b.is_constant()) return Polynomial(1);
    const Variable v = *main_variable(a, b);
    if (a.degree_in(v) == 0) return polynomial_gcd(a, content_in(b, v));
    if (b.degree_in(v) == 0) return polynomial_gcd(content_in(a, v), b);

    Polynomial ca = content_in(a, v), cb = content_in(b, v);
    Polynomial c = polynomial_gcd(ca, cb);
    Polynomial pa = exact_divide(a, ca), pb = exact_divide(b, cb);
    if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
    Polynomial g;
    while (true) {
        Polynomial r = pseudo_remainder(pa, pb, v);
        if (r.is_zero()) {
            g = pb;
            break;
        }
        if (r.degree_in(v) == 0) {
            g = Polynomial(1);
            break;
        }
        pa = std::move(pb);
        pb = primitive_part_in(r, v);
    }
    if (g.degree_in(v) > 0) g = primitive_part_in(g, v);
    return (c * g).primitive_integer();
}

}  // namespace bssvm
