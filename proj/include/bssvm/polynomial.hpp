#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bssvm/interval.hpp"
#include "bssvm/rational.hpp"

namespace bssvm {

/// A symbolic variable: input x<k> (1-based, as in (x1, ..., xd)) or program
/// constant c<k> (0-based, matching the constant table).
struct Variable {
    enum class Kind : std::uint8_t { Input, Constant };
    Kind kind = Kind::Input;
    std::uint32_t index = 1;

    static Variable input(std::uint32_t k) { return {Kind::Input, k}; }
    static Variable constant(std::uint32_t k) { return {Kind::Constant, k}; }
    /// Parses "x3" or "c0".
    static Variable parse(const std::string& name);
    std::string name() const;

    friend auto operator<=>(const Variable&, const Variable&) = default;
};

/// Power product, stored as (variable, exponent > 0) pairs sorted by variable.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(Variable v, std::uint32_t exponent = 1);

    const std::vector<std::pair<Variable, std::uint32_t>>& factors() const { return factors_; }
    std::uint32_t degree() const;
    std::uint32_t degree_in(const Variable& v) const;
    bool is_one() const { return factors_.empty(); }
    /// True when this divides `other`.
    bool divides(const Monomial& other) const;

    friend Monomial operator*(const Monomial& a, const Monomial& b);
    /// Requires a.divides(b); returns b / a.
    static Monomial quotient(const Monomial& b, const Monomial& a);
    /// Drops variable v entirely.
    Monomial without(const Variable& v) const;

    std::string str() const;

    friend bool operator==(const Monomial&, const Monomial&) = default;

private:
    std::vector<std::pair<Variable, std::uint32_t>> factors_;
};

/// Graded lexicographic order: total degree first, then lex with smaller
/// variables (x1 < x2 < ... < c0 < c1 ...) ranking higher, as in x1 > x2.
bool grlex_less(const Monomial& a, const Monomial& b);

struct GrlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const { return grlex_less(b, a); }
};

/// Exact substitution for some variables; anything unbound stays symbolic.
using ExactBindings = std::map<Variable, Rational>;
using IntervalBindings = std::map<Variable, Interval>;

/// Multivariate polynomial over Q. Terms are kept in descending grlex order
/// with no zero coefficients, so the representation is canonical.
class Polynomial {
public:
    using Terms = std::map<Monomial, Rational, GrlexGreater>;

    Polynomial() = default;
    Polynomial(const Rational& constant);
    Polynomial(long long constant) : Polynomial(Rational(constant)) {}
    explicit Polynomial(const Variable& v);
    Polynomial(const Monomial& m, const Rational& coefficient);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Value of a constant polynomial (0 for the zero polynomial).
    Rational constant_value() const;
    std::uint32_t total_degree() const;
    std::uint32_t degree_in(const Variable& v) const;
    std::vector<Variable> variables() const;

    /// Leading term in grlex order; requires !is_zero().
    const Monomial& leading_monomial() const { return terms_.begin()->first; }
    const Rational& leading_coefficient() const { return terms_.begin()->second; }

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial scaled(const Rational& factor) const;

    /// Substitutes the bound variables.
    Polynomial substitute(const ExactBindings& bindings) const;
    /// Full evaluation; throws std::invalid_argument for an unbound variable.
    Rational evaluate(const ExactBindings& bindings) const;
    /// Interval enclosure of the value over a box.
    Interval evaluate(const IntervalBindings& box) const;

    /// Coefficients when viewed as a univariate polynomial in v, keyed by the
    /// power of v.
    std::map<std::uint32_t, Polynomial> coefficients_in(const Variable& v) const;

    /// Scales by a nonzero rational so coefficients are coprime integers and
    /// the leading coefficient is positive.
    Polynomial primitive_integer() const;
    /// The scalar c with primitive_integer() == c * (*this).
    Rational primitive_scale() const;

    std::string str() const;

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    void add_term(const Monomial& m, const Rational& c);
    Terms terms_;
};

/// Exact quotient a / b; throws std::domain_error if b does not divide a.
Polynomial exact_divide(const Polynomial& a, const Polynomial& b);

/// Greatest common divisor over Q[vars], normalized by primitive_integer();
/// gcd(0, 0) = 0.
Polynomial polynomial_gcd(const Polynomial& a, const Polynomial& b);

}  // namespace bssvm
