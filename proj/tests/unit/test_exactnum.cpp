#include <doctest.h>

#include <random>

#include "bssvm/interval.hpp"
#include "bssvm/rational_function.hpp"
#include "support.hpp"

using namespace bssvm;
using testing::Q;

namespace {

Rational random_rational(std::mt19937_64& rng, bool nonzero = false) {
    std::uniform_int_distribution<long long> num(-1000, 1000), den(1, 1000);
    for (;;) {
        Rational q(BigInt(std::to_string(num(rng))), BigInt(std::to_string(den(rng))));
        if (!nonzero || !q.is_zero()) return q;
    }
}

RationalFunction x1() { return RationalFunction(Variable::input(1)); }

}  // namespace

TEST_CASE("rational arithmetic examples") {
    CHECK(rat_op(Q("1/2"), Q("1/3"), ArithOp::Add) == Q("5/6"));
    CHECK(rat_op(Q("1/2"), Q("0"), ArithOp::Mul) == Q("0"));
    CHECK_THROWS_AS(rat_op(Q("1"), Q("0"), ArithOp::Div), DivisionByZero);

    Rational r = rat_op(Q("2/6"), Q("1"), ArithOp::Add);
    CHECK(r == Q("4/3"));
    // reduction checked against a plain Euclid gcd
    long long a = 2, b = 6;
    while (b) {
        long long t = a % b;
        a = b;
        b = t;
    }
    CHECK(a == 2);
    CHECK(r.numerator() == 4);
    CHECK(r.denominator() == 3);
}

TEST_CASE("rationals print and parse as p/q") {
    CHECK(Q("3").str() == "3/1");
    CHECK(Q("-6/4").str() == "-3/2");
    CHECK(Q("0").str() == "0/1");
    CHECK_THROWS_AS(Q("1/0"), ParseError);
    CHECK_THROWS_AS(Q("abc"), ParseError);
}

TEST_CASE("field laws hold exactly on random triples") {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 300; ++k) {
        Rational a = random_rational(rng), b = random_rational(rng), c = random_rational(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == Rational(0));
        if (!b.is_zero()) CHECK((a / b) * b == a);
    }
}

TEST_CASE("dyadic rounding") {
    CHECK(dyadic_round(Q("1/3"), 2) == Q("1/4"));
    CHECK(Q("1/3") - Q("1/4") == Q("1/12"));
    CHECK(dyadic_round(Q("1/2"), 10) == Q("1/2"));
    CHECK(dyadic_round(Q("-1/3"), 1) == Q("-1/2"));

    std::mt19937_64 rng(12);
    for (int k = 0; k < 300; ++k) {
        Rational q = random_rational(rng);
        unsigned n = static_cast<unsigned>(rng() % 40);
        Rational d = dyadic_round(q, n);
        CHECK((d - q).abs() <= pow2(-static_cast<long>(n)));
        CHECK(d <= q);
        CHECK(is_dyadic(d));
        CHECK((d * pow2(static_cast<long>(n))).is_integer());
    }
}

TEST_CASE("dyadic intervals") {
    auto iv = DyadicInterval::around(Q("1/3"), 5);
    CHECK(iv.lo() <= Q("1/3"));
    CHECK(Q("1/3") <= iv.hi());
    CHECK(iv.hi() - iv.lo() <= pow2(-5));
    CHECK(is_dyadic(iv.lo()));
    CHECK(is_dyadic(iv.hi()));
    CHECK_THROWS(DyadicInterval(Q("1/3"), Q("1/2"), 1));
    CHECK_THROWS(DyadicInterval(Q("1/2"), Q("1/4"), 1));

    auto root2 = sqrt_approximation(2);
    for (unsigned p : {1u, 4u, 20u, 60u}) {
        auto r = root2(p);
        CHECK(r.hi() - r.lo() <= pow2(-static_cast<long>(p)));
        CHECK(r.lo() * r.lo() <= Rational(2));
        CHECK(Rational(2) <= r.hi() * r.hi());
    }
}

TEST_CASE("rational function arithmetic") {
    auto x = x1();
    auto c1 = RationalFunction(Variable::constant(1));
    CHECK(ratfun_op(x, x, ArithOp::Sub).is_zero());
    auto prod = ratfun_op(x, c1, ArithOp::Mul);
    CHECK(prod.denominator() == Polynomial(1));
    CHECK(prod.str() == "x1*c1");

    RationalFunction one(1);
    auto f = (x + one) / (x - one);
    auto g = x - one;
    auto h = ratfun_op(f, g, ArithOp::Mul);
    CHECK(h == x + one);
    std::mt19937_64 rng(13);
    for (int k = 0; k < 5; ++k) {
        Rational p = random_rational(rng);
        if (p == Rational(1)) continue;
        ExactBindings at{{Variable::input(1), p}};
        CHECK(h.evaluate(at) == f.evaluate(at) * g.evaluate(at));
        CHECK(h.evaluate(at) == p + Rational(1));
    }
    CHECK_THROWS_AS(ratfun_op(x, x - x, ArithOp::Div), DivisionByZero);
}

TEST_CASE("canonical form makes equal functions structurally equal") {
    auto x = x1();
    auto y = RationalFunction(Variable::input(2));
    RationalFunction one(1);
    auto a = (x * x - y * y) / (x - y);
    auto b = x + y;
    CHECK(a == b);
    CHECK(RationalFunction(Polynomial(3), x.numerator().scaled(6)) == one / (x * RationalFunction(2)));
    CHECK((one / (RationalFunction(-1) * x)) == (RationalFunction(-1) / x));
}

TEST_CASE("symbolic arithmetic agrees with numeric arithmetic under evaluation") {
    std::mt19937_64 rng(14);
    auto x = x1();
    auto y = RationalFunction(Variable::input(2));
    RationalFunction one(1);
    std::vector<RationalFunction> pool = {x, y, x * y + one, (x - y) / (x + RationalFunction(3)), x * x - y};
    const ArithOp ops[] = {ArithOp::Add, ArithOp::Sub, ArithOp::Mul, ArithOp::Div};
    int checked = 0;
    for (int k = 0; k < 200; ++k) {
        const auto& a = pool[rng() % pool.size()];
        const auto& b = pool[rng() % pool.size()];
        ArithOp op = ops[rng() % 4];
        if (op == ArithOp::Div && b.is_zero()) continue;
        ExactBindings at{{Variable::input(1), random_rational(rng)}, {Variable::input(2), random_rational(rng)}};
        Rational ea, eb;
        try {
            ea = a.evaluate(at);
            eb = b.evaluate(at);
        } catch (const DivisionByZero&) {
            continue;
        }
        if (op == ArithOp::Div && eb.is_zero()) continue;
        auto r = ratfun_op(a, b, op);
        Rational er;
        try {
            er = r.evaluate(at);
        } catch (const DivisionByZero&) {
            continue;
        }
        CHECK(er == rat_op(ea, eb, op));
        ++checked;
    }
    CHECK(checked > 100);
}
