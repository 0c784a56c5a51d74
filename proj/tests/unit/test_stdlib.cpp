#include <doctest.h>

#include <algorithm>

#include "bssvm/goedel.hpp"
#include "bssvm/stdlib.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace bssvm;
using testing::Q;
using testing::V;

namespace {

Rational code_of(const Program& p) { return Rational(encode_machine(p).value); }

Rational scalar(const OutputVector& v) {
    REQUIRE(v.size() == 1);
    return v[0];
}

}  // namespace

TEST_CASE("catalog") {
    const auto& all = stdlib_entries();
    REQUIRE(all.size() >= 11);
    CHECK(std::is_sorted(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.name < b.name; }));
    for (const auto& e : all) {
        CAPTURE(e.name);
        CHECK(e.program.name() == e.name);
        CHECK_FALSE(e.contract.empty());
        CHECK_FALSE(e.curated.empty());
        for (const auto& ins : e.program.instructions())
            CHECK_NOTHROW(validate_instruction(ins, e.program.instructions().size(), e.program.constants().size()));
    }
    CHECK_THROWS_AS(stdlib_entry("nope"), std::out_of_range);
}

TEST_CASE("strong entries stay within their bounds on curated inputs") {
    for (const auto& e : stdlib_entries()) {
        if (e.mode != StreamMode::Strong) continue;
        CAPTURE(e.name);
        for (const auto& input : e.curated) {
            auto s = run_strong(e.program, input, 50, {.budget = 5000000});
            REQUIRE(s.vectors.size() == 50);
            CHECK(std::holds_alternative<Valid>(validate_strong(s.vectors, 50)));
        }
    }
}

TEST_CASE("thomae") {
    for (const auto& input : stdlib_entry("thomae").curated) {
        const Rational& x = input[0];
        Rational expect = x == Rational(0) ? Rational(1) : Rational(BigInt(1), x.denominator());
        auto s = run_strong(stdlib_entry("thomae").program, input, 30, {.budget = 5000000});
        REQUIRE(s.vectors.size() == 30);
        for (long n = 1; n <= 30; ++n) CHECK((scalar(s.vectors[n - 1]) - expect).abs() <= pow2(-n));
    }
}

TEST_CASE("cantor distance") {
    for (const auto& input : stdlib_entry("cantor_dist").curated) {
        CAPTURE(input[0]);
        Rational cover = testing::cantor_cover_distance(input[0], 12);
        auto s = run_strong(stdlib_entry("cantor_dist").program, input, 10, {.budget = 5000000});
        REQUIRE(s.vectors.size() == 10);
        for (long n = 1; n <= 10; ++n) {
            Rational y = scalar(s.vectors[n - 1]);
            CHECK(y >= cover - pow2(-n));
            CHECK(y <= cover + pow2(-12) + pow2(-n));
        }
    }
}

TEST_CASE("pairing inverts") {
    const auto& pair = stdlib_entry("pair").program;
    const auto& unpair = stdlib_entry("unpair").program;
    for (auto [x, y] : {std::pair{"1/2", "1/4"}, {"3/8", "5/8"}, {"0", "3/4"}}) {
        CAPTURE(x);
        CAPTURE(y);
        Rational z = testing::interleave(Q(x), Q(y), 20);
        auto p = run_strong(pair, V({x, y}), 20);
        REQUIRE(p.vectors.size() == 20);
        CHECK((scalar(p.vectors[19]) - z).abs() <= pow2(-20));
        auto u = run_strong(unpair, {z}, 20, {.budget = 5000000});
        REQUIRE(u.vectors.size() == 20);
        auto last = u.vectors.back();
        REQUIRE(last.size() == 2);
        CHECK((last[0] - Q(x)).abs() + (last[1] - Q(y)).abs() <= pow2(-18));
    }
}

TEST_CASE("terminating entries") {
    const auto& semi = stdlib_entry("rational_semidecide").program;
    for (const auto& input : stdlib_entry("rational_semidecide").curated) {
        auto o = run_bss(semi, input, {.budget = 5000000});
        REQUIRE(std::holds_alternative<Terminated>(o));
        CHECK(std::get<Terminated>(o).output == V({"1"}));
    }
    const auto& chi = stdlib_entry("char_unit_interval").program;
    for (const auto& input : stdlib_entry("char_unit_interval").curated) {
        bool inside = input[0] >= Rational(0) && input[0] < Rational(1);
        auto o = run_bss(chi, input);
        REQUIRE(std::holds_alternative<Terminated>(o));
        CHECK(std::get<Terminated>(o).output == V({inside ? "1" : "0"}));
    }
    const auto& flag = stdlib_entry("halting_flag").program;
    CHECK(std::get<Terminated>(run_bss(flag, {code_of(halt_machine())})).output == V({"1"}));
    CHECK(std::get<Terminated>(run_bss(flag, {code_of(echo_machine()), Q("5")})).output == V({"1"}));
    CHECK(std::holds_alternative<Diverged>(run_bss(flag, {code_of(loop_machine())}, {.budget = 20000})));
}

TEST_CASE("weak entries") {
    // cohalting flag converges to 1 on machines that never halt
    for (const auto& input : stdlib_entry("cohalting_flag").curated) {
        auto s = run_weak(stdlib_entry("cohalting_flag").program, input, 30, {.budget = 5000000});
        REQUIRE(s.vectors.size() == 30);
        CHECK(s.vectors.back() == V({"1"}));
    }
    for (const auto& input : stdlib_entry("weak_chi_rational").curated) {
        auto s = run_weak(stdlib_entry("weak_chi_rational").program, input, 400, {.budget = 5000000});
        REQUIRE(s.vectors.size() == 400);
        CHECK(s.vectors.back() == V({"1"}));
    }
    // q_cross_irrational on a rational x: the outputs shrink to 0
    for (const auto& input : stdlib_entry("q_cross_irrational").curated) {
        auto s = run_weak(stdlib_entry("q_cross_irrational").program, input, 40, {.budget = 5000000});
        REQUIRE(s.vectors.size() == 40);
        CHECK(scalar(s.vectors.back()) <= pow2(-30));
    }
    auto r = run_weak(stdlib_entry("bounded_reciprocal").program, stdlib_entry("bounded_reciprocal").curated[0], 20,
                      {.budget = 5000000});
    REQUIRE(r.vectors.size() == 20);
    for (const auto& v : r.vectors) CHECK(scalar(v) <= Rational(20));
}
