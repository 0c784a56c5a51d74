// Acceptance checks: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bssvm/assembler.hpp"
#include "bssvm/exec.hpp"
#include "bssvm/goedel.hpp"
#include "bssvm/oracle.hpp"
#include "bssvm/records.hpp"
#include "bssvm/stdlib.hpp"
#include "bssvm/transforms.hpp"
#include "random_program.hpp"

using namespace bssvm;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

Rational R(const std::string& s) { return Rational::parse(s); }
Rational pow2n(long n) { return pow2(-n); }

Program fixture(const std::string& name) { return load_program_file(std::string(BSSVM_FIXTURES) + "/" + name + ".bss"); }

Rational scalar(const OutputVector& v) { return v.size() == 1 ? v[0] : Rational(-999999); }

Rational code_of(const Program& p) { return Rational(encode_machine(p).value); }

Program slow_halt(int movs) {
    std::string text;
    for (int k = 0; k < movs; ++k) text += "  MOVI i1 " + std::to_string(k) + "\n";
    return parse_program(text + "  HALT");
}

// QRY on the given machine (empty input), then prints the answer forever
Program asker(const Program& target) {
    return parse_program(".const c0 = " + code_of(target).str() +
                         "\n  MOVI i1 0\n  QRY c0 r5 i1\nnext:\n  OUT 1\n  JMP next");
}

Outcome fail(std::string why) { return {false, std::move(why)}; }

// --- 1 ------------------------------------------------------------------

Outcome strong_contract() {
    std::size_t pairs = 0;
    for (const auto& e : stdlib_entries()) {
        if (e.mode != StreamMode::Strong) continue;
        for (const auto& input : e.curated) {
            auto s = run_strong(e.program, input, 50, {.budget = 10000000});
            if (s.vectors.size() != 50) return fail(e.name + ": short prefix");
            auto v = validate_strong(s.vectors, 50);
            if (auto* bad = std::get_if<Violation>(&v))
                return fail(e.name + ": violation n=" + std::to_string(bad->n) + " m=" + std::to_string(bad->m));
            ++pairs;
        }
    }
    if (pairs < 100) return fail("only " + std::to_string(pairs) + " pairs");
    return {true, std::to_string(pairs) + " (entry, input) pairs valid"};
}

// --- 2 ------------------------------------------------------------------

Outcome pairing() {
    const auto& pair = stdlib_entry("pair").program;
    const auto& unpair = stdlib_entry("unpair").program;
    std::vector<Rational> xs, ys;
    for (int i = 0; i < 50; ++i) {
        xs.push_back(Rational(BigInt(i - 20), BigInt(7)));
        ys.push_back(Rational(BigInt(i - 17), BigInt(9)));
    }
    std::vector<Rational> coarse;
    Rational worst = 0;
    for (const auto& x : xs)
        for (const auto& y : ys) {
            auto p = run_strong(pair, {x, y}, 80, {.budget = 10000000});
            if (p.vectors.size() != 80) return fail("pair produced a short prefix");
            coarse.push_back(scalar(p.vectors[39]));
            auto u = run_strong(unpair, {scalar(p.vectors[79])}, 34, {.budget = 10000000});
            if (u.vectors.size() != 34 || u.vectors.back().size() != 2) return fail("unpair produced a short prefix");
            worst = std::max({worst, (u.vectors.back()[0] - x).abs(), (u.vectors.back()[1] - y).abs()});
        }
    std::sort(coarse.begin(), coarse.end());
    // limits lie within 2^-40 of these, so a gap above 2^-39 separates them
    for (std::size_t k = 1; k < coarse.size(); ++k)
        if (coarse[k] - coarse[k - 1] <= pow2n(39)) return fail("codes not separated at 2^-40");
    if (worst > pow2n(30)) return fail("round trip error " + worst.str());
    return {true, "2500 codes distinct, round trip error <= 2^-30"};
}

// --- 3 ------------------------------------------------------------------

Outcome cantor() {
    const unsigned level = 20;
    std::int64_t pow3 = 1;
    for (unsigned k = 0; k < level; ++k) pow3 *= 3;
    std::vector<std::int64_t> lefts{0};
    for (unsigned k = 0; k < level; ++k) {
        std::vector<std::int64_t> next;
        for (auto l : lefts) {
            next.push_back(l * 3);
            next.push_back(l * 3 + 2);
        }
        lefts.swap(next);
    }
    // distance to the level-20 cover, exact
    auto cover = [&](std::int64_t p, std::int64_t q) {
        __int128 sx = static_cast<__int128>(p) * pow3;
        __int128 best = -1;
        for (auto l : lefts) {
            __int128 lo = static_cast<__int128>(l) * q, hi = static_cast<__int128>(l + 1) * q;
            __int128 d = sx < lo ? lo - sx : (sx > hi ? sx - hi : 0);
            if (best < 0 || d < best) best = d;
        }
        return Rational(BigInt(std::to_string(static_cast<long long>(best))),
                        BigInt(std::to_string(static_cast<long long>(q) * pow3)));
    };
    std::vector<std::pair<std::int64_t, std::int64_t>> points{{0, 1}, {1, 1}, {1, 4}, {3, 4}, {1, 3}, {1, 2}};
    std::mt19937_64 rng(20260);
    while (points.size() < 100) {
        std::int64_t q = std::uniform_int_distribution<std::int64_t>(1, 500)(rng);
        std::int64_t p = std::uniform_int_distribution<std::int64_t>(0, q)(rng);
        points.push_back({p, q});
    }
    const auto& prog = stdlib_entry("cantor_dist").program;
    const Rational tol = Rational(BigInt(1), BigInt(387420489));  // 3^-18
    Rational worst = 0;
    for (auto [p, q] : points) {
        auto s = run_strong(prog, {Rational(BigInt(p), BigInt(q))}, 32, {.budget = 10000000});
        if (s.vectors.size() != 32) return fail("short prefix");
        worst = std::max(worst, (scalar(s.vectors.back()) - cover(p, q)).abs());
    }
    if (worst > tol) return fail("disagreement " + worst.str());
    return {true, "100 rationals within 3^-18 of the cover oracle"};
}

// --- 4 ------------------------------------------------------------------

Outcome thomae() {
    std::vector<Rational> xs{Rational(0)};
    std::set<Rational> seen{Rational(0)};
    std::mt19937_64 rng(8);
    while (xs.size() < 200) {
        long q = std::uniform_int_distribution<long>(1, 80)(rng);
        long p = std::uniform_int_distribution<long>(-3 * q, 3 * q)(rng);
        if (std::gcd(p, q) != 1) continue;
        Rational x{BigInt(p), BigInt(q)};
        if (seen.insert(x).second) xs.push_back(x);
    }
    const auto& prog = stdlib_entry("thomae").program;
    std::size_t latest = 0;
    for (const auto& x : xs) {
        Rational expect = x == Rational(0) ? Rational(1) : Rational(BigInt(1), x.denominator());
        auto s = run_strong(prog, {x}, 40, {.budget = 1000000});
        if (s.vectors.size() != 40) return fail("short prefix at " + x.str());
        std::size_t from = 40;
        while (from > 0 && s.vectors[from - 1] == OutputVector{expect}) --from;
        if (from > 20) return fail("not stationary at 1/q for " + x.str());
        latest = std::max(latest, from + 1);
    }
    return {true, "200 fractions, stationary from output " + std::to_string(latest) + " at the latest"};
}

// --- 5 ------------------------------------------------------------------

Outcome limit_forward() {
    struct Case {
        std::string name;
        Program machine;
        std::map<OracleQuery, bool> truth;
        std::size_t level;  // hand trace
    };
    auto seven = slow_halt(6);  // halts on its 7th step
    std::vector<Case> cases{
        {"halting query", asker(seven), {{{encode_machine(seven), {}}, true}}, 7},
        {"non-halting query", asker(fixture("loop")), {{{encode_machine(fixture("loop")), {}}, false}}, 1},
        {"no query", fixture("halves"), {}, 1},
    };
    std::string detail;
    for (auto& c : cases) {
        Oracle ideal(Table::from_map(c.truth));
        auto strong = run_strong(c.machine, {}, 20, {.budget = 1000000, .oracle = &ideal});
        auto weak = run_weak(strong_oracle_to_weak(c.machine), {}, 20, {.budget = 10000000});
        if (strong.vectors.size() != 20 || weak.vectors.size() != 20) return fail(c.name + ": short prefix");
        std::size_t from = 20;
        while (from > 0 && weak.vectors[from - 1] == strong.vectors[from - 1]) --from;
        if (from + 1 != c.level)
            return fail(c.name + ": stabilizes at " + std::to_string(from + 1) + ", traced " +
                        std::to_string(c.level));
        detail += c.name + " at " + std::to_string(c.level) + "; ";
    }
    return {true, "stabilization " + detail.substr(0, detail.size() - 2)};
}

// --- 6 ------------------------------------------------------------------

Outcome limit_backward() {
    struct Case {
        std::string name;
        Program machine;
        std::vector<Rational> input;
        std::function<bool(long K, long k)> halts;  // closed form of the searcher
        std::optional<Rational> limit;
    };
    std::vector<Case> cases{
        {"halves", fixture("halves"), {}, [](long K, long k) { return K < k; }, Rational(0)},
        {"constant", fixture("constant"), {R("-2/3")}, [](long, long) { return false; }, R("-2/3")},
        {"reciprocal", fixture("reciprocal"), {}, [](long K, long k) { return Rational(BigInt(1), BigInt(K)) > pow2n(k); },
         Rational(0)},
        {"counter", fixture("counter"), {}, [](long, long) { return true; }, std::nullopt},
        {"sign_flip", fixture("sign_flip"), {}, [](long, long) { return true; }, std::nullopt},
    };
    for (auto& c : cases) {
        auto searcher = encode_machine(limit_searcher(c.machine));
        std::size_t d = c.input.size();
        Oracle table(Table{[&](const OracleQuery& q) -> std::optional<bool> {
            if (q.machine_code.value != searcher.value || q.input.size() != d + 2) return std::nullopt;
            long K = q.input[d].numerator().get_si(), k = q.input[d + 1].numerator().get_si();
            return c.halts(K, k);
        }});
        const std::size_t count = 8;
        auto s = run_strong(weak_to_strong(c.machine), c.input, count, {.budget = 3000000, .oracle = &table});
        if (c.limit) {
            if (s.vectors.size() != count) return fail(c.name + ": short prefix");
            if (!std::holds_alternative<Valid>(validate_strong(s.vectors, count))) return fail(c.name + ": invalid");
            for (std::size_t n = 1; n <= count; ++n)
                if ((scalar(s.vectors[n - 1]) - *c.limit).abs() > pow2n(static_cast<long>(n)))
                    return fail(c.name + ": wrong limit");
        } else if (s.vectors.size() >= count || s.halted) {
            return fail(c.name + ": expected a finite unterminated prefix");
        }
    }
    return {true, "3 convergent valid with matching limits, 2 non-convergent finite"};
}

// --- 7 and 8 --------------------------------------------------------------

// decider text: computes membership into r0 (0 or 1) then prints it
Program decider(const std::string& body) {
    return parse_program(".const c0 = 0\n.const c1 = 1\n  SETC r20 c0\n  SETC r21 c1\n" + body +
                         "no:\n  SETC r0 c0\n  OUT 1\n  HALT\nyes:\n  SETC r0 c1\n  OUT 1\n  HALT");
}

Outcome sigma2() {
    struct Case {
        std::string name;
        Program w;
        Rational x;
        std::function<bool(long x, long y, long z)> member;
        bool truth;  // hand-verified value of exists y forall z
    };
    std::vector<Case> cases{
        {"y >= 2", decider(".const c2 = 2\n  SETC r22 c2\n  JLT r1 r22 no\n  JMP yes\n"), Rational(0),
         [](long, long y, long) { return y >= 2; }, true},
        {"empty", decider("  JMP no\n"), Rational(0), [](long, long, long) { return false; }, false},
        {"z != y", decider("  JEQ r1 r2 no\n  JMP yes\n"), Rational(0), [](long, long y, long z) { return z != y; },
         false},
        {"y >= x, x = 5", decider("  JLT r1 r0 no\n  JMP yes\n"), Rational(5), [](long x, long y, long) { return y >= x; },
         true},
    };
    for (auto& c : cases) {
        long x = c.x.numerator().get_si();
        // brute force, with the decider program checked against the formula
        std::optional<long> witness;
        for (long y = 1; y <= 20; ++y) {
            bool all = true;
            for (long z = 1; z <= 20; ++z) {
                bool m = c.member(x, y, z);
                auto o = run_bss(c.w, {c.x, Rational(y), Rational(z)});
                if (!std::holds_alternative<Terminated>(o) ||
                    std::get<Terminated>(o).output != OutputVector{Rational(m ? 1 : 0)})
                    return fail(c.name + ": decider disagrees with the formula");
                all = all && m;
            }
            if (all && !witness) witness = y;
        }
        if (witness.has_value() != c.truth) return fail(c.name + ": brute force disagrees with the hand value");
        auto s = run_weak(sigma2_to_boundedness({c.w, Quantifiers::Sigma2}), {c.x}, SIZE_MAX, {.budget = 100000});
        Rational top = 0;
        for (const auto& v : s.vectors) top = std::max(top, scalar(v));
        bool bounded = top <= Rational(20);
        if (bounded != c.truth) return fail(c.name + ": largest output " + top.str());
        if (c.truth && top != Rational(*witness - 1)) return fail(c.name + ": largest output is not y* - 1");
    }
    return {true, "4 deciders, bounded exactly when the formula holds"};
}

Outcome sigma3() {
    struct Case {
        std::string name;
        Program w;
        bool truth;
        std::optional<long> u;  // the u whose marker may appear
    };
    std::vector<Case> cases{
        {"u = 1 and w >= v", decider("  JEQ r1 r21 u1\n  JMP no\nu1:\n  JLT r3 r2 no\n  JMP yes\n"), true, 1},
        {"empty", decider("  JMP no\n"), false, std::nullopt},
        {"u = 1 and v = 1", decider("  JEQ r1 r21 u1\n  JMP no\nu1:\n  JEQ r2 r21 yes\n  JMP no\n"), false, 1},
    };
    const std::size_t total = 10000;
    for (auto& c : cases) {
        auto s = run_weak(sigma3_to_nonconvergence({c.w, Quantifiers::Sigma3}), {Rational(0)}, total,
                          {.budget = 1000000000});
        if (s.vectors.size() != total) return fail(c.name + ": short prefix");
        std::set<Rational> values;
        std::size_t last = 0;
        for (std::size_t k = 0; k < total; ++k) {
            values.insert(scalar(s.vectors[k]));
            if (scalar(s.vectors[k]) != Rational(0)) last = k + 1;
        }
        std::set<Rational> allowed{Rational(0)};
        if (c.u) allowed.insert(pow2n(*c.u));
        if (!std::includes(allowed.begin(), allowed.end(), values.begin(), values.end()) || !values.count(Rational(0)))
            return fail(c.name + ": unexpected values");
        // recurring: a marker after every tested prefix index 1000, 2000, ..., 9000
        bool recurring = true;
        for (std::size_t p = 1000; p < total; p += 1000) {
            bool after = false;
            for (std::size_t k = p; k < total && !after; ++k) after = scalar(s.vectors[k]) != Rational(0);
            recurring = recurring && after;
        }
        if (recurring != c.truth) return fail(c.name + ": recurrence does not match, last marker " + std::to_string(last));
    }
    return {true, "3 deciders, markers recur exactly when the formula holds"};
}

// --- 9 ------------------------------------------------------------------

Outcome cauchy() {
    struct Case {
        std::string name;
        Program machine;
        std::vector<Rational> input;
        bool cauchy;
    };
    std::vector<Case> cases{{"reciprocal", fixture("reciprocal"), {}, true},
                            {"halves", fixture("halves"), {}, true},
                            {"constant 3/4", fixture("constant"), {R("3/4")}, true},
                            {"counter", fixture("counter"), {}, false},
                            {"sign_flip", fixture("sign_flip"), {}, false}};
    const std::uint64_t total = 10000;
    std::string detail;
    for (auto& c : cases) {
        auto s = run_weak(cauchy_transform(c.machine), c.input, total, {.budget = 100000000});
        if (s.vectors.size() != total) return fail(c.name + ": short prefix");
        std::uint64_t top = 0;
        for (std::uint64_t k = 1; k <= total; ++k) {
            auto [n, m] = cantor_unpair(k);
            top = std::max({top, n, m});
        }
        // tail sup over the entries with both indices past half the range
        std::uint64_t from = top / 2;
        Rational sup = 0;
        for (std::uint64_t k = 1; k <= total; ++k) {
            auto [n, m] = cantor_unpair(k);
            if (n >= from && m >= from) sup = std::max(sup, scalar(s.vectors[k - 1]));
        }
        bool says = sup < Rational(BigInt(1), BigInt(8));
        if (says != c.cauchy) return fail(c.name + ": tail sup " + sup.str());
    }
    return {true, "5 sequences classified (threshold 1/8)"};
}

// --- 10 -----------------------------------------------------------------

Program box_enumerator() {
    return parse_program(R"(.name box_enum
# (j, i): odd i gives (1/j - i, 1/j), even i gives (1, 1 + i)
.const c0 = 0
.const c1 = 1
.const c2 = 2
    SETC r11 c1
    SETC r12 c2
    MOVR r13 r1
parity:
    JLT r13 r12 parity_done
    SUB r13 r13 r12
    JMP parity
parity_done:
    JEQ r13 r11 odd
    ADD r2 r11 r1
    MOVR r1 r11
    MOVR r0 r11
    OUT 3
    HALT
odd:
    DIV r14 r11 r0
    SUB r1 r14 r1
    MOVR r2 r14
    MOVR r0 r11
    OUT 3
    HALT
)");
}

Outcome semideciders() {
    const std::vector<std::uint64_t> budgets{1000, 10000, 100000};
    // per (instance, budget): accepted?
    auto check = [&](const std::string& what, bool positive, const std::function<bool(std::uint64_t)>& accepts)
        -> std::optional<std::string> {
        bool before = false;
        for (auto b : budgets) {
            bool a = accepts(b);
            if (before && !a) return what + ": acceptance lost at budget " + std::to_string(b);
            if (a && !positive) return what + ": negative accepted at budget " + std::to_string(b);
            before = a;
        }
        if (positive && !before) return what + ": not accepted at budget 100000";
        return std::nullopt;
    };

    const auto& semi = stdlib_entry("rational_semidecide").program;
    for (const auto& input : stdlib_entry("rational_semidecide").curated)
        if (auto e = check("rational " + input[0].str(), true, [&](std::uint64_t b) {
                auto o = run_bss(semi, input, {.budget = b});
                return std::holds_alternative<Terminated>(o) && std::get<Terminated>(o).output == OutputVector{1};
            }))
            return fail(*e);
    for (const char* q : {"2", "3"})
        if (auto e = check(std::string("sqrt ") + q, false, [&](std::uint64_t b) {
                SymbolicOptions so;
                so.budget = b;
                so.valuation[Variable::input(1)] = sqrt_approximation(R(q));
                return run_symbolic(semi, 1, so).halted;
            }))
            return fail(*e);

    const auto& flag = stdlib_entry("halting_flag").program;
    std::vector<std::pair<std::vector<Rational>, bool>> machines{
        {{code_of(halt_machine())}, true},
        {{code_of(echo_machine()), Rational(5)}, true},
        {{code_of(slow_halt(40))}, true},
        {{code_of(loop_machine())}, false},
        {{code_of(fixture("counter"))}, false},
    };
    for (auto& [input, positive] : machines)
        if (auto e = check("halting_flag", positive, [&](std::uint64_t b) {
                auto o = run_bss(flag, input, {.budget = b});
                return std::holds_alternative<Terminated>(o) && std::get<Terminated>(o).output == OutputVector{1};
            }))
            return fail(*e);

    // union of A_j = [1/j, 1] is (0, 1]; the stage settles at the least j with 1/j <= x
    auto gen = sigma2_to_weak_semidecision(box_enumerator());
    std::vector<std::pair<std::string, std::optional<long>>> points{{"1", 1},     {"3/4", 2},  {"1/3", 3},
                                                                    {"2/7", 4},   {"0", {}},   {"2", {}},
                                                                    {"-1/2", {}}};
    for (auto& [x, stage] : points) {
        bool wrong_stage = false;
        auto e = check("stage " + x, stage.has_value(), [&](std::uint64_t b) {
            auto s = run_weak(gen, {R(x)}, SIZE_MAX, {.budget = b});
            if (s.vectors.size() < 50) return false;
            auto tail = s.vectors.back();
            for (std::size_t k = s.vectors.size() - 50; k < s.vectors.size(); ++k)
                if (s.vectors[k] != tail) return false;
            if (stage && tail != OutputVector{Rational(*stage)}) wrong_stage = true;
            return true;
        });
        if (e) return fail(*e);
        if (wrong_stage) return fail("stage " + x + ": settled at the wrong stage");
    }
    return {true, "3 semideciders on curated instances, monotone over budgets 10^3..10^5"};
}

// --- 11 -----------------------------------------------------------------

Outcome determinism() {
    std::vector<Program> programs;
    for (const auto& e : stdlib_entries()) programs.push_back(e.program);
    std::mt19937_64 rng(11);
    for (int k = 0; k < 100; ++k) programs.push_back(testing::random_program(rng));
    for (const auto& p : programs) {
        std::string text = print_program(p);
        Program again = parse_program(text);
        if (!(again == p) || print_program(again) != text) return fail("print/parse mismatch on " + p.name());
        if (!(decode_machine(encode_machine(p)) == p)) return fail("code round trip mismatch on " + p.name());
    }
    auto dump = []() {
        std::string out;
        for (const auto& e : stdlib_entries()) {
            if (e.mode == StreamMode::BSS) {
                for (const auto& input : e.curated) out += trace_to_jsonl(record_path(e.program, input, {.budget = 20000}));
                continue;
            }
            for (const auto& input : e.curated) {
                auto s = e.mode == StreamMode::Strong ? run_strong(e.program, input, 20, {.budget = 1000000})
                                                      : run_weak(e.program, input, 20, {.budget = 1000000});
                out += stream_to_jsonl(s.vectors);
            }
        }
        return out;
    };
    std::string first = dump(), second = dump();
    if (first != second || first.empty()) return fail("dumps differ");
    return {true, std::to_string(programs.size()) + " programs round trip, dumps byte-identical (" +
                      std::to_string(first.size()) + " bytes)"};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        std::string name;
        double limit_s;
        Outcome (*run)();
    };
    const std::vector<Criterion> criteria{
        {1, "strong-stream contract", 10, strong_contract},
        {2, "pairing bijection", 30, pairing},
        {3, "cantor distance", 30, cantor},
        {4, "thomae", 5, thomae},
        {5, "limit lemma forward", 10, limit_forward},
        {6, "limit lemma backward", 10, limit_backward},
        {7, "sigma2 boundedness", 10, sigma2},
        {8, "sigma3 non-convergence", 10, sigma3},
        {9, "cauchy transform", 5, cauchy},
        {10, "semideciders", 20, semideciders},
        {11, "determinism and coding", 10, determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = fail(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (o.ok && secs > c.limit_s) o = fail("too slow");
        if (!o.ok) ++failed;
        char timing[64];
        std::snprintf(timing, sizeof timing, "%.2fs/%.0fs", secs, c.limit_s);
        std::cout << (o.ok ? "PASS" : "FAIL") << " " << c.id << " " << c.name << " [" << timing << "] " << o.detail
                  << std::endl;
    }
    return failed ? 1 : 0;
}
