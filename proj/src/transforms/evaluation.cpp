#include <stdexcept>

#include "bssvm/transforms.hpp"
#include "common.hpp"

namespace bssvm {

using namespace gen;

namespace {

constexpr std::int64_t rN = kS, rH = kS + 1, rT = kS + 2, rJ = kS + 3, rQ = kS + 4, rQs = kS + 5, rB = kS + 6,
                       rLevel = kS + 7;

/// dst := p evaluated with x<k> read from register base + k - 1.
void eval_poly(ProgramBuilder& b, const Polynomial& p, std::int64_t dst, std::int64_t base) {
    b.emit(Opcode::SUB, {R(dst), R(rZero), R(rZero)});
    for (const auto& [mono, coeff] : p.terms()) {
        b.load(rT1, coeff);
        for (const auto& [v, e] : mono.factors()) {
            if (v.kind != Variable::Kind::Input) throw std::invalid_argument("scheme polynomials use inputs only");
            for (std::uint32_t k = 0; k < e; ++k)
                b.emit(Opcode::MUL, {R(rT1), R(rT1), R(base + static_cast<std::int64_t>(v.index) - 1)});
        }
        b.emit(Opcode::ADD, {R(dst), R(dst), R(rT1)});
    }
}

/// Jumps to `outside` unless every |reg[base + i]| <= bound, i < dim.
void box_check(ProgramBuilder& b, std::int64_t base, std::size_t dim, const Rational& bound,
               const std::string& outside) {
    b.load(rT2, bound);
    for (std::size_t i = 0; i < dim; ++i) {
        codegen::abs_value(b, rT1, base + static_cast<std::int64_t>(i), rZero);
        b.emit(Opcode::JLT, {R(rT2), R(rT1), outside});
    }
}

std::uint64_t bit_length_of_power(const BigInt& v) {
    // least e with 2^e >= v
    std::uint64_t e = 0;
    BigInt p = 1;
    while (p < v) {
        p *= 2;
        ++e;
    }
    return e;
}

}  // namespace

Program epihypo_to_strong(const Program& epi, const Program& hypo) {
    ProgramBuilder b("epihypo_to_strong");
    auto epi_code = code_operand(b, epi);
    auto hypo_code = code_operand(b, hypo);
    prologue(b);
    b.load(rN, 0);
    b.load(rH, 1);
    b.label("next_level");
    b.emit(Opcode::ADD, {R(rN), R(rN), R(rOne)});
    b.emit(Opcode::MUL, {R(rH), R(rH), R(rHalf)});
    b.emit(Opcode::SUB, {R(rT), R(rT), R(rT)});
    b.label("stage");
    b.emit(Opcode::ADD, {R(rT), R(rT), R(rOne)});
    b.emit(Opcode::SUB, {R(rJ), R(rJ), R(rJ)});
    b.emit(Opcode::SUB, {R(rQ), R(rQ), R(rQ)});
    b.label("candidate");
    b.emit(Opcode::JEQ, {R(rJ), R(rT), "stage"});
    b.emit(Opcode::ADD, {R(rQs), R(rQ), R(rH)});
    input_plus(b, kQ, {rQs}, iL);
    b.emit(Opcode::RUN, {R(kY1), epi_code, R(rT), R(kQ), I(iL)});
    b.emit(Opcode::JEQ, {R(kY1), R(rOne), "above"});
    b.emit(Opcode::JMP, {"next_candidate"});
    b.label("above");
    b.emit(Opcode::SUB, {R(rQs), R(rQ), R(rH)});
    input_plus(b, kQ, {rQs}, iL);
    b.emit(Opcode::RUN, {R(kY2), hypo_code, R(rT), R(kQ), I(iL)});
    b.emit(Opcode::JEQ, {R(kY2), R(rOne), "found"});
    b.label("next_candidate");
    // 0, h, -h, 2h, -2h, ...
    b.emit(Opcode::JLT, {R(rZero), R(rQ), "flip"});
    b.emit(Opcode::SUB, {R(rQ), R(rZero), R(rQ)});
    b.emit(Opcode::ADD, {R(rQ), R(rQ), R(rH)});
    b.emit(Opcode::JMP, {"advance"});
    b.label("flip");
    b.emit(Opcode::SUB, {R(rQ), R(rZero), R(rQ)});
    b.label("advance");
    b.emit(Opcode::ADD, {R(rJ), R(rJ), R(rOne)});
    b.emit(Opcode::JMP, {"candidate"});
    b.label("found");
    b.emit(Opcode::MOVR, {R(0), R(rQ)});
    b.emit(Opcode::OUT, {Imm(1)});
    b.emit(Opcode::JMP, {"next_level"});
    return b.build();
}

Program strong_charfn_to_decider(const Program& strong) {
    ProgramBuilder b("charfn_decider");
    auto code = code_operand(b, strong);
    prologue(b);
    b.load(rT3, 2);
    b.emit(Opcode::MOVI, {I(iL), I(0)});
    b.emit(Opcode::SIM, {R(kY1), code, R(rT3), R(rZero), R(kX), I(iL)});
    b.emit(Opcode::JLT, {R(rHalf), R(kY1), "member"});
    b.emit(Opcode::MOVR, {R(0), R(rZero)});
    b.emit(Opcode::OUT, {Imm(1)});
    b.emit(Opcode::HALT, {});
    b.label("member");
    b.emit(Opcode::MOVR, {R(0), R(rOne)});
    b.emit(Opcode::OUT, {Imm(1)});
    b.emit(Opcode::HALT, {});
    return b.build();
}

Program continuous_eval(const ApproximationScheme& s) {
    if (!s.poly || s.n_max < 1 || s.m_max < 1) throw std::invalid_argument("incomplete approximation scheme");
    ProgramBuilder b("eval_" + s.name);
    prologue(b);
    for (std::uint64_t m = 1; m <= s.m_max; ++m) {
        auto next = "try_" + std::to_string(m + 1);
        box_check(b, kX, s.dim, Rational(static_cast<long long>(m)), m < s.m_max ? next : "outside");
        b.emit(Opcode::JMP, {"box_" + std::to_string(m)});
        if (m < s.m_max) b.label(next);
    }
    b.label("outside");
    b.emit(Opcode::JMP, {"outside"});
    for (std::uint64_t m = 1; m <= s.m_max; ++m) {
        b.label("box_" + std::to_string(m));
        for (std::uint64_t n = 1; n <= s.n_max; ++n) {
            eval_poly(b, s.poly(n, m), 0, kX);
            b.emit(Opcode::OUT, {Imm(1)});
        }
        b.emit(Opcode::HALT, {});
    }
    return b.build();
}

Program compose_strong_continuous(const Program& g, const ApproximationScheme& s) {
    if (!s.poly || !s.modulus || s.n_max < 1 || s.m_max < 2)
        throw std::invalid_argument("composition needs polynomials, moduli and m_max >= 2");
    ProgramBuilder b("compose_" + s.name);
    auto code = code_operand(b, g);
    prologue(b);
    b.emit(Opcode::MOVI, {I(iL), I(0)});
    b.emit(Opcode::SIM, {R(kY1), code, R(rOne), R(rZero), R(kX), I(iL)});
    for (std::uint64_t m = 1; m < s.m_max; ++m) {
        auto next = "try_" + std::to_string(m + 1);
        box_check(b, kY1, s.dim, Rational(static_cast<long long>(m)), m + 1 < s.m_max ? next : "outside");
        b.emit(Opcode::JMP, {"box_" + std::to_string(m + 1)});
        if (m + 1 < s.m_max) b.label(next);
    }
    b.label("outside");
    b.emit(Opcode::JMP, {"outside"});
    for (std::uint64_t mm = 2; mm <= s.m_max; ++mm) {
        b.label("box_" + std::to_string(mm));
        for (std::uint64_t n = 1; n <= s.n_max; ++n) {
            std::uint64_t mu = std::max<std::uint64_t>(s.modulus(n + 1, mm), 1);
            b.load(rLevel, Rational(static_cast<long long>(mu)));
            b.emit(Opcode::MOVI, {I(iL + 1), I(0)});
            b.emit(Opcode::SIM, {R(kY2), code, R(rLevel), R(rZero), R(kX), I(iL + 1)});
            eval_poly(b, s.poly(n + 1, mm), 0, kY2);
            b.emit(Opcode::OUT, {Imm(1)});
        }
        b.emit(Opcode::HALT, {});
    }
    return b.build();
}

std::vector<std::string> scheme_names() { return {"double", "exp", "identity", "square"}; }

ApproximationScheme named_scheme(const std::string& name) {
    ApproximationScheme s;
    s.name = name;
    Polynomial x(Variable::input(1));
    if (name == "identity") {
        s.poly = [x](std::uint64_t, std::uint64_t) { return x; };
        s.modulus = [](std::uint64_t n, std::uint64_t) { return n; };
    } else if (name == "double") {
        s.poly = [x](std::uint64_t, std::uint64_t) { return x.scaled(2); };
        s.modulus = [](std::uint64_t n, std::uint64_t) { return n + 1; };
    } else if (name == "square") {
        s.poly = [x](std::uint64_t, std::uint64_t) { return x * x; };
        // |y^2 - y'^2| <= 2m |y - y'|
        s.modulus = [](std::uint64_t n, std::uint64_t m) { return n + bit_length_of_power(BigInt(2 * m)); };
    } else if (name == "exp") {
        // Taylor polynomial of degree k with 3^m m^(k+1) / (k+1)! <= 2^-n
        s.poly = [x](std::uint64_t n, std::uint64_t m) {
            BigInt three_m = 1;
            for (std::uint64_t j = 0; j < m; ++j) three_m *= 3;
            Rational limit = pow2(-static_cast<long>(n));
            Polynomial sum(1), term(1);
            BigInt fact = 1;
            BigInt mpow = 1;
            for (std::uint64_t k = 1;; ++k) {
                term = term * x;
                fact *= static_cast<unsigned long>(k);
                sum += term.scaled(Rational(BigInt(1), fact));
                mpow = 1;
                for (std::uint64_t j = 0; j <= k; ++j) mpow *= static_cast<unsigned long>(m);
                if (Rational(three_m * mpow, fact * static_cast<unsigned long>(k + 1)) <= limit) break;
            }
            return sum;
        };
        // derivative bounded by e^m <= 3^m
        s.modulus = [](std::uint64_t n, std::uint64_t m) {
            BigInt three_m = 1;
            for (std::uint64_t j = 0; j < m; ++j) three_m *= 3;
            return n + bit_length_of_power(three_m);
        };
        s.n_max = 20;
        s.m_max = 2;
    } else {
        throw std::out_of_range("no approximation scheme named '" + name + "'");
    }
    return s;
}

}  // namespace bssvm
