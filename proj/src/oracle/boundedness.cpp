#include "bssvm/builder.hpp"
#include "bssvm/codegen.hpp"
#include "bssvm/oracle.hpp"

namespace bssvm {

namespace {

// Work registers sit far above any input vector.
constexpr std::int64_t kBase = 1 << 20;
constexpr std::int64_t rK = kBase, rOne = kBase + 1, rZero = kBase + 2, rBound = kBase + 3, rNorm = kBase + 4,
                       rT1 = kBase + 5, rT2 = kBase + 6, rY = kBase + 100;

}  // namespace

Program bound_searcher(const GoedelCode& code, std::uint64_t bound) {
    ProgramBuilder b("bound_searcher");
    b.load(rOne, 1);
    b.load(rZero, 0);
    b.load(rBound, Rational(BigInt(std::to_string(bound))));
    b.load(rK, 1);
    b.label("next_output");
    b.emit(Opcode::MOVI, {I(1), I(0)});
    b.emit(Opcode::SIM, {R(rY), b.const_operand(Rational(code.value)), R(rK), R(rZero), R(0), I(1)});
    codegen::norm1(b, rNorm, rY, -1, 1, rZero, 2, 3, 4, rT1, rT2);
    b.emit(Opcode::JLT, {R(rBound), R(rNorm), "exceeded"});
    b.emit(Opcode::ADD, {R(rK), R(rK), R(rOne)});
    b.emit(Opcode::JMP, {"next_output"});
    b.label("exceeded");
    b.emit(Opcode::HALT, {});
    return b.build();
}

BoundedVerdict semidecide_bounded(const GoedelCode& code, const std::vector<Rational>& input, Oracle& oracle,
                                  std::uint64_t bound_cap) {
    if (bound_cap < 1) throw std::invalid_argument("bound_cap must be at least 1");
    for (std::uint64_t n = 1; n <= bound_cap; ++n) {
        OracleQuery q{encode_machine(bound_searcher(code, n)), input};
        if (!oracle.halting_query(q)) return Accept{n};
    }
    return NoAnswer{bound_cap};
}

}  // namespace bssvm
