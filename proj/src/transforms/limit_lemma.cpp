#include "bssvm/transforms.hpp"

#include "common.hpp"

namespace bssvm {

using namespace gen;

namespace {

constexpr std::int64_t rK = kS, rk = kS + 1, rM = kS + 2, rE = kS + 3, rEm = kS + 4, rN = kS + 5, rI = kS + 6,
                       rJ = kS + 7, rEi = kS + 8, rEj = kS + 9;

}  // namespace

Program limit_searcher(const Program& weak) {
    ProgramBuilder b("limit_searcher");
    auto code = code_operand(b, weak);
    prologue(b);
    // input is (x, K, k); iB points just past it
    b.emit(Opcode::MOVI, {I(iL), I(0)});
    b.emit(Opcode::DECI, {I(iL)});
    b.emit(Opcode::DECI, {I(iL)});
    b.emit(Opcode::DECI, {I(iB)});
    b.emit(Opcode::LOADI, {R(rk), I(iB)});
    b.emit(Opcode::DECI, {I(iB)});
    b.emit(Opcode::LOADI, {R(rK), I(iB)});
    pow2_neg(b, rE, rk);
    pow2_neg(b, rEm, rK);
    b.emit(Opcode::MOVR, {R(rM), R(rK)});
    b.emit(Opcode::MOVI, {I(iL + 1), I(iL)});
    b.emit(Opcode::SIM, {R(kY1), code, R(rK), R(rZero), R(kX), I(iL + 1)});
    b.label("next_m");
    b.emit(Opcode::ADD, {R(rM), R(rM), R(rOne)});
    b.emit(Opcode::MUL, {R(rEm), R(rEm), R(rHalf)});
    b.emit(Opcode::MOVI, {I(iL + 2), I(iL)});
    b.emit(Opcode::SIM, {R(kY2), code, R(rM), R(rZero), R(kX), I(iL + 2)});
    codegen::index_equal(b, iL + 1, iL + 2, 4, 5, "same_dim", "found");
    b.label("same_dim");
    codegen::norm1(b, rNorm, kY1, kY2, iL + 1, rZero, iA, iB, iC, rT1, rT2);
    b.emit(Opcode::ADD, {R(rT3), R(rE), R(rEm)});
    b.emit(Opcode::JLT, {R(rT3), R(rNorm), "found"});
    b.emit(Opcode::JMP, {"next_m"});
    b.label("found");
    b.emit(Opcode::HALT, {});
    return b.build();
}

Program weak_to_strong(const Program& weak) {
    ProgramBuilder b("weak_to_strong");
    auto code = code_operand(b, weak);
    auto searcher = code_operand(b, limit_searcher(weak));
    prologue(b);
    b.load(rK, 0);
    b.load(rk, 0);
    b.label("next_k");
    b.emit(Opcode::ADD, {R(rk), R(rk), R(rOne)});
    b.emit(Opcode::JLT, {R(rK), R(rk), "raise"});
    b.emit(Opcode::JMP, {"ask"});
    b.label("raise");
    b.emit(Opcode::MOVR, {R(rK), R(rk)});
    b.label("ask");
    input_plus(b, kQ, {rK, rk}, iL);
    b.emit(Opcode::QRY, {searcher, R(kQ), I(iL)});
    b.emit(Opcode::JEQ, {R(0), R(rOne), "bump"});
    b.emit(Opcode::MOVI, {I(iL + 1), I(0)});
    b.emit(Opcode::SIM, {R(kY1), code, R(rK), R(rZero), R(kX), I(iL + 1)});
    emit_block(b, kY1, iL + 1);
    b.emit(Opcode::JMP, {"next_k"});
    b.label("bump");
    b.emit(Opcode::ADD, {R(rK), R(rK), R(rOne)});
    b.emit(Opcode::JMP, {"ask"});
    return b.build();
}

Program strong_oracle_to_weak(const Program& strong) {
    ProgramBuilder b("strong_oracle_to_weak");
    auto code = code_operand(b, strong);
    prologue(b);
    b.load(rN, 0);
    b.load(rM, 0);
    b.label("next_level");
    b.emit(Opcode::ADD, {R(rN), R(rN), R(rOne)});
    b.emit(Opcode::JLT, {R(rM), R(rN), "raise"});
    b.emit(Opcode::JMP, {"check"});
    b.label("raise");
    b.emit(Opcode::MOVR, {R(rM), R(rN)});
    b.label("check");
    b.emit(Opcode::MOVR, {R(rI), R(rOne)});
    b.emit(Opcode::MOVR, {R(rEi), R(rHalf)});
    b.label("loop_i");
    b.emit(Opcode::JEQ, {R(rI), R(rN), "passed"});
    b.emit(Opcode::ADD, {R(rJ), R(rI), R(rOne)});
    b.emit(Opcode::MUL, {R(rEj), R(rEi), R(rHalf)});
    b.label("loop_j");
    b.emit(Opcode::JLT, {R(rN), R(rJ), "next_i"});
    b.emit(Opcode::MOVI, {I(iL), I(0)});
    b.emit(Opcode::SIM, {R(kY1), code, R(rI), R(rM), R(kX), I(iL)});
    b.emit(Opcode::MOVI, {I(iL + 1), I(0)});
    b.emit(Opcode::SIM, {R(kY2), code, R(rJ), R(rM), R(kX), I(iL + 1)});
    codegen::index_equal(b, iL, iL + 1, 4, 5, "same_dim", "violated");
    b.label("same_dim");
    codegen::norm1(b, rNorm, kY1, kY2, iL, rZero, iA, iB, iC, rT1, rT2);
    b.emit(Opcode::ADD, {R(rT3), R(rEi), R(rEj)});
    b.emit(Opcode::JLT, {R(rT3), R(rNorm), "violated"});
    b.emit(Opcode::ADD, {R(rJ), R(rJ), R(rOne)});
    b.emit(Opcode::MUL, {R(rEj), R(rEj), R(rHalf)});
    b.emit(Opcode::JMP, {"loop_j"});
    b.label("next_i");
    b.emit(Opcode::ADD, {R(rI), R(rI), R(rOne)});
    b.emit(Opcode::MUL, {R(rEi), R(rEi), R(rHalf)});
    b.emit(Opcode::JMP, {"loop_i"});
    b.label("passed");
    b.emit(Opcode::MOVI, {I(iL), I(0)});
    b.emit(Opcode::SIM, {R(kY1), code, R(rN), R(rM), R(kX), I(iL)});
    emit_block(b, kY1, iL);
    b.emit(Opcode::JMP, {"next_level"});
    b.label("violated");
    b.emit(Opcode::ADD, {R(rM), R(rM), R(rOne)});
    b.emit(Opcode::JMP, {"check"});
    return b.build();
}

}  // namespace bssvm
