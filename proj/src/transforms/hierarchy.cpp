#include <stdexcept>

#include "bssvm/transforms.hpp"
#include "common.hpp"

namespace bssvm {

using namespace gen;

namespace {

constexpr std::int64_t rS = kS, rA = kS + 1, rN = kS + 2, rM = kS + 3, rY = kS + 4, rZ = kS + 5, rT = kS + 6,
                       rU = kS + 7, rP = kS + 8, rV = kS + 9, rW = kS + 10, rI = kS + 11;

void require(const DeciderSpec& w, Quantifiers q) {
    if (w.arity != q) throw std::invalid_argument("decider has the wrong quantifier shape");
}

}  // namespace

Program cauchy_transform(const Program& p) {
    ProgramBuilder b("cauchy_transform");
    auto code = code_operand(b, p);
    prologue(b);
    b.load(rS, 0);
    b.label("diagonal");
    b.emit(Opcode::SUB, {R(rA), R(rA), R(rA)});
    b.label("entry");
    b.emit(Opcode::ADD, {R(rN), R(rA), R(rOne)});
    b.emit(Opcode::SUB, {R(rM), R(rS), R(rA)});
    b.emit(Opcode::ADD, {R(rM), R(rM), R(rOne)});
    b.emit(Opcode::MOVI, {I(iL), I(0)});
    b.emit(Opcode::SIM, {R(kY1), code, R(rN), R(rZero), R(kX), I(iL)});
    b.emit(Opcode::MOVI, {I(iL + 1), I(0)});
    b.emit(Opcode::SIM, {R(kY2), code, R(rM), R(rZero), R(kX), I(iL + 1)});
    codegen::norm1(b, rNorm, kY1, kY2, iL, rZero, iA, iB, iC, rT1, rT2);
    b.emit(Opcode::MOVR, {R(0), R(rNorm)});
    b.emit(Opcode::OUT, {Imm(1)});
    b.emit(Opcode::JEQ, {R(rA), R(rS), "next_diagonal"});
    b.emit(Opcode::ADD, {R(rA), R(rA), R(rOne)});
    b.emit(Opcode::JMP, {"entry"});
    b.label("next_diagonal");
    b.emit(Opcode::ADD, {R(rS), R(rS), R(rOne)});
    b.emit(Opcode::JMP, {"diagonal"});
    return b.build();
}

std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t k) {
    if (k == 0) throw std::invalid_argument("outputs are numbered from 1");
    std::uint64_t s = 0, before = 0;
    while (before + s + 1 < k) {
        before += s + 1;
        ++s;
    }
    std::uint64_t a = k - 1 - before;
    return {a + 1, s - a + 1};
}

Program sigma2_to_boundedness(const DeciderSpec& w) {
    require(w, Quantifiers::Sigma2);
    ProgramBuilder b("sigma2_boundedness");
    auto code = code_operand(b, w.program);
    prologue(b);
    b.load(rY, 1);
    b.load(rZ, 1);
    b.label("check");
    input_plus(b, kQ, {rY, rZ}, iL);
    b.emit(Opcode::MOVR, {R(kY1 + 1), R(rZero)});
    b.emit(Opcode::RUN, {R(kY1), code, R(rZero), R(kQ), I(iL)});
    b.emit(Opcode::JEQ, {R(kY1 + 1), R(rOne), "member"});
    b.emit(Opcode::MOVR, {R(0), R(rY)});
    b.emit(Opcode::OUT, {Imm(1)});
    b.emit(Opcode::ADD, {R(rY), R(rY), R(rOne)});
    b.emit(Opcode::MOVR, {R(rZ), R(rOne)});
    b.emit(Opcode::JMP, {"check"});
    b.label("member");
    b.emit(Opcode::ADD, {R(rZ), R(rZ), R(rOne)});
    b.emit(Opcode::JMP, {"check"});
    return b.build();
}

Program sigma3_to_nonconvergence(const DeciderSpec& w) {
    require(w, Quantifiers::Sigma3);
    ProgramBuilder b("sigma3_nonconvergence");
    auto code = code_operand(b, w.program);
    prologue(b);
    b.load(rT, 0);
    b.label("stage");
    b.emit(Opcode::ADD, {R(rT), R(rT), R(rOne)});
    b.emit(Opcode::MOVR, {R(rU), R(rOne)});
    b.emit(Opcode::MOVR, {R(rP), R(rHalf)});
    b.label("process");
    b.emit(Opcode::JLT, {R(rT), R(rU), "stage"});
    // per-u state: v - 1 in kArr1[u], w - 1 in kArr2[u]
    index_at(b, iL + 1, kArr1, rU);
    b.emit(Opcode::LOADI, {R(rV), I(iL + 1)});
    b.emit(Opcode::ADD, {R(rV), R(rV), R(rOne)});
    index_at(b, iL + 2, kArr2, rU);
    b.emit(Opcode::LOADI, {R(rW), I(iL + 2)});
    b.emit(Opcode::ADD, {R(rW), R(rW), R(rOne)});
    b.emit(Opcode::MOVR, {R(0), R(rZero)});
    b.emit(Opcode::OUT, {Imm(1)});
    input_plus(b, kQ, {rU, rV, rW}, iL);
    b.emit(Opcode::MOVR, {R(kY1 + 1), R(rZero)});
    b.emit(Opcode::RUN, {R(kY1), code, R(rZero), R(kQ), I(iL)});
    b.emit(Opcode::JEQ, {R(kY1 + 1), R(rOne), "witness"});
    b.emit(Opcode::STOREI, {I(iL + 2), R(rW)});
    b.emit(Opcode::JMP, {"next_u"});
    b.label("witness");
    b.emit(Opcode::MOVR, {R(0), R(rP)});
    b.emit(Opcode::OUT, {Imm(1)});
    b.emit(Opcode::STOREI, {I(iL + 1), R(rV)});
    b.emit(Opcode::STOREI, {I(iL + 2), R(rZero)});
    b.label("next_u");
    b.emit(Opcode::ADD, {R(rU), R(rU), R(rOne)});
    b.emit(Opcode::MUL, {R(rP), R(rP), R(rHalf)});
    b.emit(Opcode::JMP, {"process"});
    return b.build();
}

Program sigma2_to_weak_semidecision(const Program& enumerator) {
    ProgramBuilder b("sigma2_weak_semidecision");
    auto code = code_operand(b, enumerator);
    prologue(b);
    b.load(rN, 1);
    b.load(rI, 1);
    b.label("check");
    b.emit(Opcode::MOVR, {R(kQ), R(rN)});
    b.emit(Opcode::MOVR, {R(kQ + 1), R(rI)});
    b.emit(Opcode::MOVI, {I(iL), Imm(2)});
    b.emit(Opcode::MOVR, {R(kY1 + 1), R(rZero)});
    b.emit(Opcode::RUN, {R(kY1), code, R(rZero), R(kQ), I(iL)});
    b.emit(Opcode::JEQ, {R(kY1 + 1), R(rOne), "box"});
    b.emit(Opcode::JMP, {"miss"});
    b.label("box");
    // x at kX, lower corner at kY1 + 2, upper corner d entries later
    b.emit(Opcode::MOVI, {I(4), Imm(kX)});
    b.emit(Opcode::MOVI, {I(5), Imm(kY1 + 2)});
    b.emit(Opcode::MOVI, {I(6), Imm(kY1 + 2)});
    b.emit(Opcode::MOVI, {I(7), I(0)});
    b.label("skip");
    b.emit(Opcode::JZI, {I(7), "skipped"});
    b.emit(Opcode::INCI, {I(6)});
    b.emit(Opcode::DECI, {I(7)});
    b.emit(Opcode::JMP, {"skip"});
    b.label("skipped");
    b.emit(Opcode::MOVI, {I(7), I(0)});
    b.label("inside");
    b.emit(Opcode::JZI, {I(7), "advance"});
    b.emit(Opcode::LOADI, {R(rT1), I(4)});
    b.emit(Opcode::LOADI, {R(rT2), I(5)});
    b.emit(Opcode::JLT, {R(rT2), R(rT1), "above_lower"});
    b.emit(Opcode::JMP, {"miss"});
    b.label("above_lower");
    b.emit(Opcode::LOADI, {R(rT2), I(6)});
    b.emit(Opcode::JLT, {R(rT1), R(rT2), "coordinate_ok"});
    b.emit(Opcode::JMP, {"miss"});
    b.label("coordinate_ok");
    b.emit(Opcode::INCI, {I(4)});
    b.emit(Opcode::INCI, {I(5)});
    b.emit(Opcode::INCI, {I(6)});
    b.emit(Opcode::DECI, {I(7)});
    b.emit(Opcode::JMP, {"inside"});
    b.label("advance");
    b.emit(Opcode::ADD, {R(rN), R(rN), R(rOne)});
    b.emit(Opcode::MOVR, {R(rI), R(rOne)});
    b.emit(Opcode::JMP, {"report"});
    b.label("miss");
    b.emit(Opcode::ADD, {R(rI), R(rI), R(rOne)});
    b.label("report");
    b.emit(Opcode::MOVR, {R(0), R(rN)});
    b.emit(Opcode::OUT, {Imm(1)});
    b.emit(Opcode::JMP, {"check"});
    return b.build();
}

}  // namespace bssvm
