#pragma once

// Register layout and small emitters shared by the program generators. All
// work registers live far above the input vector; the input itself is
// copied to kX at start because outputs overwrite r0, r1, ...

#include <vector>

#include "bssvm/builder.hpp"
#include "bssvm/codegen.hpp"
#include "bssvm/goedel.hpp"

namespace bssvm::gen {

constexpr std::int64_t kB = std::int64_t{1} << 20;
constexpr std::int64_t rZero = kB, rOne = kB + 1, rHalf = kB + 2, rT1 = kB + 3, rT2 = kB + 4, rT3 = kB + 5,
                       rNorm = kB + 6, rAcc = kB + 7;
// free scalars for the generators: kB + 20 ... kB + 999
constexpr std::int64_t kS = kB + 20;

// vector blocks
constexpr std::int64_t kX = kB + 100000;
constexpr std::int64_t kQ = kB + 200000;
constexpr std::int64_t kY1 = kB + 300000;
constexpr std::int64_t kY2 = kB + 400000;
constexpr std::int64_t kArr1 = kB + 500000;
constexpr std::int64_t kArr2 = kB + 600000;

// index scratch used by the emitters below: i1, i2, i3
constexpr std::int64_t iA = 1, iB = 2, iC = 3;
// free index registers for the generators: i10 and up
constexpr std::int64_t iL = 10;

inline Operand code_operand(ProgramBuilder& b, const Program& p) {
    return b.const_operand(Rational(encode_machine(p).value));
}

/// Loads 0, 1, 1/2 and copies the input (length i0) to kX.
inline void prologue(ProgramBuilder& b) {
    b.load(rZero, 0);
    b.load(rOne, 1);
    b.load(rHalf, Rational(1, 2));
    codegen::copy_block(b, kX, 0, 0, iA, iB, iC, rT1);
}

/// dst block := input ++ extra registers; len := i0 + extra.size().
inline void input_plus(ProgramBuilder& b, std::int64_t dst, const std::vector<std::int64_t>& extra,
                       std::int64_t len) {
    codegen::copy_block(b, dst, kX, 0, iA, iB, iC, rT1);
    // copy_block leaves iB just past the copied entries
    for (auto r : extra) {
        b.emit(Opcode::STOREI, {I(iB), R(r)});
        b.emit(Opcode::INCI, {I(iB)});
    }
    b.emit(Opcode::MOVI, {I(len), I(0)});
    for (std::size_t k = 0; k < extra.size(); ++k) b.emit(Opcode::INCI, {I(len)});
}

/// Copies len entries from src to r0... and emits them.
inline void emit_block(ProgramBuilder& b, std::int64_t src, std::int64_t len) {
    codegen::copy_block(b, 0, src, len, iA, iB, iC, rT1);
    b.emit(Opcode::OUT, {I(len)});
}

/// dst := 2^-k for a natural number k held in a real register.
inline void pow2_neg(ProgramBuilder& b, std::int64_t dst, std::int64_t k) {
    auto loop = b.fresh("pow");
    auto done = b.fresh("pow_done");
    b.emit(Opcode::MOVR, {R(dst), R(rOne)});
    b.emit(Opcode::SUB, {R(rAcc), R(rAcc), R(rAcc)});
    b.label(loop);
    b.emit(Opcode::JEQ, {R(rAcc), R(k), done});
    b.emit(Opcode::MUL, {R(dst), R(dst), R(rHalf)});
    b.emit(Opcode::ADD, {R(rAcc), R(rAcc), R(rOne)});
    b.emit(Opcode::JMP, {loop});
    b.label(done);
}

/// Index register dst := kBase + natural number held in real register k.
inline void index_at(ProgramBuilder& b, std::int64_t dst, std::int64_t base, std::int64_t k) {
    auto loop = b.fresh("at");
    auto done = b.fresh("at_done");
    b.emit(Opcode::MOVI, {I(dst), Imm(base)});
    b.emit(Opcode::SUB, {R(rAcc), R(rAcc), R(rAcc)});
    b.label(loop);
    b.emit(Opcode::JEQ, {R(rAcc), R(k), done});
    b.emit(Opcode::INCI, {I(dst)});
    b.emit(Opcode::ADD, {R(rAcc), R(rAcc), R(rOne)});
    b.emit(Opcode::JMP, {loop});
    b.label(done);
}

}  // namespace bssvm::gen
