#include "bssvm/codegen.hpp"

namespace bssvm::codegen {

void abs_value(ProgramBuilder& b, std::int64_t dst, std::int64_t src, std::int64_t zero) {
    auto done = b.fresh("abs_done");
    if (dst != src) b.emit(Opcode::MOVR, {R(dst), R(src)});
    b.emit(Opcode::JLT, {R(zero), R(dst), done});
    b.emit(Opcode::SUB, {R(dst), R(zero), R(dst)});
    b.label(done);
}

void max_value(ProgramBuilder& b, std::int64_t dst, std::int64_t a, std::int64_t bb) {
    auto take_b = b.fresh("max_b");
    auto done = b.fresh("max_done");
    b.emit(Opcode::JLT, {R(a), R(bb), take_b});
    if (dst != a) b.emit(Opcode::MOVR, {R(dst), R(a)});
    b.emit(Opcode::JMP, {done});
    b.label(take_b);
    b.emit(Opcode::MOVR, {R(dst), R(bb)});
    b.label(done);
}

void copy_block(ProgramBuilder& b, std::int64_t dst_base, std::int64_t src_base, std::int64_t len, std::int64_t ia,
                std::int64_t ib, std::int64_t ic, std::int64_t tmp) {
    auto loop = b.fresh("copy");
    auto done = b.fresh("copy_done");
    b.emit(Opcode::MOVI, {I(ia), Imm(src_base)});
    b.emit(Opcode::MOVI, {I(ib), Imm(dst_base)});
    b.emit(Opcode::MOVI, {I(ic), I(len)});
    b.label(loop);
    b.emit(Opcode::JZI, {I(ic), done});
    b.emit(Opcode::LOADI, {R(tmp), I(ia)});
    b.emit(Opcode::STOREI, {I(ib), R(tmp)});
    b.emit(Opcode::INCI, {I(ia)});
    b.emit(Opcode::INCI, {I(ib)});
    b.emit(Opcode::DECI, {I(ic)});
    b.emit(Opcode::JMP, {loop});
    b.label(done);
}

void norm1(ProgramBuilder& b, std::int64_t out, std::int64_t a_base, std::int64_t b_base, std::int64_t len,
           std::int64_t zero, std::int64_t ia, std::int64_t ib, std::int64_t ic, std::int64_t t1, std::int64_t t2) {
    auto loop = b.fresh("norm");
    auto done = b.fresh("norm_done");
    b.emit(Opcode::SUB, {R(out), R(zero), R(zero)});
    b.emit(Opcode::MOVI, {I(ia), Imm(a_base)});
    if (b_base >= 0) b.emit(Opcode::MOVI, {I(ib), Imm(b_base)});
    b.emit(Opcode::MOVI, {I(ic), I(len)});
    b.label(loop);
    b.emit(Opcode::JZI, {I(ic), done});
    b.emit(Opcode::LOADI, {R(t1), I(ia)});
    if (b_base >= 0) {
        b.emit(Opcode::LOADI, {R(t2), I(ib)});
        b.emit(Opcode::SUB, {R(t1), R(t1), R(t2)});
        b.emit(Opcode::INCI, {I(ib)});
    }
    abs_value(b, t1, t1, zero);
    b.emit(Opcode::ADD, {R(out), R(out), R(t1)});
    b.emit(Opcode::INCI, {I(ia)});
    b.emit(Opcode::DECI, {I(ic)});
    b.emit(Opcode::JMP, {loop});
    b.label(done);
}

void index_equal(ProgramBuilder& b, std::int64_t x, std::int64_t y, std::int64_t t1, std::int64_t t2,
                 const std::string& if_equal, const std::string& if_different) {
    auto loop = b.fresh("ieq");
    auto x_done = b.fresh("ieq_x");
    b.emit(Opcode::MOVI, {I(t1), I(x)});
    b.emit(Opcode::MOVI, {I(t2), I(y)});
    b.label(loop);
    b.emit(Opcode::JZI, {I(t1), x_done});
    b.emit(Opcode::JZI, {I(t2), if_different});
    b.emit(Opcode::DECI, {I(t1)});
    b.emit(Opcode::DECI, {I(t2)});
    b.emit(Opcode::JMP, {loop});
    b.label(x_done);
    b.emit(Opcode::JZI, {I(t2), if_equal});
    b.emit(Opcode::JMP, {if_different});
}

void real_to_index(ProgramBuilder& b, std::int64_t dst, std::int64_t src, std::int64_t acc, std::int64_t one) {
    auto loop = b.fresh("r2i");
    auto done = b.fresh("r2i_done");
    b.emit(Opcode::MOVI, {I(dst), Imm(0)});
    b.emit(Opcode::SUB, {R(acc), R(acc), R(acc)});
    b.label(loop);
    b.emit(Opcode::JEQ, {R(acc), R(src), done});
    b.emit(Opcode::ADD, {R(acc), R(acc), R(one)});
    b.emit(Opcode::INCI, {I(dst)});
    b.emit(Opcode::JMP, {loop});
    b.label(done);
}

}  // namespace bssvm::codegen
