#pragma once

// Small code templates shared by the program generators. Each helper emits
// straight into a builder and touches only the registers it is handed.

#include "bssvm/builder.hpp"

namespace bssvm::codegen {

/// dst := |src|. zero must hold 0.
void abs_value(ProgramBuilder& b, std::int64_t dst, std::int64_t src, std::int64_t zero);

/// dst := max(a, b) (dst may alias a or b).
void max_value(ProgramBuilder& b, std::int64_t dst, std::int64_t a, std::int64_t bb);

/// Copies len (index register, preserved) reals from src_base to dst_base.
/// Uses index registers ia, ib, ic and real register tmp.
void copy_block(ProgramBuilder& b, std::int64_t dst_base, std::int64_t src_base, std::int64_t len, std::int64_t ia,
                std::int64_t ib, std::int64_t ic, std::int64_t tmp);

/// out := sum_k |A_k - B_k| over len (index register, preserved) entries.
/// Pass b_base < 0 for the plain 1-norm of A. Uses ia, ib, ic, t1, t2.
void norm1(ProgramBuilder& b, std::int64_t out, std::int64_t a_base, std::int64_t b_base, std::int64_t len,
           std::int64_t zero, std::int64_t ia, std::int64_t ib, std::int64_t ic, std::int64_t t1, std::int64_t t2);

/// Jumps to if_equal when index registers x and y hold the same value, else
/// to if_different. Uses t1, t2 (index registers).
void index_equal(ProgramBuilder& b, std::int64_t x, std::int64_t y, std::int64_t t1, std::int64_t t2,
                 const std::string& if_equal, const std::string& if_different);

/// Index register dst := natural number held in real register src (counts up
/// from zero; src must hold a natural number). Uses real registers acc, one.
void real_to_index(ProgramBuilder& b, std::int64_t dst, std::int64_t src, std::int64_t acc, std::int64_t one);

}  // namespace bssvm::codegen
