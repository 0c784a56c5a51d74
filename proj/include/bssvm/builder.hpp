#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "bssvm/program.hpp"

namespace bssvm {

/// Operand or not-yet-placed label.
using Arg = std::variant<Operand, std::string>;

inline Operand R(std::int64_t k) { return Operand::real(k); }
inline Operand I(std::int64_t k) { return Operand::index(k); }
inline Operand Imm(std::int64_t v) { return Operand::imm(v); }

/// Incremental construction of programs with symbolic labels and a
/// deduplicated constant table.
class ProgramBuilder {
public:
    explicit ProgramBuilder(std::string name = {}) : name_(std::move(name)) {}

    /// Index of q in the constant table, adding it on first use.
    std::int64_t constant(const Rational& q);
    /// A label name not used before, derived from stem.
    std::string fresh(const std::string& stem);
    /// Places a label at the next instruction.
    void label(const std::string& name);

    void emit(Opcode op, std::vector<Arg> args);

    /// SETC r <- q.
    void load(std::int64_t r, const Rational& q);
    /// SETC r <- c, with c the constant index of q (for codes and the like).
    Operand const_operand(const Rational& q) { return Operand::constant(constant(q)); }

    /// Resolves labels; throws ValidationError for undefined labels.
    Program build() const;

private:
    std::string name_;
    std::vector<Rational> constants_;
    std::map<Rational, std::int64_t> constant_index_;
    std::vector<std::pair<Opcode, std::vector<Arg>>> code_;
    std::map<std::string, std::size_t> labels_;
    std::map<std::string, int> counters_;
};

}  // namespace bssvm
