#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bssvm/rational.hpp"

namespace bssvm {

enum class Opcode : std::uint8_t {
    ADD, SUB, MUL, DIV,
    SETC, MOVR,
    MOVI, INCI, DECI,
    LOADI, STOREI,
    JEQ, JLT, JMP, JZI,
    OUT, HALT,
    QRY, SIM, RUN,
};

inline constexpr int kOpcodeCount = static_cast<int>(Opcode::RUN) + 1;

std::string_view opcode_name(Opcode op);
std::optional<Opcode> opcode_from_name(std::string_view name);

enum class OperandKind : std::uint8_t { Real, Index, Const, Imm, Target };

struct Operand {
    OperandKind kind = OperandKind::Imm;
    std::int64_t value = 0;

    static Operand real(std::int64_t k) { return {OperandKind::Real, k}; }
    static Operand index(std::int64_t k) { return {OperandKind::Index, k}; }
    static Operand constant(std::int64_t k) { return {OperandKind::Const, k}; }
    static Operand imm(std::int64_t v) { return {OperandKind::Imm, v}; }
    static Operand target(std::int64_t pc) { return {OperandKind::Target, pc}; }

    friend bool operator==(const Operand&, const Operand&) = default;
};

struct Instruction {
    Opcode op = Opcode::HALT;
    std::vector<Operand> operands;

    friend bool operator==(const Instruction&, const Instruction&) = default;
};

/// Operand kinds accepted at each position of an opcode, as a bit set over
/// OperandKind.
const std::vector<unsigned>& operand_signature(Opcode op);

inline constexpr unsigned kind_bit(OperandKind k) { return 1u << static_cast<unsigned>(k); }

/// Largest register index accepted anywhere (real or index file).
inline constexpr std::int64_t kMaxRegister = (std::int64_t{1} << 40);

class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class SyntaxError : public std::invalid_argument {
public:
    SyntaxError(const std::string& what, int line, int column)
        : std::invalid_argument(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// A validated BSS program. Labels and name are presentation metadata; two
/// programs are equal when their instructions and constants are.
class Program {
public:
    /// Throws ValidationError if the program is empty or any operand is
    /// out of range.
    Program(std::vector<Instruction> instructions, std::vector<Rational> constants, std::string name = {},
            std::map<std::size_t, std::string> labels = {});

    const std::vector<Instruction>& instructions() const { return instructions_; }
    const std::vector<Rational>& constants() const { return constants_; }
    const std::string& name() const { return name_; }
    const std::map<std::size_t, std::string>& labels() const { return labels_; }
    std::size_t size() const { return instructions_.size(); }
    bool uses_oracle() const;

    friend bool operator==(const Program& a, const Program& b) {
        return a.instructions_ == b.instructions_ && a.constants_ == b.constants_;
    }

private:
    std::vector<Instruction> instructions_;
    std::vector<Rational> constants_;
    std::string name_;
    std::map<std::size_t, std::string> labels_;
};

/// Checks one instruction against its signature and the program bounds.
void validate_instruction(const Instruction& ins, std::size_t program_size, std::size_t constant_count);

}  // namespace bssvm
