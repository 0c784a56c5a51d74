#include "bssvm/program.hpp"

#include <array>

namespace bssvm {

namespace {

constexpr std::array<std::string_view, kOpcodeCount> kNames = {
    "ADD", "SUB", "MUL", "DIV", "SETC", "MOVR", "MOVI", "INCI", "DECI", "LOADI",
    "STOREI", "JEQ", "JLT", "JMP", "JZI", "OUT", "HALT", "QRY", "SIM", "RUN",
};

constexpr unsigned R = kind_bit(OperandKind::Real);
constexpr unsigned I = kind_bit(OperandKind::Index);
constexpr unsigned C = kind_bit(OperandKind::Const);
constexpr unsigned N = kind_bit(OperandKind::Imm);
constexpr unsigned T = kind_bit(OperandKind::Target);

const std::array<std::vector<unsigned>, kOpcodeCount> kSignatures = {{
    {R, R, R},              // ADD
    {R, R, R},              // SUB
    {R, R, R},              // MUL
    {R, R, R},              // DIV
    {R, C},                 // SETC
    {R, R},                 // MOVR
    {I, I | N},             // MOVI
    {I},                    // INCI
    {I},                    // DECI
    {R, I},                 // LOADI
    {I, R},                 // STOREI
    {R, R, T},              // JEQ
    {R, R, T},              // JLT
    {T},                    // JMP
    {I, T},                 // JZI
    {I | N},                // OUT
    {},                     // HALT
    {C | R, R, I},          // QRY
    {R, C | R, R, R, R, I}, // SIM dst code n level in len
    {R, C | R, R, R, I},    // RUN dst code fuel in len
}};

}  // namespace

std::string_view opcode_name(Opcode op) { return kNames[static_cast<std::size_t>(op)]; }

std::optional<Opcode> opcode_from_name(std::string_view name) {
    for (std::size_t k = 0; k < kNames.size(); ++k)
        if (kNames[k] == name) return static_cast<Opcode>(k);
    return std::nullopt;
}

const std::vector<unsigned>& operand_signature(Opcode op) { return kSignatures[static_cast<std::size_t>(op)]; }

void validate_instruction(const Instruction& ins, std::size_t program_size, std::size_t constant_count) {
    if (static_cast<int>(ins.op) >= kOpcodeCount) throw ValidationError("unknown opcode");
    const auto& sig = operand_signature(ins.op);
    std::string name(opcode_name(ins.op));
    if (ins.operands.size() != sig.size())
        throw ValidationError(name + " expects " + std::to_string(sig.size()) + " operands, got " +
                              std::to_string(ins.operands.size()));
    for (std::size_t k = 0; k < sig.size(); ++k) {
        const Operand& o = ins.operands[k];
        if (!(sig[k] & kind_bit(o.kind)))
            throw ValidationError(name + ": operand " + std::to_string(k + 1) + " has the wrong kind");
        switch (o.kind) {
            case OperandKind::Real:
            case OperandKind::Index:
                if (o.value < 0 || o.value > kMaxRegister)
                    throw ValidationError(name + ": register index " + std::to_string(o.value) + " out of range");
                break;
            case OperandKind::Const:
                if (o.value < 0 || static_cast<std::uint64_t>(o.value) >= constant_count)
                    throw ValidationError(name + ": constant c" + std::to_string(o.value) + " is not declared");
                break;
            case OperandKind::Target:
                if (o.value < 0 || static_cast<std::uint64_t>(o.value) >= program_size)
                    throw ValidationError(name + ": jump target " + std::to_string(o.value) + " out of range");
                break;
            case OperandKind::Imm:
                if (ins.op == Opcode::OUT && o.value < 0) throw ValidationError("OUT: negative dimension");
                break;
        }
    }
}

Program::Program(std::vector<Instruction> instructions, std::vector<Rational> constants, std::string name,
                 std::map<std::size_t, std::string> labels)
    : instructions_(std::move(instructions)), constants_(std::move(constants)), name_(std::move(name)),
      labels_(std::move(labels)) {
    if (instructions_.empty()) throw ValidationError("program has no instructions");
    for (std::size_t pc = 0; pc < instructions_.size(); ++pc) {
        try {
            validate_instruction(instructions_[pc], instructions_.size(), constants_.size());
        } catch (const ValidationError& e) {
            throw ValidationError("instruction " + std::to_string(pc) + ": " + e.what());
        }
    }
}

bool Program::uses_oracle() const {
    for (const auto& ins : instructions_)
        if (ins.op == Opcode::QRY) return true;
    return false;
}

}  // namespace bssvm
