#pragma once

// Random valid programs for round-trip checks.

#include <random>

#include "bssvm/program.hpp"

namespace testing {

inline bssvm::Program random_program(std::mt19937_64& rng) {
    using namespace bssvm;
    auto pick = [&](long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(rng); };
    std::vector<Rational> constants;
    for (long long k = pick(0, 4); k > 0; --k)
        constants.push_back(Rational(BigInt(std::to_string(pick(-50, 50))), BigInt(std::to_string(pick(1, 9)))));
    auto size = static_cast<std::size_t>(pick(1, 30));
    std::vector<Instruction> code;
    while (code.size() < size) {
        auto op = static_cast<Opcode>(pick(0, kOpcodeCount - 1));
        Instruction ins{op, {}};
        bool ok = true;
        for (unsigned allowed : operand_signature(op)) {
            std::vector<OperandKind> kinds;
            for (auto k : {OperandKind::Real, OperandKind::Index, OperandKind::Const, OperandKind::Imm,
                           OperandKind::Target})
                if ((allowed & kind_bit(k)) && !(k == OperandKind::Const && constants.empty())) kinds.push_back(k);
            if (kinds.empty()) {
                ok = false;
                break;
            }
            OperandKind k = kinds[static_cast<std::size_t>(pick(0, static_cast<long long>(kinds.size()) - 1))];
            switch (k) {
                case OperandKind::Real: ins.operands.push_back(Operand::real(pick(0, 60))); break;
                case OperandKind::Index: ins.operands.push_back(Operand::index(pick(0, 12))); break;
                case OperandKind::Const:
                    ins.operands.push_back(Operand::constant(pick(0, static_cast<long long>(constants.size()) - 1)));
                    break;
                case OperandKind::Imm:
                    ins.operands.push_back(Operand::imm(op == Opcode::OUT ? pick(0, 9) : pick(-100, 100)));
                    break;
                case OperandKind::Target:
                    ins.operands.push_back(Operand::target(pick(0, static_cast<long long>(size) - 1)));
                    break;
            }
        }
        if (ok) code.push_back(std::move(ins));
    }
    return Program(std::move(code), std::move(constants), "random");
}

}  // namespace testing
