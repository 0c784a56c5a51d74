#include "bssvm/builder.hpp"

namespace bssvm {

std::int64_t ProgramBuilder::constant(const Rational& q) {
    auto it = constant_index_.find(q);
    if (it != constant_index_.end()) return it->second;
    auto k = static_cast<std::int64_t>(constants_.size());
    constants_.push_back(q);
    constant_index_.emplace(q, k);
    return k;
}

std::string ProgramBuilder::fresh(const std::string& stem) {
    int& n = counters_[stem];
    return stem + "_" + std::to_string(n++);
}

void ProgramBuilder::label(const std::string& name) {
    if (!labels_.emplace(name, code_.size()).second) throw ValidationError("duplicate label '" + name + "'");
}

void ProgramBuilder::emit(Opcode op, std::vector<Arg> args) { code_.emplace_back(op, std::move(args)); }

void ProgramBuilder::load(std::int64_t r, const Rational& q) { emit(Opcode::SETC, {R(r), const_operand(q)}); }

Program ProgramBuilder::build() const {
    std::vector<Instruction> out;
    out.reserve(code_.size());
    for (const auto& [op, args] : code_) {
        Instruction ins{op, {}};
        for (const auto& a : args) {
            if (const auto* o = std::get_if<Operand>(&a)) {
                ins.operands.push_back(*o);
            } else {
                const auto& name = std::get<std::string>(a);
                auto it = labels_.find(name);
                if (it == labels_.end()) throw ValidationError("undefined label '" + name + "'");
                ins.operands.push_back(Operand::target(static_cast<std::int64_t>(it->second)));
            }
        }
        out.push_back(std::move(ins));
    }
    std::map<std::size_t, std::string> by_pc;
    for (const auto& [name, pc] : labels_)
        if (pc < out.size() && !by_pc.count(pc)) by_pc[pc] = name;
    return Program(std::move(out), constants_, name_, std::move(by_pc));
}

}  // namespace bssvm
