#pragma once

// Interpreter core shared by the numeric and symbolic run modes. The domain
// supplies the register value type, constant loading, division and the
// comparison test; everything else (control flow, index registers, nested
// simulation) is common.

#include <unordered_map>

#include "bssvm/exec.hpp"

namespace bssvm::detail {

template <class V>
class RegisterFile {
public:
    static constexpr std::int64_t kDense = 1 << 16;

    const V& get(std::int64_t k) const {
        if (k < static_cast<std::int64_t>(dense_.size())) return dense_[static_cast<std::size_t>(k)];
        if (k < kDense) return zero_;
        auto it = sparse_.find(k);
        return it == sparse_.end() ? zero_ : it->second;
    }
    V& at(std::int64_t k) {
        if (k < kDense) {
            if (k >= static_cast<std::int64_t>(dense_.size())) dense_.resize(static_cast<std::size_t>(k) + 1);
            return dense_[static_cast<std::size_t>(k)];
        }
        return sparse_[k];
    }

private:
    std::vector<V> dense_;
    std::unordered_map<std::int64_t, V> sparse_;
    V zero_{};
};

class Aborting : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::uint64_t natural_operand(const Rational& q, const char* what) {
    if (!q.is_integer() || q.sign() < 0 || !q.numerator().fits_ulong_p())
        throw Aborting(std::string(what) + " must be a natural number, got " + q.str());
    return q.numerator().get_ui();
}

template <class Domain>
class Engine {
public:
    using V = typename Domain::Value;

    Engine(std::shared_ptr<const Program> program, const std::vector<V>& input, ExecContext& ctx,
           QueryAnswerer* answerer, unsigned depth, Domain domain)
        : program_(std::move(program)), ctx_(ctx), answerer_(answerer), depth_(depth), dom_(std::move(domain)) {
        for (std::size_t k = 0; k < input.size(); ++k) real_.at(static_cast<std::int64_t>(k)) = input[k];
        index_.at(0) = static_cast<std::int64_t>(input.size());
    }

    void advance(std::uint64_t limit, std::size_t output_target) {
        if (busy_) throw Aborting("machine re-entered its own simulation");
        busy_ = true;
        struct Release {
            bool& b;
            ~Release() { b = false; }
        } release{busy_};
        if (stalled_) {
            if (steps_ < limit) steps_ = limit;
            return;
        }
        try {
            while (status_ == MachineStatus::Running && steps_ < limit && outputs_.size() < output_target) {
                if (!step(limit)) break;
            }
        } catch (const Aborting& e) {
            abort(e.what());
        } catch (const DivisionByZero& e) {
            abort(e.what());
        } catch (const OracleFailure& e) {
            abort(std::string("oracle: ") + e.what());
        }
    }

    MachineStatus status() const { return status_; }
    const std::vector<std::vector<V>>& outputs() const { return outputs_; }
    std::uint64_t steps() const { return steps_; }
    std::uint64_t halt_steps() const { return halt_steps_; }
    const std::string& abort_reason() const { return abort_reason_; }
    void set_trace(PathTrace* t) { trace_ = t; }
    Domain& domain() { return dom_; }

private:
    void abort(const std::string& why) {
        status_ = MachineStatus::Aborted;
        abort_reason_ = why;
        ++steps_;  // the failing instruction counts as executed
    }

    const V& r(const Operand& o) const { return real_.get(o.value); }
    V& rw(const Operand& o) { return real_.at(o.value); }
    std::int64_t idx(const Operand& o) const {
        return o.kind == OperandKind::Imm ? o.value : index_.get(o.value);
    }

    Rational exact(const V& v, const char* what) {
        auto q = dom_.exact(v);
        if (!q) throw Aborting(std::string(what) + " is not an exactly known number");
        return *q;
    }

    Rational code_operand(const Operand& o) {
        if (o.kind == OperandKind::Const) return program_->constants()[static_cast<std::size_t>(o.value)];
        return exact(r(o), "machine code");
    }

    std::vector<Rational> input_block(const Operand& start, const Operand& len) {
        std::int64_t n = idx(len);
        if (n < 0) throw Aborting("negative input length");
        std::vector<Rational> in;
        in.reserve(static_cast<std::size_t>(n));
        for (std::int64_t k = 0; k < n; ++k) in.push_back(exact(real_.get(start.value + k), "simulation input"));
        return in;
    }

    void write_vector(std::int64_t dst, const OutputVector& v) {
        for (std::size_t k = 0; k < v.size(); ++k) real_.at(dst + static_cast<std::int64_t>(k)) = dom_.lift(v[k]);
    }

    // Charges `extra` nested steps plus the instruction itself.
    void finish(std::uint64_t extra) {
        steps_ += 1 + extra;
        ++pc_;
    }

    NumericMachine& nested_run(const Rational& code, const std::vector<Rational>& input, QueryAnswerer* answerer) {
        if (depth_ + 1 >= kMaxNesting) throw Aborting("simulation nesting too deep");
        try {
            return ctx_.nested(code_from_rational(code).value, input, answerer, depth_ + 1);
        } catch (const DecodeError& e) {
            throw Aborting(std::string("bad machine code: ") + e.what());
        }
    }

    void stall(std::uint64_t limit) {
        stalled_ = true;
        steps_ = limit;
    }

    // Returns false when the instruction could not complete within limit.
    bool step(std::uint64_t limit) {
        const Instruction& ins = program_->instructions()[pc_];
        const auto& o = ins.operands;
        switch (ins.op) {
            case Opcode::ADD: rw(o[0]) = r(o[1]) + r(o[2]); break;
            case Opcode::SUB: rw(o[0]) = r(o[1]) - r(o[2]); break;
            case Opcode::MUL: rw(o[0]) = r(o[1]) * r(o[2]); break;
            case Opcode::DIV: rw(o[0]) = dom_.divide(r(o[1]), r(o[2])); break;
            case Opcode::SETC: rw(o[0]) = dom_.constant(*program_, static_cast<std::size_t>(o[1].value)); break;
            case Opcode::MOVR: {
                V v = r(o[1]);  // copy first: growing the file moves registers
                rw(o[0]) = std::move(v);
                break;
            }
            case Opcode::MOVI: index_.at(o[0].value) = idx(o[1]); break;
            case Opcode::INCI: ++index_.at(o[0].value); break;
            case Opcode::DECI: --index_.at(o[0].value); break;
            case Opcode::LOADI: {
                std::int64_t a = idx(o[1]);
                if (a < 0 || a > kMaxRegister) throw Aborting("register address " + std::to_string(a) + " out of range");
                V v = real_.get(a);
                rw(o[0]) = std::move(v);
                break;
            }
            case Opcode::STOREI: {
                std::int64_t a = idx(o[0]);
                if (a < 0 || a > kMaxRegister) throw Aborting("register address " + std::to_string(a) + " out of range");
                V v = r(o[1]);
                real_.at(a) = std::move(v);
                break;
            }
            case Opcode::JEQ:
            case Opcode::JLT: {
                int s = dom_.compare(r(o[0]), r(o[1]));
                bool taken = ins.op == Opcode::JEQ ? s == 0 : s < 0;
                if (trace_) {
                    BranchRecord b;
                    b.pc = pc_;
                    b.kind = ins.op;
                    b.taken = taken;
                    b.lhs = dom_.as_function(r(o[0]));
                    b.rhs = dom_.as_function(r(o[1]));
                    b.difference = b.lhs - b.rhs;
                    trace_->branches.push_back(std::move(b));
                }
                ++steps_;
                pc_ = taken ? static_cast<std::size_t>(o[2].value) : pc_ + 1;
                return true;
            }
            case Opcode::JMP:
                ++steps_;
                pc_ = static_cast<std::size_t>(o[0].value);
                return true;
            case Opcode::JZI:
                ++steps_;
                pc_ = idx(o[0]) == 0 ? static_cast<std::size_t>(o[1].value) : pc_ + 1;
                return true;
            case Opcode::OUT: {
                std::int64_t n = idx(o[0]);
                if (n < 0) throw Aborting("OUT with negative dimension");
                std::vector<V> v;
                v.reserve(static_cast<std::size_t>(n));
                for (std::int64_t k = 0; k < n; ++k) v.push_back(real_.get(k));
                outputs_.push_back(std::move(v));
                break;
            }
            case Opcode::HALT:
                ++steps_;
                halt_steps_ = steps_;
                status_ = MachineStatus::Halted;
                return true;
            case Opcode::QRY: {
                if (!answerer_) throw Aborting("QRY without an oracle");
                OracleQuery q{code_from_rational_checked(code_operand(o[0])), input_block(o[1], o[2])};
                bool yes = answerer_->answer(q, ctx_);
                real_.at(0) = dom_.lift(Rational(yes ? 1 : 0));
                break;
            }
            case Opcode::SIM: return simulate(o, limit);
            case Opcode::RUN: return run_nested(o, limit);
        }
        ++steps_;
        ++pc_;
        return true;
    }

    GoedelCode code_from_rational_checked(const Rational& q) {
        try {
            return code_from_rational(q);
        } catch (const DecodeError& e) {
            throw Aborting(std::string("bad machine code: ") + e.what());
        }
    }

    // SIM dst code n level in len
    bool simulate(const std::vector<Operand>& o, std::uint64_t limit) {
        Rational code = code_operand(o[1]);
        std::uint64_t n = natural_operand(exact(r(o[2]), "output index"), "output index");
        if (n == 0) throw Aborting("SIM output index must be positive");
        std::uint64_t level = natural_operand(exact(r(o[3]), "simulation level"), "simulation level");
        auto input = input_block(o[4], o[5]);
        QueryAnswerer* answerer = level > 0 ? ctx_.level_answerer(level) : answerer_;
        NumericMachine& m = nested_run(code, input, answerer);
        if (m.outputs().size() < n) {
            std::uint64_t room = limit - steps_ - 1;  // limit > steps_ here
            std::uint64_t before = m.steps();
            m.advance(before + room, n);
            if (m.outputs().size() < n) {
                if (m.status() != MachineStatus::Running) {
                    stall(limit);
                } else {
                    steps_ = limit;
                }
                return false;
            }
            const OutputVector& y = m.outputs()[n - 1];
            write_vector(o[0].value, y);
            index_.at(o[5].value) = static_cast<std::int64_t>(y.size());
            finish(m.steps() - before);
            return true;
        }
        const OutputVector& y = m.outputs()[n - 1];
        write_vector(o[0].value, y);
        index_.at(o[5].value) = static_cast<std::int64_t>(y.size());
        finish(0);
        return true;
    }

    // RUN dst code fuel in len
    bool run_nested(const std::vector<Operand>& o, std::uint64_t limit) {
        Rational code = code_operand(o[1]);
        std::uint64_t fuel = natural_operand(exact(r(o[2]), "fuel"), "fuel");
        auto input = input_block(o[3], o[4]);
        NumericMachine& m = nested_run(code, input, answerer_);
        std::uint64_t before = m.steps();
        std::uint64_t room = limit - steps_ - 1;
        std::uint64_t want = fuel == 0 ? before + room : std::min(fuel, before + room);
        if (m.status() == MachineStatus::Running && m.steps() < want) m.advance(want);
        std::uint64_t used = m.steps() > before ? m.steps() - before : 0;

        // A halted machine stops counting, so steps() is its halting time.
        bool halted = m.status() == MachineStatus::Halted && (fuel == 0 || m.steps() <= fuel);
        bool decided_no = fuel != 0 && !halted && (m.status() != MachineStatus::Running || m.steps() >= fuel);
        if (fuel == 0 && m.status() == MachineStatus::Aborted) {
            stall(limit);
            return false;
        }
        if (!halted && !decided_no) {
            steps_ = limit;
            return false;
        }
        real_.at(o[0].value) = dom_.lift(Rational(halted ? 1 : 0));
        if (halted) {
            OutputVector last = m.outputs().empty() ? OutputVector{} : m.outputs().back();
            write_vector(o[0].value + 1, last);
            index_.at(o[4].value) = static_cast<std::int64_t>(last.size());
        } else {
            index_.at(o[4].value) = 0;
        }
        finish(used);
        return true;
    }

    std::shared_ptr<const Program> program_;
    ExecContext& ctx_;
    QueryAnswerer* answerer_;
    unsigned depth_;
    Domain dom_;
    RegisterFile<V> real_;
    RegisterFile<std::int64_t> index_;
    std::size_t pc_ = 0;
    std::uint64_t steps_ = 0;
    std::uint64_t halt_steps_ = 0;
    MachineStatus status_ = MachineStatus::Running;
    std::string abort_reason_;
    std::vector<std::vector<V>> outputs_;
    PathTrace* trace_ = nullptr;
    bool stalled_ = false;
    bool busy_ = false;
};

struct NumericDomain {
    using Value = Rational;
    Rational constant(const Program& p, std::size_t k) const { return p.constants()[k]; }
    Rational lift(const Rational& q) const { return q; }
    Rational divide(const Rational& a, const Rational& b) const { return a / b; }
    int compare(const Rational& a, const Rational& b) const {
        auto c = a <=> b;
        return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    std::optional<Rational> exact(const Rational& v) const { return v; }
    RationalFunction as_function(const Rational& v) const { return RationalFunction(v); }
};

}  // namespace bssvm::detail
