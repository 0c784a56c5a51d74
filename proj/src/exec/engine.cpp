#include "engine.hpp"

namespace bssvm {

struct NumericMachine::Impl {
    detail::Engine<detail::NumericDomain> engine;
};

NumericMachine::NumericMachine(std::shared_ptr<const Program> program, const std::vector<Rational>& input,
                               ExecContext& ctx, QueryAnswerer* answerer, unsigned depth)
    : impl_(new Impl{detail::Engine<detail::NumericDomain>(std::move(program), input, ctx, answerer, depth, {})}) {}

NumericMachine::~NumericMachine() = default;

void NumericMachine::advance(std::uint64_t step_limit, std::size_t output_target) {
    impl_->engine.advance(step_limit, output_target);
}
MachineStatus NumericMachine::status() const { return impl_->engine.status(); }
const std::vector<OutputVector>& NumericMachine::outputs() const { return impl_->engine.outputs(); }
std::uint64_t NumericMachine::steps() const { return impl_->engine.steps(); }
const std::string& NumericMachine::abort_reason() const { return impl_->engine.abort_reason(); }
void NumericMachine::set_trace(PathTrace* trace) { impl_->engine.set_trace(trace); }

ExecContext::ExecContext(QueryAnswerer* oracle) : oracle_(oracle) {}
ExecContext::~ExecContext() = default;

std::shared_ptr<const Program> ExecContext::decode(const BigInt& code) {
    auto it = decoded_.find(code);
    if (it != decoded_.end()) return it->second;
    auto p = std::make_shared<const Program>(decode_machine(GoedelCode{code}));
    decoded_.emplace(code, p);
    return p;
}

StepBoundAnswerer* ExecContext::level_answerer(std::uint64_t level) {
    auto& slot = levels_[level];
    if (!slot) slot = std::make_unique<StepBoundAnswerer>(level);
    return slot.get();
}

NumericMachine& ExecContext::nested(const BigInt& code, const std::vector<Rational>& input, QueryAnswerer* answerer,
                                    unsigned depth) {
    Key key{code, input, answerer};
    auto it = runs_.find(key);
    if (it != runs_.end()) return *it->second;
    auto m = std::make_unique<NumericMachine>(decode(code), input, *this, answerer, depth);
    return *runs_.emplace(std::move(key), std::move(m)).first->second;
}

void ExecContext::clear() {
    runs_.clear();
    decoded_.clear();
}

bool StepBoundAnswerer::answer(const OracleQuery& q, ExecContext& ctx) {
    NumericMachine* m;
    try {
        m = &ctx.nested(q.machine_code.value, q.input, this, 1);
    } catch (const DecodeError& e) {
        throw OracleFailure(e.what());
    }
    if (m->status() == MachineStatus::Running && m->steps() < steps_) m->advance(steps_);
    return m->status() == MachineStatus::Halted && m->steps() <= steps_;
}

}  // namespace bssvm
