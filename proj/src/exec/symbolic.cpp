#include "engine.hpp"

namespace bssvm {

namespace {

std::vector<unsigned> precision_schedule(unsigned max_precision) {
    std::vector<unsigned> out;
    for (unsigned p = 1; p <= max_precision; p *= 2) {
        out.push_back(p);
        if (p > (1u << 30)) break;
    }
    if (out.empty() || out.back() != max_precision) out.push_back(max_precision);
    return out;
}

class SignOracle {
public:
    SignOracle(const Valuation& valuation, unsigned max_precision) : max_precision_(max_precision) {
        for (const auto& [v, src] : valuation) {
            if (const auto* q = std::get_if<Rational>(&src))
                exact_[v] = *q;
            else
                approx_[v] = std::get<ConstantApproximation>(src);
        }
    }

    const ExactBindings& exact() const { return exact_; }

    SignResult sign(const RationalFunction& f) {
        RationalFunction g = f.substitute(exact_);
        if (g.is_constant()) return {g.constant_value().sign(), 0};
        std::vector<Variable> vars = g.numerator().variables();
        for (const auto& v : g.denominator().variables()) vars.push_back(v);
        for (const auto& v : vars)
            if (!approx_.count(v)) throw std::invalid_argument("no value for variable " + v.name());
        unsigned last = 0;
        for (unsigned p : precision_schedule(max_precision_)) {
            last = p;
            IntervalBindings box;
            for (const auto& v : vars) box.emplace(v, enclosure(v, p));
            Interval n = g.numerator().evaluate(box);
            Interval d = g.denominator().evaluate(box);
            if (!n.contains_zero() && !d.contains_zero()) return {n.lo().sign() * d.lo().sign(), p};
        }
        return {std::nullopt, last};
    }

private:
    Interval enclosure(const Variable& v, unsigned p) {
        auto key = std::make_pair(v, p);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        DyadicInterval d = approx_.at(v)(p);
        if (d.precision() < p) throw ApproximationFailure("approximation for " + v.name() + " below requested precision");
        return cache_.emplace(key, d.interval()).first->second;
    }

    unsigned max_precision_;
    ExactBindings exact_;
    std::map<Variable, ConstantApproximation> approx_;
    std::map<std::pair<Variable, unsigned>, Interval> cache_;
};

struct SymbolicDomain {
    using Value = RationalFunction;

    std::shared_ptr<SignOracle> signs;
    bool symbolic_constants = false;
    ZeroTestPolicy policy = ZeroTestPolicy::Throw;

    RationalFunction constant(const Program& p, std::size_t k) const {
        if (symbolic_constants) return RationalFunction(Variable::constant(static_cast<std::uint32_t>(k)));
        return RationalFunction(p.constants()[k]);
    }
    RationalFunction lift(const Rational& q) const { return RationalFunction(q); }

    int sign_of(const RationalFunction& f) const {
        SignResult s = signs->sign(f);
        if (s.sign) return *s.sign;
        if (policy == ZeroTestPolicy::AssumeZero) return 0;
        throw UndecidedComparison("cannot decide the sign of " + f.str());
    }
    RationalFunction divide(const RationalFunction& a, const RationalFunction& b) const {
        if (b.is_zero() || sign_of(b) == 0) throw DivisionByZero();
        return a / b;
    }
    int compare(const RationalFunction& a, const RationalFunction& b) const { return sign_of(a - b); }
    std::optional<Rational> exact(const RationalFunction& v) const {
        if (v.is_constant()) return v.constant_value();
        RationalFunction g = v.substitute(signs->exact());
        if (g.is_constant()) return g.constant_value();
        return std::nullopt;
    }
    RationalFunction as_function(const RationalFunction& v) const { return v; }
};

}  // namespace

SignResult symbolic_test(const RationalFunction& f, const Valuation& valuation, unsigned max_precision) {
    if (f.is_zero()) return {0, 0};
    SignOracle oracle(valuation, max_precision);
    return oracle.sign(f);
}

SymbolicRun run_symbolic(const Program& p, std::size_t dimension, const SymbolicOptions& opts) {
    if (opts.budget < 1) throw std::invalid_argument("budget must be at least 1");
    Valuation valuation = opts.valuation;
    for (std::size_t k = 0; k < p.constants().size(); ++k)
        valuation.emplace(Variable::constant(static_cast<std::uint32_t>(k)), p.constants()[k]);
    SymbolicDomain dom{std::make_shared<SignOracle>(valuation, opts.max_precision), opts.symbolic_constants,
                       opts.policy};
    std::vector<RationalFunction> input;
    for (std::size_t k = 1; k <= dimension; ++k)
        input.emplace_back(Variable::input(static_cast<std::uint32_t>(k)));

    ExecContext ctx(opts.oracle);
    SymbolicRun out;
    detail::Engine<SymbolicDomain> engine(std::make_shared<const Program>(p), input, ctx, opts.oracle, 0, dom);
    engine.set_trace(&out.trace);
    engine.advance(opts.budget, opts.output_target);
    out.outputs = engine.outputs();
    out.halted = engine.status() == MachineStatus::Halted;
    if (engine.status() == MachineStatus::Aborted) out.aborted = engine.abort_reason();
    out.steps = engine.steps();
    out.trace.halted = out.halted;
    out.trace.aborted = out.aborted;
    out.trace.steps = out.steps;
    return out;
}

}  // namespace bssvm
