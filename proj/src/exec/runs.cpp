#include "bssvm/exec.hpp"

namespace bssvm {

namespace {

// Runs p under a borrowed or private context.
struct Session {
    explicit Session(const RunOptions& opts)
        : owned(opts.context ? nullptr : std::make_unique<ExecContext>(opts.oracle)),
          ctx(opts.context ? *opts.context : *owned) {}
    std::unique_ptr<ExecContext> owned;
    ExecContext& ctx;
};

void require_budget(std::uint64_t budget) {
    if (budget < 1) throw std::invalid_argument("budget must be at least 1");
}

}  // namespace

std::string_view mode_name(StreamMode m) {
    switch (m) {
        case StreamMode::BSS: return "bss";
        case StreamMode::Strong: return "strong";
        case StreamMode::Weak: return "weak";
    }
    return "?";
}

std::string describe(const RunOutcome& o) {
    if (const auto* t = std::get_if<Terminated>(&o)) {
        std::string s = "Terminated(";
        for (std::size_t k = 0; k < t->output.size(); ++k) s += (k ? ", " : "") + t->output[k].str();
        return s + ")";
    }
    if (const auto* d = std::get_if<Diverged>(&o)) return "Diverged(" + std::to_string(d->budget) + ")";
    return "Aborted(" + std::get<Aborted>(o).reason + ")";
}

RunOutcome run_bss(const Program& p, const std::vector<Rational>& input, const RunOptions& opts) {
    require_budget(opts.budget);
    Session s(opts);
    NumericMachine m(std::make_shared<const Program>(p), input, s.ctx, opts.oracle);
    m.advance(opts.budget);
    switch (m.status()) {
        case MachineStatus::Halted:
            return Terminated{m.outputs().empty() ? OutputVector{} : m.outputs().back(), m.steps()};
        case MachineStatus::Aborted: return Aborted{m.abort_reason(), m.steps()};
        case MachineStatus::Running: break;
    }
    return Diverged{opts.budget};
}

OutputStream run_stream(const Program& p, const std::vector<Rational>& input, std::size_t count, StreamMode mode,
                        const RunOptions& opts) {
    require_budget(opts.budget);
    if (count < 1) throw std::invalid_argument("count must be at least 1");
    Session s(opts);
    NumericMachine m(std::make_shared<const Program>(p), input, s.ctx, opts.oracle);
    m.advance(opts.budget, count);
    OutputStream out;
    out.mode = mode;
    const auto& v = m.outputs();
    out.vectors.assign(v.begin(), v.begin() + static_cast<long>(std::min(count, v.size())));
    out.exhausted_budget = out.vectors.size() < count;
    out.halted = m.status() == MachineStatus::Halted;
    if (m.status() == MachineStatus::Aborted) out.aborted = m.abort_reason();
    out.steps = m.steps();
    return out;
}

OutputStream run_strong(const Program& p, const std::vector<Rational>& input, std::size_t count,
                        const RunOptions& opts) {
    return run_stream(p, input, count, StreamMode::Strong, opts);
}

OutputStream run_weak(const Program& p, const std::vector<Rational>& input, std::size_t count,
                      const RunOptions& opts) {
    return run_stream(p, input, count, StreamMode::Weak, opts);
}

PathTrace record_path(const Program& p, const std::vector<Rational>& input, const RunOptions& opts) {
    require_budget(opts.budget);
    Session s(opts);
    PathTrace trace;
    NumericMachine m(std::make_shared<const Program>(p), input, s.ctx, opts.oracle);
    m.set_trace(&trace);
    m.advance(opts.budget);
    trace.halted = m.status() == MachineStatus::Halted;
    if (m.status() == MachineStatus::Aborted) trace.aborted = m.abort_reason();
    trace.steps = m.steps();
    return trace;
}

Rational norm1_distance(const OutputVector& a, const OutputVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("distance between vectors of different dimension");
    Rational d;
    for (std::size_t k = 0; k < a.size(); ++k) d += (a[k] - b[k]).abs();
    return d;
}

Validation validate_strong(const std::vector<OutputVector>& v, std::size_t upto) {
    if (upto > v.size())
        throw std::invalid_argument("validate_strong: stream has " + std::to_string(v.size()) + " entries, asked for " +
                                    std::to_string(upto));
    std::vector<Rational> radius;
    radius.reserve(upto);
    for (std::size_t n = 1; n <= upto; ++n) radius.push_back(pow2(-static_cast<long>(n)));
    for (std::size_t n = 1; n <= upto; ++n)
        for (std::size_t m = n + 1; m <= upto; ++m) {
            const auto& a = v[n - 1];
            const auto& b = v[m - 1];
            if (a.size() != b.size() || norm1_distance(a, b) > radius[n - 1] + radius[m - 1]) return Violation{n, m};
        }
    return Valid{};
}

Validation validate_strong(const OutputStream& s, std::size_t upto) { return validate_strong(s.vectors, upto); }

}  // namespace bssvm
