#pragma once

// Running BSS programs: terminating runs, output streams, path traces and
// symbolic execution. Divergence is always approximated by a step budget.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "bssvm/goedel.hpp"
#include "bssvm/interval.hpp"
#include "bssvm/program.hpp"
#include "bssvm/rational_function.hpp"

namespace bssvm {

using OutputVector = std::vector<Rational>;

enum class StreamMode { BSS, Strong, Weak };
std::string_view mode_name(StreamMode m);

struct Terminated {
    OutputVector output;  // last OUT vector, empty if none
    std::uint64_t steps = 0;
};
struct Diverged {
    std::uint64_t budget = 0;
};
/// A run that hit a singular step (division by zero, bad address, ...).
/// Counts as non-termination for semidecision purposes.
struct Aborted {
    std::string reason;
    std::uint64_t steps = 0;
};
using RunOutcome = std::variant<Terminated, Diverged, Aborted>;

std::string describe(const RunOutcome& o);

struct OutputStream {
    StreamMode mode = StreamMode::Strong;
    std::vector<OutputVector> vectors;
    /// Fewer vectors than requested.
    bool exhausted_budget = false;
    bool halted = false;
    std::optional<std::string> aborted;
    std::uint64_t steps = 0;
};

struct BranchRecord {
    std::size_t pc = 0;
    Opcode kind = Opcode::JEQ;
    bool taken = false;
    RationalFunction lhs;
    RationalFunction rhs;
    RationalFunction difference;  // lhs - rhs
};

struct PathTrace {
    std::vector<BranchRecord> branches;
    bool halted = false;
    std::optional<std::string> aborted;
    std::uint64_t steps = 0;
};

struct OracleQuery {
    GoedelCode machine_code;
    std::vector<Rational> input;

    friend bool operator==(const OracleQuery&, const OracleQuery&) = default;
    friend bool operator<(const OracleQuery& a, const OracleQuery& b) {
        if (a.machine_code.value != b.machine_code.value) return a.machine_code.value < b.machine_code.value;
        return a.input < b.input;
    }
};

class ExecContext;

/// Answers QRY instructions. Implementations may run machines through the
/// context they are handed.
class QueryAnswerer {
public:
    virtual ~QueryAnswerer() = default;
    virtual bool answer(const OracleQuery& q, ExecContext& ctx) = 0;
};

/// Thrown by answerers that cannot handle a query; the run aborts with the
/// message.
class OracleFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Answers "does the machine halt within `steps` steps", running the queried
/// machine (and answering its own queries the same way).
class StepBoundAnswerer : public QueryAnswerer {
public:
    explicit StepBoundAnswerer(std::uint64_t steps) : steps_(steps) {}
    bool answer(const OracleQuery& q, ExecContext& ctx) override;
    std::uint64_t steps() const { return steps_; }

private:
    std::uint64_t steps_;
};

class NumericMachine;

/// Shared state of a family of runs: decoded programs and suspended nested
/// simulations, so that repeated SIM / RUN / oracle calls continue earlier
/// work instead of restarting it. Confined to one thread.
class ExecContext {
public:
    explicit ExecContext(QueryAnswerer* oracle = nullptr);
    ~ExecContext();
    ExecContext(const ExecContext&) = delete;
    ExecContext& operator=(const ExecContext&) = delete;

    QueryAnswerer* oracle() const { return oracle_; }
    void set_oracle(QueryAnswerer* o) { oracle_ = o; }

    /// Throws DecodeError.
    std::shared_ptr<const Program> decode(const BigInt& code);
    /// Answerer for SIM level n: queries answered by an n-step bound.
    StepBoundAnswerer* level_answerer(std::uint64_t level);
    /// The suspended run of `code` on `input` whose queries go to `answerer`.
    NumericMachine& nested(const BigInt& code, const std::vector<Rational>& input, QueryAnswerer* answerer,
                           unsigned depth);

    /// Drops cached runs.
    void clear();

private:
    QueryAnswerer* oracle_;
    std::map<BigInt, std::shared_ptr<const Program>> decoded_;
    std::map<std::uint64_t, std::unique_ptr<StepBoundAnswerer>> levels_;
    struct Key {
        BigInt code;
        std::vector<Rational> input;
        const QueryAnswerer* answerer;
        friend bool operator<(const Key& a, const Key& b) {
            if (a.code != b.code) return a.code < b.code;
            if (a.answerer != b.answerer) return std::less<const QueryAnswerer*>()(a.answerer, b.answerer);
            return a.input < b.input;
        }
    };
    std::map<Key, std::unique_ptr<NumericMachine>> runs_;
};

inline constexpr unsigned kMaxNesting = 64;

enum class MachineStatus { Running, Halted, Aborted };

/// A numeric configuration that can be advanced in slices.
class NumericMachine {
public:
    NumericMachine(std::shared_ptr<const Program> program, const std::vector<Rational>& input, ExecContext& ctx,
                   QueryAnswerer* answerer, unsigned depth = 0);
    ~NumericMachine();
    NumericMachine(const NumericMachine&) = delete;
    NumericMachine& operator=(const NumericMachine&) = delete;

    /// Runs until the status changes, `outputs().size() >= output_target`,
    /// or steps() reaches step_limit.
    void advance(std::uint64_t step_limit, std::size_t output_target = SIZE_MAX);

    MachineStatus status() const;
    const std::vector<OutputVector>& outputs() const;
    std::uint64_t steps() const;
    const std::string& abort_reason() const;
    void set_trace(PathTrace* trace);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

struct RunOptions {
    std::uint64_t budget = 100000;
    /// Answers QRY; null makes QRY abort the run.
    QueryAnswerer* oracle = nullptr;
    /// Shared context; a fresh one is used when null.
    ExecContext* context = nullptr;
};

RunOutcome run_bss(const Program& p, const std::vector<Rational>& input, const RunOptions& opts = {});
OutputStream run_strong(const Program& p, const std::vector<Rational>& input, std::size_t count,
                        const RunOptions& opts = {});
OutputStream run_weak(const Program& p, const std::vector<Rational>& input, std::size_t count,
                      const RunOptions& opts = {});
OutputStream run_stream(const Program& p, const std::vector<Rational>& input, std::size_t count, StreamMode mode,
                        const RunOptions& opts = {});
PathTrace record_path(const Program& p, const std::vector<Rational>& input, const RunOptions& opts = {});

struct Valid {};
struct Violation {
    std::size_t n = 0;
    std::size_t m = 0;
};
using Validation = std::variant<Valid, Violation>;

/// 1-norm distance of equal-dimension vectors.
Rational norm1_distance(const OutputVector& a, const OutputVector& b);
/// Checks every pair n < m <= upto (1-based) for equal dimension and
/// |y_n - y_m| <= 2^-n + 2^-m. Throws std::invalid_argument if upto exceeds
/// the stream length.
Validation validate_strong(const OutputStream& s, std::size_t upto);
Validation validate_strong(const std::vector<OutputVector>& vectors, std::size_t upto);

// --- symbolic execution --------------------------------------------------

using ValueSource = std::variant<Rational, ConstantApproximation>;
using Valuation = std::map<Variable, ValueSource>;

class UndecidedComparison : public std::runtime_error {
public:
    explicit UndecidedComparison(const std::string& what) : std::runtime_error(what) {}
};

struct SignResult {
    std::optional<int> sign;  // empty when undecided
    unsigned precision = 0;   // precision at which the decision was made
};

/// Decides the sign of f at the point described by the valuation: exact
/// substitution first, then interval refinement at precisions 1, 2, 4, ...
/// up to max_precision. Throws ApproximationFailure if a scheme fails and
/// std::invalid_argument if a variable of f is unbound.
SignResult symbolic_test(const RationalFunction& f, const Valuation& valuation, unsigned max_precision);

enum class ZeroTestPolicy {
    Throw,       // UndecidedComparison aborts the run
    AssumeZero,  // stand-in for asking the halting oracle whether f = 0
};

struct SymbolicOptions {
    std::uint64_t budget = 100000;
    /// SETC loads the variable c<k> instead of the constant's value.
    bool symbolic_constants = false;
    /// Values of x1..xd and (optionally) c<k>; unbound constants default to
    /// the program's own value.
    Valuation valuation;
    unsigned max_precision = 64;
    ZeroTestPolicy policy = ZeroTestPolicy::Throw;
    QueryAnswerer* oracle = nullptr;
    std::size_t output_target = SIZE_MAX;
};

struct SymbolicRun {
    std::vector<std::vector<RationalFunction>> outputs;
    PathTrace trace;
    bool halted = false;
    std::optional<std::string> aborted;
    std::uint64_t steps = 0;
};

/// Runs p with symbolic inputs x1..xd (d = dimension).
SymbolicRun run_symbolic(const Program& p, std::size_t dimension, const SymbolicOptions& opts);

}  // namespace bssvm
