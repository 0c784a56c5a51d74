#pragma once

// Answering halting queries at desk scale. The true halting set cannot be
// decided; Budgeted answers "halts within N steps" (sound for yes), Table is
// curated ground truth for test machines, Layered is Budgeted with a level
// that may be raised between queries.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bssvm/exec.hpp"

namespace bssvm {

class UnknownQuery : public OracleFailure {
public:
    using OracleFailure::OracleFailure;
};

struct Budgeted {
    std::uint64_t steps = 1;
};

struct Table {
    /// Ground truth; empty optional means the query is not declared.
    std::function<std::optional<bool>(const OracleQuery&)> lookup;

    static Table from_map(std::map<OracleQuery, bool> entries);
};

struct Layered {
    std::uint64_t level = 1;
};

using OraclePolicy = std::variant<Budgeted, Table, Layered>;

struct OracleLogEntry {
    OracleQuery query;
    std::uint64_t budget = 0;  // 0 for table answers
    bool answer = false;
};

/// Formats "code_hex r1,r2,... answer" ("-" for an empty input).
std::string format_query_line(const OracleQuery& q, bool answer);
/// Parses a table file; throws ParseError with the line number.
std::map<OracleQuery, bool> parse_table(const std::string& text);
std::map<OracleQuery, bool> load_table_file(const std::string& path);

class Oracle : public QueryAnswerer {
public:
    explicit Oracle(OraclePolicy policy);
    ~Oracle() override;

    /// Answers within the caller's execution context.
    bool answer(const OracleQuery& q, ExecContext& ctx) override;
    /// Standalone query with a private context. Throws UnknownQuery for
    /// undeclared Table queries and OracleFailure for malformed codes.
    bool halting_query(const OracleQuery& q);

    /// Layered only: raises (or lowers) the step budget used from now on.
    void set_level(std::uint64_t level);
    const OraclePolicy& policy() const { return policy_; }

    const std::vector<OracleLogEntry>& log() const { return log_; }
    std::string dump_log() const;

private:
    std::uint64_t current_budget() const;

    OraclePolicy policy_;
    std::vector<OracleLogEntry> log_;
    std::map<std::pair<OracleQuery, std::uint64_t>, bool> cache_;
    std::map<std::uint64_t, std::unique_ptr<StepBoundAnswerer>> bounds_;
    std::unique_ptr<ExecContext> own_ctx_;
};

struct Accept {
    std::uint64_t bound = 0;
};
struct NoAnswer {
    std::uint64_t cap = 0;
};
using BoundedVerdict = std::variant<Accept, NoAnswer>;

/// The searcher used for bound n: on input x it simulates the coded machine
/// and halts as soon as some output has 1-norm greater than n.
Program bound_searcher(const GoedelCode& code, std::uint64_t bound);

/// For n = 1, 2, ..., bound_cap asks whether bound_searcher(code, n) halts on
/// input; accepts at the first n where the oracle says no.
BoundedVerdict semidecide_bounded(const GoedelCode& code, const std::vector<Rational>& input, Oracle& oracle,
                                  std::uint64_t bound_cap);

/// Parses "budget:N", "layered:N" or "table:PATH".
OraclePolicy parse_policy(const std::string& descriptor);

}  // namespace bssvm
