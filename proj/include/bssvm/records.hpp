#pragma once

// One-JSON-object-per-line dumps of streams and traces. The writer formats
// by hand so the bytes do not depend on any library's whitespace choices.

#include <string>
#include <vector>

#include "bssvm/exec.hpp"

namespace bssvm {

/// {"n": 1, "dim": 2, "values": ["1/3", "0/1"]}
std::string stream_record(std::size_t n, const OutputVector& v);
std::string stream_to_jsonl(const std::vector<OutputVector>& vectors);

/// Reads a stream dump; n must count 1, 2, ... and dim must match the values.
/// Throws ParseError on malformed input.
std::vector<OutputVector> parse_stream_jsonl(const std::string& text);

/// {"pc": 3, "kind": "JLT", "taken": true, "lhs": ..., "rhs": ..., "difference": ...}
std::string branch_record(const BranchRecord& b);
std::string trace_to_jsonl(const PathTrace& t);

}  // namespace bssvm
