#pragma once

#include <string>
#include <string_view>

#include "bssvm/program.hpp"

namespace bssvm {

/// Parses assembly text. Throws SyntaxError for malformed lines and
/// ValidationError (message prefixed with line:column) for bad references.
Program parse_program(std::string_view source);

/// Canonical assembly text; parse_program(print_program(p)) == p and printing
/// that result again gives the same bytes.
std::string print_program(const Program& p);

/// Reads and parses a .bss file.
Program load_program_file(const std::string& path);

}  // namespace bssvm
