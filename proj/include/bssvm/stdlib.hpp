#pragma once

// The shipped example machines. Sources are compiled into the library, so
// lookups do not depend on the working directory.

#include <string>
#include <vector>

#include "bssvm/exec.hpp"
#include "bssvm/program.hpp"

namespace bssvm {

struct StdlibEntry {
    std::string name;
    Program program;
    StreamMode mode;
    std::string contract;
    std::string source;
    /// Inputs on which the contract is checked by the test suite.
    std::vector<std::vector<Rational>> curated;
};

/// All entries, sorted by name.
const std::vector<StdlibEntry>& stdlib_entries();
/// Throws std::out_of_range for unknown names.
const StdlibEntry& stdlib_entry(const std::string& name);

/// Small helper machines used as arguments of the code-taking entries.
Program halt_machine();
Program loop_machine();
Program echo_machine();
/// Prints 1, 1/2, 1/4, ... or 0, 1, 0, 1, ... forever.
Program geometric_machine();
Program alternating_machine();

}  // namespace bssvm
