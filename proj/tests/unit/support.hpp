#pragma once

#include <string>
#include <vector>

#include "bssvm/assembler.hpp"
#include "bssvm/rational.hpp"

namespace testing {

inline bssvm::Rational Q(const char* text) { return bssvm::Rational::parse(text); }

inline std::vector<bssvm::Rational> V(std::initializer_list<const char*> values) {
    std::vector<bssvm::Rational> out;
    for (auto v : values) out.push_back(Q(v));
    return out;
}

inline bssvm::Program fixture(const std::string& name) {
    return bssvm::load_program_file(std::string(BSSVM_FIXTURES) + "/" + name + ".bss");
}

inline std::string fixture_path(const std::string& name) { return std::string(BSSVM_FIXTURES) + "/" + name + ".bss"; }

}  // namespace testing
