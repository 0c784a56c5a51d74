#pragma once

#include <stdexcept>
#include <string>

#include "bssvm/program.hpp"

namespace bssvm {

class DecodeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Natural-number code of a program. 0 is never a code.
struct GoedelCode {
    BigInt value;

    std::string hex() const;
    /// Accepts an optional "0x" prefix.
    static GoedelCode from_hex(const std::string& text);

    friend bool operator==(const GoedelCode&, const GoedelCode&) = default;
};

/// Labels and the program name are not part of the code.
GoedelCode encode_machine(const Program& p);
/// Throws DecodeError on anything that is not the code of a valid program.
Program decode_machine(const GoedelCode& g);

/// A code stored in a real register or constant: must be a positive integer.
GoedelCode code_from_rational(const Rational& q);

}  // namespace bssvm
