#pragma once

#include <stdexcept>

namespace eoq {

// Error taxonomy, mirrored by the CLI exit codes: malformed input (2),
// a mathematical claim that fails exact verification (3), rejected
// witness data (4), and an exceeded search bound (5). Everything else
// (dimension mismatches, wrong rings, bad indices) is a programming
// error and throws std::invalid_argument.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct VerifyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct WitnessError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BoundError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace eoq
