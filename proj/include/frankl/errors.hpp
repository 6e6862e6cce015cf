#pragma once

#include <stdexcept>
#include <string>

namespace frankl {

// Error taxonomy shared with the CLI exit-code contract:
//   parse_error / domain_error / size_overflow_error -> exit 2 (bad input)
//   precondition_error                               -> exit 3 (a stated hypothesis fails)
//   internal_error                                   -> exit 4 (a theorem-backed check failed)
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input text does not conform to the family/topology file format.
struct parse_error : error {
    using error::error;
};

// An argument is outside an operation's domain (not a member, unknown label, ...).
struct domain_error : error {
    using error::error;
};

// A result would exceed a configured size cap (e.g. the union-closure member cap).
struct size_overflow_error : error {
    using error::error;
};

// A hypothesis required by the operation does not hold for the given input.
struct precondition_error : error {
    using error::error;
};

// An internal consistency check failed.  These checks re-verify facts the
// theory guarantees (witness injectivity, cover structure, ...), so this
// firing means a bug, not a bad input.
struct internal_error : error {
    using error::error;
};

} // namespace frankl
