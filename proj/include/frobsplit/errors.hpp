#pragma once

#include <stdexcept>
#include <string>

namespace frobsplit {

/// Two values from different field contexts were combined.
struct ContextMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A mathematically invalid input (division by zero, coefficient out of
/// range, singular substitution matrix, ...).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A configured resource ceiling (term budget, p^e ceiling, search bound)
/// was exceeded.  CLI exit code 2.
struct ResourceLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An identity that must hold by construction failed; indicates a bug in
/// this library, never bad user input.  CLI exit code 1.
struct IdentityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed textual input (divisor specs, certificate files).  CLI exit
/// code 3.
struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace frobsplit
