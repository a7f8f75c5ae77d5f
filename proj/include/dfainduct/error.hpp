#pragma once

#include <stdexcept>
#include <string>

namespace dfainduct {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input file; carries the 1-based line number.
struct ParseError : Error {
    ParseError(const std::string& source, int line, const std::string& msg)
        : Error(source + ":" + std::to_string(line) + ": " + msg), line_number(line) {}
    int line_number;
};

// The same string appears with both labels.
struct LabelConflictError : Error {
    explicit LabelConflictError(const std::string& word)
        : Error("conflicting labels for string \"" + word + "\""), word(word) {}
    std::string word;
};

// Invalid argument to an operation (symbol outside alphabet, unreachable state, ...).
struct InputError : Error {
    using Error::Error;
};

// Invalid configuration parameter (flip budget, generator bounds, ...).
struct ParameterError : Error {
    using Error::Error;
};

// State budget too small for a fixed clique.
struct BudgetError : Error {
    using Error::Error;
};

// External or internal solver misbehaved (distinct from a timeout).
struct BackendError : Error {
    using Error::Error;
};

// Satisfying model that does not decode to a DFA.
struct ModelError : Error {
    using Error::Error;
};

// Request exceeds the desk-scale guard of an exhaustive routine.
struct GuardError : Error {
    using Error::Error;
};

}  // namespace dfainduct
