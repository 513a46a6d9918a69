#pragma once

#include <stdexcept>
#include <string>

namespace cold {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Caller handed us something that violates a documented precondition
// (malformed file, vertex out of range, set that is not a clique, ...).
class InputError : public Error {
public:
    explicit InputError(const std::string& what) : Error(what) {}
};

// Two rule applications tried to direct the same edge both ways.
// Carries enough context to show the user which edge and which rule
// instances disagreed.
class ConflictError : public Error {
public:
    ConflictError(const std::string& what,
                  std::string existing_witness,
                  std::string attempted_witness)
        : Error(what),
          existing(std::move(existing_witness)),
          attempted(std::move(attempted_witness)) {}

    std::string existing;   // description of the instance that won the edge
    std::string attempted;  // description of the instance that lost
};

// A guard that should be unreachable fired. Indicates a bug in this
// library, not in the caller's input.
class InternalError : public Error {
public:
    explicit InternalError(const std::string& what) : Error(what) {}
};

}  // namespace cold
