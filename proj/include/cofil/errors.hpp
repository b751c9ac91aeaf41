#ifndef COFIL_ERRORS_HPP
#define COFIL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cofil {

// Filtration cap exceeded: the requested operation would produce elements of
// degree beyond the model's tracked range.  Callers that can retry with a
// larger cap catch this; the CLI maps it to exit code 3.
struct CapOverflow : std::runtime_error {
    explicit CapOverflow(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input: invariants of a domain type are violated, a precondition
// fails, or a schema does not validate.  CLI exit code 2.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Two independent computations of the same quantity disagree.  This always
// signals an implementation bug, never bad user input.  CLI exit code 4.
struct CrossCheckFailure : std::runtime_error {
    explicit CrossCheckFailure(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace cofil

#endif
