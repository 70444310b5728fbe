#pragma once

#include <stdexcept>
#include <string>

namespace torsionlab {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An enumeration or oracle was asked to exceed its configured bound.
struct size_error : error {
    using error::error;
};

// A documented precondition of an operation was violated by the caller.
struct contract_error : error {
    using error::error;
};

// An internal certification failed: a mathematical law this library relies on
// did not hold on concrete data. Never expected; indicates a bug.
struct theorem_violation : error {
    using error::error;
};

struct parse_error : error {
    using error::error;
};

// Direct-sum decomposition over the rationals could not be completed by the
// implemented heuristics.
struct undecidable_decomposition : error {
    using error::error;
};

}  // namespace torsionlab
