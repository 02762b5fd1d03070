#pragma once

#include <stdexcept>
#include <string>

namespace metgraph {

/// Bad or inconsistent input (unparseable file, disconnected graph,
/// nonpositive length, resource cap exceeded). CLI exit code 1.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A numerical routine failed to reach its tolerance. CLI exit code 2.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A mathematical identity that must hold failed its tolerance. CLI exit code 3.
struct InvariantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace metgraph
