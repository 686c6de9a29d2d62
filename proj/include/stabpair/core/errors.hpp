#pragma once

#include <stdexcept>
#include <string>

namespace stabpair {

// Exit-code classes used by the CLI: schema 2, precondition 3, convergence 4.
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DimensionError : PreconditionError {
  using PreconditionError::PreconditionError;
};

struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

inline void require_dims(bool ok, const std::string& what) {
  if (!ok) throw DimensionError(what);
}

}  // namespace stabpair
