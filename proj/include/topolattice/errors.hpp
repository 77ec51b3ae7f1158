#pragma once

#include <stdexcept>
#include <string>

namespace topolattice {

/// Invalid physical parameter or index (CLI exit code 2).
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Malformed or inconsistent experiment configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A numerical contract was violated, e.g. eigensolver residual (exit code 3).
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// File read/write failure (exit code 4).
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace topolattice
