#pragma once

#include <stdexcept>
#include <string>

namespace graphcs {

// Invalid argument to a generator, builder or calculator.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input is well formed but carries no usable information (all-zero weights,
// zero columns, b in {0,1} for the ER model, ...).
class DegenerateInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// E[H_M^* H_M] is singular or numerically close to it, so Gamma is undefined.
class AssumptionViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Support enumeration would exceed the configured cap.
class EnumerationCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on a value's flags does not hold (e.g. a signed H passed to
// the nonnegative shortcut).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed experiment configuration or preset request.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unreadable or unwritable file, or a file whose contents do not parse.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace graphcs
