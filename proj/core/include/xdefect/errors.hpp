#pragma once

#include <stdexcept>
#include <string>

namespace xdefect {

/// A numeric input lies outside the domain of an operation (degenerate box,
/// non-finite decode result, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Caller violated a structural precondition (mismatched lengths, shapes).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Invalid configuration object (empty anchor scales, zero loss weights, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// File could not be read, written or parsed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace xdefect
