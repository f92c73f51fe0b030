#pragma once

#include <stdexcept>
#include <string>

namespace tocq {

// Inputs outside an operation's domain (nonpositive noise, bad sizes, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Request for a quantizer design that has no closed form here (N > 1, sum-rate).
class UnsupportedCase : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A dataset or model file was produced for a different scenario/decision set.
class FingerprintMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Training produced a nonfinite loss.
class Divergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed file contents.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tocq
