#pragma once

#include <stdexcept>
#include <string>

namespace rmacode {

// Invalid or out-of-range construction parameters (m, r, M, l, seeds, trials).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Vector length does not match what an operation requires.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An enumeration would exceed a configured limit; the message names the limit.
class GuardrailError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The closed form found no prefix-form codeword in the admissible weight
// range; callers should fall back to the brute-force route.
class NoWitnessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed serialized input (hex strings, key files, wire bytes).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rmacode
