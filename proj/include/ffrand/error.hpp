#pragma once

#include <stdexcept>
#include <string>

namespace ffrand {

// Every failure the library reports derives from Error. The subclasses map
// one-to-one onto the CLI exit codes (2 input, 3 resource cap, 4 verification).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad edges, non-permutations, size mismatches, bad params.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A formula evaluated outside the region where it is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Vertex cap, enumeration cap or integer overflow.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// An invariant the theory guarantees did not hold. Always an engine bug.
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace ffrand
