#pragma once

#include <stdexcept>

namespace poloc {

// Raised for malformed arguments that violate an operation's preconditions.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidThreshold : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class InsufficientShares : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class DuplicateIndex : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Corrupt or unrecognised serialized input (key files, CSV, JSON).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace poloc
