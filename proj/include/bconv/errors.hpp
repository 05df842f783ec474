#pragma once

#include <stdexcept>
#include <string>

namespace bconv {

// Precondition or invariant of an operation was not met by the caller.
class ContractViolation : public std::invalid_argument {
 public:
  explicit ContractViolation(const std::string& what) : std::invalid_argument(what) {}
};

// A configured size cap (enumeration depth, pair count, matrix size) was exceeded.
class ResourceLimit : public std::length_error {
 public:
  explicit ResourceLimit(const std::string& what) : std::length_error(what) {}
};

// A search that is expected to succeed ran out of candidates.
class Unresolved : public std::runtime_error {
 public:
  explicit Unresolved(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bconv
