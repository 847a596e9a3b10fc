#pragma once

#include <stdexcept>
#include <string>

namespace bct {

/// Input rejected by a precondition check (bad parameters, malformed data).
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// A configured size bound was exceeded; the computation was not attempted.
class BoundExceeded : public std::runtime_error {
 public:
  explicit BoundExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// A transitivity predicate was asked about a disconnected graph.
class DisconnectedGraph : public std::domain_error {
 public:
  explicit DisconnectedGraph(const std::string& what) : std::domain_error(what) {}
};

}  // namespace bct
