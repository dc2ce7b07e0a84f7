#pragma once

#include <stdexcept>
#include <string>

namespace kpc {

/// Rejected input: violated precondition or ill-posed model.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Unparsable textual input (a syntax problem, not a domain one).
class parse_error : public error {
 public:
  explicit parse_error(const std::string& what) : error(what) {}
};

/// A quantity the theory guarantees (integrality, exact divisibility) failed
/// to hold. Never swallowed: either a bug or a genuine counterexample.
class internal_error : public std::logic_error {
 public:
  explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw error(what);
}

inline void check_internal(bool cond, const std::string& what) {
  if (!cond) throw internal_error(what);
}

}  // namespace kpc
