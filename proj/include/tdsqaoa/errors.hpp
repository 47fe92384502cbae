#pragma once

#include <stdexcept>
#include <string>

namespace tdsqaoa {

/// Bad argument: out-of-range index, size mismatch, invalid parameter.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// The instance admits no total dominating set (some vertex is isolated).
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

/// Request exceeds what the dense simulation can hold in memory.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// Largest register the exhaustive oracles and the statevector accept.
inline constexpr int kMaxDenseVars = 24;

}  // namespace tdsqaoa
