#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace modaldoc {

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an enumeration would exceed the active size cap.
class CapExceeded : public ModelError {
 public:
  using ModelError::ModelError;
};

struct Violation {
  std::string law;
  std::string witness;
};

using Violations = std::vector<Violation>;

template <class T>
struct Checked {
  std::optional<T> value;
  Violations violations;
  bool ok() const { return value.has_value(); }
};

inline void append(Violations& into, const Violations& from, const std::string& prefix = {}) {
  for (const auto& v : from) into.push_back({prefix + v.law, v.witness});
}

std::string join(const std::vector<std::string>& parts, const std::string& sep);

// Scoped cap on enumeration sizes; 0 means unlimited.
class EnumerationCap {
 public:
  explicit EnumerationCap(std::size_t limit);
  ~EnumerationCap();
  EnumerationCap(const EnumerationCap&) = delete;
  EnumerationCap& operator=(const EnumerationCap&) = delete;

 private:
  std::size_t previous_;
};

std::size_t enumeration_cap();
void enforce_cap(std::size_t n, const std::string& what);

}  // namespace modaldoc
