#pragma once

#include <algorithm>
#include <string>

#include "modaldoc/common.hpp"

inline bool has_law(const modaldoc::Violations& v, const std::string& law) {
  return std::any_of(v.begin(), v.end(), [&](const modaldoc::Violation& x) { return x.law == law; });
}

inline bool has_law_prefix(const modaldoc::Violations& v, const std::string& prefix) {
  return std::any_of(v.begin(), v.end(), [&](const modaldoc::Violation& x) { return x.law.rfind(prefix, 0) == 0; });
}
