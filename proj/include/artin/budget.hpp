#pragma once

#include <cstdlib>
#include <string>

#include "artin/errors.hpp"

namespace artin {

/// Vertex budget for ball construction, overridable via ARTIN_BUDGET.
inline size_t vertex_budget() {
  if (const char* env = std::getenv("ARTIN_BUDGET")) {
    try {
      long long v = std::stoll(env);
      if (v > 0) return static_cast<size_t>(v);
    } catch (...) {
    }
  }
  return 2000000;
}

inline void check_budget(size_t count, const char* what) {
  if (count > vertex_budget())
    fail(ErrorKind::ResourceLimit, std::string(what) + " exceeded the vertex budget");
}

}  // namespace artin
