#pragma once

#include <cstdlib>
#include <string>
#include <thread>

namespace selfsep {

struct Limits {
  std::size_t max_degree = 16;        // compute_m
  std::size_t max_action_degree = 100000;
  double budget_secs = 60.0;
  unsigned threads = 1;
  std::size_t max_table_bytes = std::size_t(1) << 31;
};

namespace detail {
inline bool env_number(const char* name, double& out) {
  const char* v = std::getenv(name);
  if (!v || !*v) return false;
  char* end = nullptr;
  double d = std::strtod(v, &end);
  if (end == v || d < 0) return false;
  out = d;
  return true;
}
} // namespace detail

// Defaults overridden by SELFSEP_MAX_DEGREE, SELFSEP_BUDGET_SECS, SELFSEP_THREADS.
inline Limits limits_from_env() {
  Limits l;
  unsigned hw = std::thread::hardware_concurrency();
  l.threads = hw == 0 ? 1 : hw;
  double d;
  if (detail::env_number("SELFSEP_MAX_DEGREE", d)) l.max_degree = static_cast<std::size_t>(d);
  if (detail::env_number("SELFSEP_BUDGET_SECS", d)) l.budget_secs = d;
  if (detail::env_number("SELFSEP_THREADS", d) && d >= 1) l.threads = static_cast<unsigned>(d);
  return l;
}

} // namespace selfsep
