#ifndef TORUSPEC_UTIL_HPP
#define TORUSPEC_UTIL_HPP

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace toruspec {

/// FNV-1a, used for certificate hashes embedded in reports.
inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

/// Worker count from TORUSPEC_WORKERS (default 1).
inline int worker_count() {
  if (const char* env = std::getenv("TORUSPEC_WORKERS")) {
    const int v = std::atoi(env);
    if (v >= 1 && v <= 256) return v;
  }
  return 1;
}

/// Deterministic parallel loop: each index writes its own slot, so the result
/// is independent of the scheduling.
inline void parallel_for(long count, const std::function<void(long)>& body) {
  const int workers = worker_count();
  if (workers <= 1 || count < 4 * workers) {
    for (long i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (long i = w; i < count; i += workers) body(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace toruspec

#endif
