#pragma once

#include <cstddef>
#include <functional>

namespace weylwalk {

/// Worker count for momentum sweeps. 0 means hardware concurrency.
struct ExecPolicy {
  unsigned threads = 0;

  unsigned resolved() const;
  /// Reads WEYLWALK_THREADS; unset means 0. Throws std::invalid_argument on
  /// anything but a non-negative integer.
  static ExecPolicy from_environment();
};

/// Calls body(begin, end) over contiguous chunks of [0, n). Chunks are
/// disjoint; callers write results by index so reductions stay ordered.
void parallel_for(std::size_t n, const ExecPolicy& policy,
                  const std::function<void(std::size_t, std::size_t)>& body);

struct IndexedMax {
  double value = 0.0;
  std::size_t index = 0;
};

/// max_i f(i) with ties broken toward the smallest index, so the result does
/// not depend on the thread count.
IndexedMax parallel_max(std::size_t n, const ExecPolicy& policy,
                        const std::function<double(std::size_t)>& f);

}  // namespace weylwalk
