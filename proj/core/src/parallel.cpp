#include "weylwalk/parallel.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <exception>
#include <stdexcept>
#include <string_view>
#include <thread>
#include <vector>

namespace weylwalk {

unsigned ExecPolicy::resolved() const {
  if (threads > 0) return threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

ExecPolicy ExecPolicy::from_environment() {
  const char* raw = std::getenv("WEYLWALK_THREADS");
  if (raw == nullptr || *raw == '\0') return {};
  const std::string_view text(raw);
  unsigned value = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw std::invalid_argument("WEYLWALK_THREADS must be a non-negative integer");
  }
  return ExecPolicy{value};
}

void parallel_for(std::size_t n, const ExecPolicy& policy,
                  const std::function<void(std::size_t, std::size_t)>& body) {
  if (n == 0) return;
  const std::size_t workers = std::min<std::size_t>(policy.resolved(), n);
  if (workers <= 1) {
    body(0, n);
    return;
  }
  const std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, w, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

IndexedMax parallel_max(std::size_t n, const ExecPolicy& policy,
                        const std::function<double(std::size_t)>& f) {
  std::vector<double> values(n);
  parallel_for(n, policy, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) values[i] = f(i);
  });
  IndexedMax best;
  best.value = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (values[i] > best.value) best = {values[i], i};
  }
  if (n == 0) best.value = 0.0;
  return best;
}

}  // namespace weylwalk
