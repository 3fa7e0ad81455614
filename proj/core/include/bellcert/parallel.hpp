#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace bellcert {

/// Runs fn(i) for i in [0, n) on up to `jobs` threads; results are returned
/// in index order, so output is independent of scheduling.
template <typename T>
std::vector<T> parallel_map(int n, int jobs,
                            const std::function<T(int)>& fn) {
  std::vector<T> out(static_cast<size_t>(std::max(n, 0)));
  if (n <= 0) return out;
  jobs = std::max(1, std::min(jobs, n));
  if (jobs == 1) {
    for (int i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        out[i] = fn(i);
      }
    });
  }
  for (auto& t : workers) t.join();
  return out;
}

}  // namespace bellcert
