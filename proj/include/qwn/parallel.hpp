#ifndef QWN_PARALLEL_HPP
#define QWN_PARALLEL_HPP

#include <cstddef>
#include <cstdlib>
#include <future>
#include <thread>
#include <vector>

namespace qwn {

// Worker cap for internal sweeps: hardware concurrency, clamped by the
// QWNLAB_THREADS environment variable when set.
inline std::size_t thread_cap() {
  std::size_t cap = std::thread::hardware_concurrency();
  if (cap == 0) cap = 1;
  if (const char* env = std::getenv("QWNLAB_THREADS")) {
    const long requested = std::strtol(env, nullptr, 10);
    if (requested >= 1 && static_cast<std::size_t>(requested) < cap) {
      cap = static_cast<std::size_t>(requested);
    }
  }
  return cap;
}

// fn(i) for i in [0, n), chunked over threads. Callers keep determinism by
// writing results into slot i only.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t workers = std::min(thread_cap(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::future<void>> chunks;
  chunks.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    chunks.push_back(std::async(std::launch::async, [&fn, begin, end] {
      for (std::size_t i = begin; i < end; ++i) fn(i);
    }));
  }
  for (auto& c : chunks) c.get();
}

}  // namespace qwn

#endif  // QWN_PARALLEL_HPP
