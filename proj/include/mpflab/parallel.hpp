#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace mpflab {

// fn(i) for i in [0, count), interleaved over threads. Results must be
// written by index so ordering never depends on scheduling.
template <class Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  const int nt = std::max(1, std::min<int>(threads, static_cast<int>(count)));
  if (nt == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errs(nt);
  for (int w = 0; w < nt; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += nt) fn(i);
      } catch (...) {
        errs[w] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

}  // namespace mpflab
