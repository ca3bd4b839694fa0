#include "fbmhd/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace fbmhd {

namespace {
std::atomic<int> g_threads{0};
}

void set_thread_count(int n) { g_threads = std::max(0, n); }
int thread_count() { return g_threads; }

int init_threads_from_env() {
  if (const char* s = std::getenv("FBMHD_THREADS")) set_thread_count(std::atoi(s));
  return g_threads;
}

void parallel_for(int n, const std::function<void(int, int)>& body) {
  const int t = std::min(thread_count(), n);
  if (t <= 1) {
    body(0, n);
    return;
  }
  // static contiguous partition keeps results independent of scheduling
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errs(t);
  const int chunk = (n + t - 1) / t;
  for (int w = 0; w < t; ++w) {
    const int b = w * chunk, e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&, w, b, e] {
      try {
        body(b, e);
      } catch (...) {
        errs[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& ep : errs)
    if (ep) std::rethrow_exception(ep);
}

}  // namespace fbmhd
