#pragma once

#include <functional>

namespace fbmhd {

// Worker count for loops over independent grid points. 0 or 1 runs inline.
void set_thread_count(int n);
int thread_count();
// Reads FBMHD_THREADS once; returns the value applied.
int init_threads_from_env();

void parallel_for(int n, const std::function<void(int begin, int end)>& body);

}  // namespace fbmhd
