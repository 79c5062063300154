// SPDX-License-Identifier: Apache-2.0
#include "stw/parallel.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <string>

namespace stw {

namespace {

int env_cap() {
  const char* v = std::getenv("STL_THREADS");
  if (v == nullptr || *v == '\0') return 0;
  try {
    return std::max(1, std::stoi(v));
  } catch (const std::exception&) {
    return 0;
  }
}

}  // namespace

int thread_budget() {
  const int cap = env_cap();
  const int avail = omp_get_num_procs();
  return cap > 0 ? std::min(cap, avail) : avail;
}

void apply_thread_cap() { omp_set_num_threads(thread_budget()); }

}  // namespace stw
