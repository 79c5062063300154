// SPDX-License-Identifier: Apache-2.0
// Thread-count policy shared by the OpenMP kernels.
#pragma once

namespace stw {

enum class Exec { serial, parallel };

// Thread budget: omp_get_max_threads(), capped by the STL_THREADS environment variable.
int thread_budget();

// Re-reads STL_THREADS and applies the cap to the OpenMP runtime.
void apply_thread_cap();

}  // namespace stw
