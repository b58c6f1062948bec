#pragma once

namespace textcat {

// Thread-count control for the OpenMP kernels. All kernels assign each
// output element to exactly one thread with a fixed per-element evaluation
// order, so results are bit-identical for any thread count (including 1).
int max_threads();
void set_threads(int n);  // n <= 0 restores the OpenMP default

}  // namespace textcat
