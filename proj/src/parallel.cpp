#include "textcat/parallel.hpp"

#include <omp.h>

namespace textcat {

namespace {
int g_threads = 0;  // 0 = OpenMP default
}

int max_threads() {
  return g_threads > 0 ? g_threads : omp_get_max_threads();
}

void set_threads(int n) {
  g_threads = n > 0 ? n : 0;
  if (n > 0) omp_set_num_threads(n);
}

}  // namespace textcat
