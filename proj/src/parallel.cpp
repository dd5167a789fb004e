#include "aco/parallel.hpp"

#include <omp.h>

#include <thread>

namespace aco {
namespace {
int default_threads = -1;
}

void set_thread_count(int threads) {
  if (default_threads < 0) default_threads = omp_get_max_threads();
  omp_set_num_threads(threads > 0 ? threads : default_threads);
}

int thread_count() { return omp_get_max_threads(); }

int available_cores() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? omp_get_num_procs() : static_cast<int>(hw);
}

}  // namespace aco
