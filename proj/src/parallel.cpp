#include "nsp2d/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nsp2d {

namespace {

int threads_from_env() {
  const char* env = std::getenv("NSP2D_THREADS");
  if (!env) return 1;
  try {
    const int v = std::stoi(env);
    return v > 0 ? v : 1;
  } catch (...) {
    return 1;
  }
}

std::atomic<int>& thread_setting() {
  static std::atomic<int> value{threads_from_env()};
  return value;
}

}  // namespace

void set_thread_count(int threads) {
  thread_setting().store(threads > 0 ? threads : 1);
}

int thread_count() { return thread_setting().load(); }

void parallel_rows(int rows, const std::function<void(int)>& body) {
  const int threads = thread_count();
#ifdef _OPENMP
  if (threads > 1 && rows > 1) {
#pragma omp parallel for schedule(static) num_threads(threads)
    for (int i = 0; i < rows; ++i) body(i);
    return;
  }
#endif
  (void)threads;
  for (int i = 0; i < rows; ++i) body(i);
}

}  // namespace nsp2d
