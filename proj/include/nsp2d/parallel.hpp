#pragma once

#include <functional>

namespace nsp2d {

/// Caps intra-run parallelism. Reads NSP2D_THREADS on first use when never
/// set explicitly.
void set_thread_count(int threads);
int thread_count();

/// Runs body(i) for i in [0, rows). Bodies must only write row-private data;
/// no reductions happen across threads, so results do not depend on the
/// thread count.
void parallel_rows(int rows, const std::function<void(int)>& body);

}  // namespace nsp2d
