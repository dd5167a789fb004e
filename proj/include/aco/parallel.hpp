#pragma once

namespace aco {

/// Worker threads used by the batched kernels. 0 restores the default.
void set_thread_count(int threads);
int thread_count();
int available_cores();

}  // namespace aco
