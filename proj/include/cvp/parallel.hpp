#pragma once

namespace cvp {

enum class Execution { Serial, Parallel };

// 0 restores the OpenMP default.
void set_thread_count(int threads);
int thread_count();

// Reads CVP_THREADS; unset, empty or invalid means 0.
int threads_from_environment();

}  // namespace cvp
