#pragma once

namespace helewave::parallel {

/// Number of worker threads used by the batch kernels.
int threads();

/// Sets the worker count; values < 1 restore the default. With one thread
/// every kernel runs in a fixed serial order. Kernels reduce in a fixed order
/// regardless, so results do not depend on this setting.
void set_threads(int n);

/// Applies HELEWAVE_THREADS if set. Returns the resulting thread count.
int configure_from_env();

bool openmp_enabled();

}  // namespace helewave::parallel
