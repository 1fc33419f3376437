#pragma once

#include <cstddef>
#include <functional>

namespace sshd {

// Worker count from SSH_DISPERSIVE_THREADS, else the hardware concurrency.
unsigned worker_count();

// Runs body(i) for i in [0, n). Each index is handled exactly once; callers
// write results into per-index slots so the reduction order stays fixed.
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body);

} // namespace sshd
