// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>

namespace aeronet {

// Worker count: min(hardware threads, AERONET_THREADS when set), at least 1.
int worker_count();

// Runs fn(i) for i in [0, n). Work is split into contiguous blocks across
// worker threads; each index must write only its own output slot so results
// are identical for any worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace aeronet
