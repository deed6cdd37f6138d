#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace txnet {

// Worker count: hardware concurrency capped by the TXNET_THREADS env var.
std::size_t worker_count();

// Runs fn(block_index, begin, end) over [0, n) split into at most max_blocks
// contiguous blocks. The block layout depends only on (n, max_blocks), never
// on the worker count, so callers that store one partial result per block and
// reduce them in block order get identical output for any TXNET_THREADS.
void parallel_blocks(std::size_t n, std::size_t max_blocks,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

}  // namespace txnet
