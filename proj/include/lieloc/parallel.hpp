#pragma once

#include <cstddef>
#include <functional>

namespace lieloc {

/// Worker count from LIELOC_THREADS, else std::thread::hardware_concurrency().
std::size_t default_thread_count();

/// Splits [0, n) into `threads` contiguous blocks; calls body(block, begin, end)
/// for each, concurrently. Blocks are numbered in index order. Exceptions
/// thrown by a block are rethrown on the calling thread (first block wins).
void parallel_blocks(std::size_t n, std::size_t threads,
                     const std::function<void(std::size_t block, std::size_t begin, std::size_t end)>& body);

}  // namespace lieloc
