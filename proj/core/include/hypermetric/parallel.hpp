#pragma once

#include <cstddef>
#include <functional>

namespace hypermetric {

/// Worker cap from HYPERMETRIC_THREADS (unset or 0 = hardware concurrency).
std::size_t configured_threads();

/// Number of chunks `parallel_for` will use for `count` items.
std::size_t chunk_count(std::size_t count);

/// Splits [0, count) into `chunk_count(count)` contiguous chunks and runs
/// `body(begin, end, chunk)` for each, concurrently when more than one worker
/// is configured. Exceptions from any chunk are rethrown (first chunk wins).
void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

}  // namespace hypermetric
