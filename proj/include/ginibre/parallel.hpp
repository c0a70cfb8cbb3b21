#pragma once

#include <cstddef>
#include <functional>

namespace ginibre {

// Worker count: explicit request > GINIBRE_THREADS env > hardware.
int resolve_workers(int requested = 0);

// Runs fn(chunk_index) for chunk_index in [0, chunk_count) on `workers`
// threads.  Chunk assignment is dynamic but chunks are fixed, so any
// output indexed by chunk is independent of the worker count.
void parallel_for_chunks(std::size_t chunk_count, int workers,
                         const std::function<void(std::size_t)>& fn);

}  // namespace ginibre
