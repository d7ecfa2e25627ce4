#pragma once

#include <cstddef>
#include <functional>

namespace multiway {

// Effective worker count: MULTIWAY_THREADS if set, else hardware concurrency,
// never less than 1. Read per call so callers may adjust the environment
// between runs.
unsigned thread_cap();

// Runs fn(i) for every i in [0, n). Each invocation must write only to its own
// per-index slot; callers merge results in index order afterwards, so thread
// scheduling cannot leak into the output. A nonzero shuffle_seed permutes the
// order in which work items are handed to workers, which exercises exactly
// that contract.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                  unsigned shuffle_seed = 0);

}  // namespace multiway
