#pragma once

#include <cstddef>
#include <functional>

namespace gumbelscale {

// Number of Monte Carlo draws per indexed sub-stream. Chunk boundaries are a
// function of the draw index only, which is what makes results independent of
// the worker count.
inline constexpr std::size_t kChunkSize = 4096;

inline std::size_t chunk_count(std::size_t draws) {
  return (draws + kChunkSize - 1) / kChunkSize;
}

// Runs fn(i) for i in [0, count) on up to `workers` threads. The first
// exception thrown by any task is rethrown on the calling thread after all
// workers have joined.
void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& fn);

}  // namespace gumbelscale
