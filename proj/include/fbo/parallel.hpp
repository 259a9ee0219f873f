#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace fbo {

// Worker count: FBO_LAB_THREADS if set (>= 1), else hardware concurrency.
std::size_t worker_count();

// Runs body(i) for i in [0, n) on up to worker_count() threads. Callers
// write results into per-index slots and fold them afterwards in index
// order, so output never depends on scheduling. The first exception thrown
// by any body is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

// Per-sample seed derived from a run seed (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

} // namespace fbo
