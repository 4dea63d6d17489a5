#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace paircorr::parallel {

/// Upper bound on worker threads used by the estimators and grid runners.
/// Zero means "hardware concurrency".
void set_max_threads(unsigned n);
unsigned max_threads();

/// Runs body(chunk) for chunk in [0, chunks) across up to max_threads()
/// workers. Chunk boundaries are chosen by the caller and never depend on the
/// thread count, so reductions performed in chunk order are reproducible.
void for_each_chunk(std::size_t chunks, const std::function<void(std::size_t)>& body);

/// Evaluates body over fixed chunks and returns per-chunk results in order.
template <typename R, typename F>
std::vector<R> map_chunks(std::size_t chunks, F&& body) {
    std::vector<R> out(chunks);
    for_each_chunk(chunks, [&](std::size_t c) { out[c] = body(c); });
    return out;
}

}  // namespace paircorr::parallel
