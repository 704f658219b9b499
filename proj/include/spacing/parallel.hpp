#pragma once

#include <cstddef>
#include <functional>

namespace spacing {

/// Pool size: SPACING_LAB_THREADS if set and positive, else `requested` if
/// positive, else the number of processors.
unsigned resolve_threads(unsigned requested = 0);

/// Runs body(i) for i in [0, count) on up to `threads` workers. Each index is
/// visited exactly once; the first exception thrown is rethrown after join.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace spacing
