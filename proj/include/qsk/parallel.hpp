#pragma once

#include <cstddef>
#include <functional>

namespace qsk {

/// Worker count: QSK_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
[[nodiscard]] unsigned thread_count();

/// Runs body(chunk) for chunk in [0, chunks) across thread_count() workers.
/// Each chunk must write only to its own output slot.
void parallel_for(std::size_t chunks, const std::function<void(std::size_t)>& body);

}  // namespace qsk
