#pragma once

#include <cstddef>
#include <functional>
#include <optional>

namespace subsym {

/// Splits [0, n) into contiguous chunks and runs fn(begin, end) on up to
/// `threads` workers. Chunks are disjoint, so callers writing into
/// preallocated slots get output that does not depend on the thread count.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t, std::size_t)> &fn);

/// --threads value if given, else SUBSYM_THREADS, else 1.
unsigned resolve_threads(std::optional<unsigned> flag);

} // namespace subsym
