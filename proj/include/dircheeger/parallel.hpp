#pragma once

#include <cstddef>
#include <functional>

namespace dircheeger {

/// 0 means one thread per available core.
int resolve_threads(int requested);

/// Calls body(i) for i in [0, count) on up to `threads` threads. Every index
/// runs even if another throws; the exception of the lowest failing index is
/// rethrown afterwards.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

}  // namespace dircheeger
