#ifndef BNQN_PARALLEL_HPP
#define BNQN_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace bnqn {

/// Worker count: BNQN_THREADS if set to a positive integer, otherwise the
/// available hardware parallelism.
unsigned default_thread_count();

/// Calls body(i) for every i in [0, count), distributing indices dynamically
/// over `threads` workers (0 = default_thread_count()). Each index is visited
/// by exactly one worker. The first exception thrown by a body is rethrown
/// after all workers have joined.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body, unsigned threads = 0);

}  // namespace bnqn

#endif  // BNQN_PARALLEL_HPP
