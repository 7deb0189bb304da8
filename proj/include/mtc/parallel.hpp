#ifndef MTC_PARALLEL_HPP
#define MTC_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace mtc {

// Worker count: requested if positive, else MTC_THREADS, else hardware concurrency.
int resolve_threads(int requested = 0);

// Runs body(i) for i in [0, n) on up to `threads` workers. Results must not
// depend on which worker runs which index. The exception of the lowest failing
// index is rethrown.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

}  // namespace mtc

#endif
