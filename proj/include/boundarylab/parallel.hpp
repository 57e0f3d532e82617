#ifndef BOUNDARYLAB_PARALLEL_HPP
#define BOUNDARYLAB_PARALLEL_HPP

#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

namespace boundarylab {

// 0 means "use hardware_concurrency", anything else is taken literally.
inline int resolve_threads(int requested) {
    if (requested < 0) throw std::invalid_argument("thread count must be >= 0");
    if (requested == 0) {
        unsigned hc = std::thread::hardware_concurrency();
        return hc == 0 ? 1 : static_cast<int>(hc);
    }
    return requested;
}

// Runs body(i) for i in [0, count) across up to `threads` workers. Each index
// is processed exactly once; workers take disjoint contiguous blocks. The
// body must write only to slot i of preallocated storage (or otherwise touch
// per-index state) so results are identical for every thread count.
template <typename Body>
void parallel_for(std::int64_t count, int threads, const Body& body) {
    if (count <= 0) return;
    int n = resolve_threads(threads);
    if (n > count) n = static_cast<int>(count);
    if (n <= 1) {
        for (std::int64_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n));
    std::int64_t chunk = (count + n - 1) / n;
    for (int t = 0; t < n; ++t) {
        std::int64_t lo = t * chunk;
        std::int64_t hi = lo + chunk < count ? lo + chunk : count;
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] {
            for (std::int64_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace boundarylab

#endif  // BOUNDARYLAB_PARALLEL_HPP
