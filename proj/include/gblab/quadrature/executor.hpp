#pragma once

#include <cstddef>
#include <functional>

namespace gblab {

// Static-chunk worker pool. Callers write results into per-index slots, so the
// outcome never depends on the worker count.
class Executor {
public:
    explicit Executor(int workers = 1);

    int workers() const { return workers_; }

    // Runs fn(i) for every i in [0, n). If any call throws, the exception from the
    // lowest failing index is rethrown after all workers have finished.
    void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) const;

private:
    int workers_;
};

}  // namespace gblab
