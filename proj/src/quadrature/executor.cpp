#include "gblab/quadrature/executor.hpp"

#include <algorithm>
#include <exception>
#include <limits>
#include <thread>
#include <vector>

#include "gblab/errors.hpp"

namespace gblab {

Executor::Executor(int workers) : workers_(workers) {
    if (workers < 1) throw ConfigError("worker count must be at least 1");
}

void Executor::parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) const {
    if (n == 0) return;
    const std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(workers_), n);
    struct Failure {
        std::size_t index = std::numeric_limits<std::size_t>::max();
        std::exception_ptr error;
    };
    std::vector<Failure> failures(w);
    auto run = [&](std::size_t chunk) {
        const std::size_t begin = n * chunk / w;
        const std::size_t end = n * (chunk + 1) / w;
        for (std::size_t i = begin; i < end; ++i) {
            try {
                fn(i);
            } catch (...) {
                failures[chunk] = {i, std::current_exception()};
                return;
            }
        }
    };
    if (w == 1) {
        run(0);
    } else {
        std::vector<std::jthread> threads;
        threads.reserve(w - 1);
        for (std::size_t c = 1; c < w; ++c) threads.emplace_back(run, c);
        run(0);
    }
    for (const auto& f : failures)
        if (f.error) std::rethrow_exception(f.error);
}

}  // namespace gblab
