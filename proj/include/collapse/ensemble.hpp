#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace collapse {

/// Thread count for ensemble runs: COLLAPSE_THREADS when set, otherwise the
/// hardware concurrency.
unsigned default_thread_count();

namespace detail {
void parallel_for(std::size_t n, unsigned n_threads,
                  const std::function<void(std::size_t)>& body);
}

/// Runs fn(trajectory_index) for indices [0, n) across threads and collects
/// the results in index order, so the output is identical for any worker
/// count. Each trajectory must derive its randomness from its index
/// (sub-stream (master_seed, index)), never from shared state.
template <typename Result, typename Fn>
std::vector<Result> run_ensemble(std::size_t n, Fn&& fn, unsigned n_threads = 0) {
    if (n_threads == 0) n_threads = default_thread_count();
    std::vector<Result> results(n);
    detail::parallel_for(n, n_threads,
                         [&](std::size_t i) { results[i] = fn(i); });
    return results;
}

/// Streaming mean/variance accumulator (Welford).
class RunningStats {
public:
    void add(double x) {
        ++n_;
        const double d = x - mean_;
        mean_ += d / static_cast<double>(n_);
        m2_ += d * (x - mean_);
    }

    std::size_t count() const { return n_; }
    double mean() const { return mean_; }
    double variance() const {
        return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
    }
    double stddev() const { return std::sqrt(variance()); }
    double std_error() const {
        return n_ > 0 ? stddev() / std::sqrt(static_cast<double>(n_)) : 0.0;
    }

private:
    std::size_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

}  // namespace collapse
