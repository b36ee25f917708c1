#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

namespace collapse {

/// Counter-based Philox4x32-10 generator (Salmon et al., SC'11).
///
/// The key is the 64-bit master seed; the high half of the 128-bit counter
/// carries the stream index, so sub-streams derived as (master_seed,
/// stream_index) are independent and the draw order within an ensemble does
/// not matter. Gaussian variates come from Box-Muller on 53-bit uniforms;
/// both choices are fixed so a (seed, stream) pair replays the same sequence
/// on every run.
class Philox {
public:
    explicit Philox(std::uint64_t master_seed, std::uint64_t stream_index = 0);

    std::uint32_t next_u32();

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double();

    /// Standard normal variate (Box-Muller, second value cached).
    double next_gaussian();

private:
    void refill();

    std::uint32_t key_[2];
    std::uint32_t ctr_[2];   // stream index (fixed)
    std::uint64_t block_ = 0;
    std::uint32_t out_[4];
    int out_pos_ = 4;
    double cached_gaussian_ = 0.0;
    bool has_cached_gaussian_ = false;
};

/// A pre-drawn Wiener path: increments[i] ~ N(0, dt), so the discrete path
/// W_{k} = sum of the first k increments has variance k*dt.
struct NoisePath {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    double dt = 0.0;
    std::vector<double> increments;

    std::size_t size() const { return increments.size(); }
};

/// Draws n_steps Gaussian increments of variance dt from the (seed, stream)
/// Philox sub-stream. Throws std::invalid_argument for dt <= 0 or
/// n_steps == 0.
NoisePath make_noise_path(std::uint64_t seed, double dt, std::size_t n_steps,
                          std::uint64_t stream = 0);

}  // namespace collapse
