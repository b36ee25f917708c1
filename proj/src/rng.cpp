#include "collapse/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace collapse {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

}  // namespace

Philox::Philox(std::uint64_t master_seed, std::uint64_t stream_index) {
    key_[0] = static_cast<std::uint32_t>(master_seed);
    key_[1] = static_cast<std::uint32_t>(master_seed >> 32);
    ctr_[0] = static_cast<std::uint32_t>(stream_index);
    ctr_[1] = static_cast<std::uint32_t>(stream_index >> 32);
}

void Philox::refill() {
    std::uint32_t c[4] = {static_cast<std::uint32_t>(block_),
                          static_cast<std::uint32_t>(block_ >> 32), ctr_[0],
                          ctr_[1]};
    std::uint32_t k0 = key_[0];
    std::uint32_t k1 = key_[1];
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM0, c[0], hi0, lo0);
        mulhilo(kPhiloxM1, c[2], hi1, lo1);
        const std::uint32_t n0 = hi1 ^ c[1] ^ k0;
        const std::uint32_t n1 = lo1;
        const std::uint32_t n2 = hi0 ^ c[3] ^ k1;
        const std::uint32_t n3 = lo0;
        c[0] = n0;
        c[1] = n1;
        c[2] = n2;
        c[3] = n3;
        k0 += kWeyl0;
        k1 += kWeyl1;
    }
    out_[0] = c[0];
    out_[1] = c[1];
    out_[2] = c[2];
    out_[3] = c[3];
    out_pos_ = 0;
    ++block_;
}

std::uint32_t Philox::next_u32() {
    if (out_pos_ >= 4) refill();
    return out_[out_pos_++];
}

double Philox::next_double() {
    const std::uint64_t hi = next_u32();
    const std::uint64_t lo = next_u32();
    const std::uint64_t bits = ((hi << 32) | lo) >> 11;
    return static_cast<double>(bits) * 0x1.0p-53;
}

double Philox::next_gaussian() {
    if (has_cached_gaussian_) {
        has_cached_gaussian_ = false;
        return cached_gaussian_;
    }
    const double u1 = next_double();
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log1p(-u1));  // u1 < 1 always
    const double theta = 2.0 * std::numbers::pi * u2;
    cached_gaussian_ = r * std::sin(theta);
    has_cached_gaussian_ = true;
    return r * std::cos(theta);
}

NoisePath make_noise_path(std::uint64_t seed, double dt, std::size_t n_steps,
                          std::uint64_t stream) {
    if (!(dt > 0.0)) throw std::invalid_argument("make_noise_path: dt must be > 0");
    if (n_steps == 0) throw std::invalid_argument("make_noise_path: n_steps must be >= 1");
    NoisePath path;
    path.seed = seed;
    path.stream = stream;
    path.dt = dt;
    path.increments.resize(n_steps);
    Philox rng(seed, stream);
    const double sqrt_dt = std::sqrt(dt);
    for (std::size_t i = 0; i < n_steps; ++i) {
        path.increments[i] = sqrt_dt * rng.next_gaussian();
    }
    return path;
}

}  // namespace collapse
