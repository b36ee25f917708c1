#include "collapse/csl.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace collapse::csl {

namespace {

/// Gaussian correlation kernel G(x) = (4 pi r_c^2)^{-3/2} exp(-x^2/4 r_c^2).
inline double kernel(double dist2, double r_c) {
    const double four_rc2 = 4.0 * r_c * r_c;
    const double norm = std::pow(std::numbers::pi * four_rc2, -1.5);
    return norm * std::exp(-dist2 / four_rc2);
}

}  // namespace

double CslParams::lambda_csl() const {
    if (!(r_c > 0.0)) throw std::invalid_argument("CslParams: r_c must be > 0");
    return gamma_csl * std::pow(4.0 * std::numbers::pi * r_c * r_c, -1.5);
}

CslParams CslParams::from_lambda(double lambda, double r_c) {
    if (!(r_c > 0.0)) throw std::invalid_argument("CslParams: r_c must be > 0");
    CslParams p;
    p.r_c = r_c;
    p.gamma_csl = lambda * std::pow(4.0 * std::numbers::pi * r_c * r_c, 1.5);
    return p;
}

double decay_function(double x, double lambda, double r_c) {
    if (!(r_c > 0.0)) throw std::invalid_argument("decay_function: r_c must be > 0");
    return lambda * (1.0 - std::exp(-x * x / (4.0 * r_c * r_c)));
}

double many_particle_gamma(std::span<const Vec3> x_primed,
                           std::span<const Vec3> x_doubleprimed, double gamma,
                           double r_c) {
    if (x_primed.size() != x_doubleprimed.size())
        throw std::invalid_argument("many_particle_gamma: list length mismatch");
    if (!(r_c > 0.0))
        throw std::invalid_argument("many_particle_gamma: r_c must be > 0");
    const std::size_t n = x_primed.size();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            s += kernel((x_primed[i] - x_primed[j]).norm2(), r_c);
            s += kernel((x_doubleprimed[i] - x_doubleprimed[j]).norm2(), r_c);
            s -= 2.0 * kernel((x_primed[i] - x_doubleprimed[j]).norm2(), r_c);
        }
    }
    return 0.5 * gamma * s;
}

double cluster_rate(long long n_per_cluster, long long n_clusters,
                    double lambda) {
    if (n_per_cluster < 1 || n_clusters < 1)
        throw std::invalid_argument("cluster_rate: counts must be positive");
    const double n = static_cast<double>(n_per_cluster);
    return lambda * n * n * static_cast<double>(n_clusters);
}

SmallDistanceGamma small_distance_gamma(std::span<const Vec3> displacements,
                                        double lambda, double r_c) {
    if (!(r_c > 0.0))
        throw std::invalid_argument("small_distance_gamma: r_c must be > 0");
    SmallDistanceGamma out;
    Vec3 total;
    for (const auto& d : displacements) {
        total.x += d.x;
        total.y += d.y;
        total.z += d.z;
        if (std::sqrt(d.norm2()) > r_c / 10.0) out.in_validity_regime = false;
    }
    out.gamma = lambda / (4.0 * r_c * r_c) * total.norm2();
    return out;
}

double RigidBody::volume() const {
    return 4.0 / 3.0 * std::numbers::pi * radius * radius * radius;
}

void RigidBody::validate() const {
    if (!(density > 0.0) || !(radius > 0.0))
        throw std::invalid_argument("RigidBody: density and radius must be > 0");
}

double sphere_overlap_volume(double r, double d) {
    if (!(r > 0.0)) throw std::invalid_argument("sphere_overlap_volume: r <= 0");
    if (d < 0.0) throw std::invalid_argument("sphere_overlap_volume: d < 0");
    if (d >= 2.0 * r) return 0.0;
    // Lens volume of two equal spheres: pi (4r + d)(2r - d)^2 / 12.
    const double h = 2.0 * r - d;
    return std::numbers::pi * (4.0 * r + d) * h * h / 12.0;
}

double rigid_body_gamma(const RigidBody& body, double displacement,
                        double gamma) {
    body.validate();
    if (displacement < 0.0)
        throw std::invalid_argument("rigid_body_gamma: displacement < 0");
    // Non-overlap fraction 1 - (4r + d)(2r - d)^2 / (16 r^3), clamped so the
    // d = 0 cancellation cannot go negative at the nucleon-count scale.
    const double r = body.radius;
    double fraction = 1.0;
    if (displacement < 2.0 * r) {
        const double h = 2.0 * r - displacement;
        fraction = 1.0 - (4.0 * r + displacement) * h * h / (16.0 * r * r * r);
        fraction = std::max(0.0, fraction);
    }
    const double n_out = body.nucleon_count() * fraction;
    return gamma * body.nucleon_number_density() * n_out;
}

double amplified_rate(double total_mass, double lambda0, double m0) {
    if (!(total_mass > 0.0) || !(m0 > 0.0) || lambda0 < 0.0)
        throw std::invalid_argument("amplified_rate: bad inputs");
    return total_mass / m0 * lambda0;
}

}  // namespace collapse::csl
