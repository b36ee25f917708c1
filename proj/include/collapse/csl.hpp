#pragma once

#include <span>
#include <vector>

#include "collapse/constants.hpp"

namespace collapse::csl {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    double norm2() const { return x * x + y * y + z * z; }
};

/// (gamma, r_c) parameter pair; the collapse rate is
/// lambda_csl = gamma / (4 pi r_c^2)^{3/2}.
struct CslParams {
    double gamma_csl = 1e-36;  // m^3 s^-1
    double r_c = 1e-7;         // m

    double lambda_csl() const;
    static CslParams from_lambda(double lambda, double r_c);
};

/// Single-constituent decay function Gamma(x) = lambda [1 - exp(-x^2/4 r_c^2)]
/// (identical to the discrete-jump model's one-particle rate).
double decay_function(double x, double lambda, double r_c);

/// Full many-particle decay function for two superposed configurations:
///   Gamma = (gamma/2) sum_ij [ G(x'_i - x'_j) + G(x''_i - x''_j)
///                              - 2 G(x'_i - x''_j) ]
/// with the Gaussian kernel G(x) = (4 pi r_c^2)^{-3/2} exp(-x^2 / 4 r_c^2).
double many_particle_gamma(std::span<const Vec3> x_primed,
                           std::span<const Vec3> x_doubleprimed, double gamma,
                           double r_c);

/// Cluster amplification Gamma = lambda n^2 N (n particles per cluster of
/// linear size below r_c, N clusters displaced by more than r_c).
double cluster_rate(long long n_per_cluster, long long n_clusters,
                    double lambda);

struct SmallDistanceGamma {
    double gamma = 0.0;
    /// False when any displacement exceeds r_c/10; the quadratic expansion is
    /// then outside its validity regime and the value is a rough estimate.
    bool in_validity_regime = true;
};

/// Small-displacement expansion Gamma ~= (lambda / 4 r_c^2) |sum_i d_i|^2
/// where d_i = x'_i - x''_i.
SmallDistanceGamma small_distance_gamma(std::span<const Vec3> displacements,
                                        double lambda, double r_c);

/// Homogeneous sphere of ordinary matter.
struct RigidBody {
    double density = 0.0;  // kg m^-3
    double radius = 0.0;   // m

    double volume() const;
    double mass() const { return density * volume(); }
    double nucleon_number_density() const {
        return density / phys::m_nucleon;  // m^-3
    }
    double nucleon_count() const { return nucleon_number_density() * volume(); }
    void validate() const;
};

/// Overlap volume of two spheres of radius r at center distance d.
double sphere_overlap_volume(double r, double d);

/// Rigid-body decay rate Gamma = gamma * D * n_out for a homogeneous sphere,
/// where D is the nucleon number density and n_out the number of nucleons
/// outside the lens-shaped overlap of the two displaced copies.
double rigid_body_gamma(const RigidBody& body, double displacement,
                        double gamma);

/// Center-of-mass amplification lambda_cm = (M / m0) lambda0.
double amplified_rate(double total_mass, double lambda0, double m0);

}  // namespace collapse::csl
