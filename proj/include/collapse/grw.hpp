#pragma once

#include <complex>
#include <vector>

#include "collapse/grid.hpp"
#include "collapse/rng.hpp"

namespace collapse::grw {

/// Discrete-jump model parameters. For a rigid N-particle body the
/// center-of-mass jump rate is amplified to N * lambda_grw.
struct GrwParams {
    double lambda_grw = 1e-16;  // s^-1 per particle
    double r_c = 1e-7;          // m
    long long n_particles = 1;

    double total_rate() const {
        return lambda_grw * static_cast<double>(n_particles);
    }
    void validate() const;
};

/// Applies the localization jump psi -> L(x_center) psi / ||L(x_center) psi||
/// with the Gaussian multiplier exp(-(x - x_center)^2 / (2 r_c^2)).
/// A jump landing so far from the support that the norm underflows throws
/// NumericError (degenerate jump).
GridWavefunction localize(const GridWavefunction& psi, double x_center,
                          double r_c);

/// Probability density p(x) = ||L(x) psi||^2 over the grid (one value per
/// grid point; Riemann-sums to 1).
std::vector<double> jump_position_density(const GridWavefunction& psi,
                                          double r_c);

/// Ensemble off-diagonal decay rate
///   Gamma(x, y) = lambda_grw [1 - exp(-(x-y)^2 / 4 r_c^2)].
double offdiag_decay_rate(double x, double y, double lambda_grw, double r_c);

struct GrwJump {
    double time = 0.0;
    double center = 0.0;
};

struct GrwOptions {
    /// Record observables every dt_record seconds.
    double dt_record = 0.0;
    /// Grid positions probed for the off-diagonal coherence record
    /// rho(x_probe, y_probe) = psi(x_probe) conj(psi(y_probe)).
    double x_probe = 0.0;
    double y_probe = 0.0;
    double boundary_tol = 1e-6;
};

struct GrwTrajectory {
    std::vector<double> t;
    std::vector<std::complex<double>> rho_probe;  // psi(x_p) conj(psi(y_p)) dx
    std::vector<double> kinetic_energy;           // <p^2/2m> at record times
    std::vector<GrwJump> jumps;
    GridWavefunction final_state;
    int degenerate_resamples = 0;
};

/// Free evolution interrupted by localization jumps: waiting times are exact
/// exponentials with rate n_particles * lambda_grw, jump centers are drawn
/// from jump_position_density, and the unitary stretches in between are
/// applied with the exact spectral free propagator. Jumps, probe coherences
/// and kinetic energies are recorded on the dt_record lattice.
GrwTrajectory evolve_grw(const GridWavefunction& psi0, const GrwParams& params,
                         double mass, double t_final, const GrwOptions& options,
                         Philox& rng);

}  // namespace collapse::grw
