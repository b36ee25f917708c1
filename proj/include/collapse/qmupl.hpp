#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "collapse/constants.hpp"
#include "collapse/gaussian_state.hpp"
#include "collapse/grid.hpp"
#include "collapse/params.hpp"
#include "collapse/rng.hpp"

namespace collapse::qmupl {

enum class Potential { free_particle, harmonic };

struct QmuplRunConfig {
    double mass = 0.0;    // kg
    double lambda = 0.0;  // m^-2 s^-1, already mass-amplified
    double t_final = 0.0;
    double dt = 0.0;
    Potential potential = Potential::free_particle;
    double omega_trap = 0.0;  // s^-1, harmonic only

    void validate() const;

    static QmuplRunConfig from_params(const CollapseModelParams& params,
                                      double mass, double t_final, double dt);
};

/// Frequency scale omega = 2 sqrt(hbar lambda0 / m0) of the spread formulas
/// (~5e-5 s^-1 at the standard lambda0 = 1e-2 m^-2 s^-1).
double omega_scale(double lambda0, double m0);

/// Closed-form solution of the width Riccati equation
///   da/dt = lambda - (2 i hbar / m) a^2
/// (free particle). lambda = 0 reduces to pure Schroedinger dispersion.
std::complex<double> riccati_width(std::complex<double> a0, double mass,
                                   double lambda, double t);

/// Integrates the Gaussian-sector equations on the increments of `noise`:
/// a_t by the deterministic Riccati flow (RK4), the packet center and mean
/// wavenumber by Euler-Maruyama driven by the shared Wiener increment.
/// Returns the state after every step, including the initial state at [0].
/// Free-particle only; a_re(0) must be positive.
std::vector<GaussianState> propagate_gaussian(const QmuplRunConfig& config,
                                              const GaussianState& init,
                                              const NoisePath& noise);

struct SpreadPair {
    double sigma_q = 0.0;  // m
    double sigma_p = 0.0;  // kg m / s
};

/// Analytic spread evolution
///   sigma_q(t) = sqrt(hbar/(m w) * (cosh(wt+phi1)+cos(wt+phi2)) /
///                                  (sinh(wt+phi1)+sin(wt+phi2)))
///   sigma_p(t) = sqrt(hbar m w / 2 * (cosh(wt+phi1)-cos(wt+phi2)) /
///                                    (sinh(wt+phi1)+sin(wt+phi2)))
/// with w = omega_scale(lambda0, m0). phi1, phi2 are functions of the initial
/// condition and are accepted directly. A non-positive denominator throws
/// OutOfValidityError.
SpreadPair spread_evolution(double mass, double phi1, double phi2, double t,
                            double lambda0 = 1e-2, double m0 = phys::m_nucleon);

/// Asymptotic values sigma_q(inf) = sqrt(hbar/(m w)), sigma_p(inf) =
/// sqrt(hbar m w / 2); their product is hbar/sqrt(2) identically.
SpreadPair asymptotic_spreads(double mass, double lambda0 = 1e-2,
                              double m0 = phys::m_nucleon);

struct GridSdeOptions {
    /// Maximum tolerated |norm^2 - 1| per step before renormalization;
    /// exceeding it throws StepSizeError with a diagnostic.
    double norm_drift_tol = 1e-6;
    /// Store a full wavefunction snapshot every `snapshot_every` steps
    /// (0 = final state only).
    std::size_t snapshot_every = 0;
    double boundary_tol = 1e-6;
};

struct GridSdeResult {
    std::vector<double> t;
    std::vector<double> q_mean;
    std::vector<double> q_sigma;
    std::vector<double> norm_correction;  // factor applied at each step
    std::vector<GridWavefunction> snapshots;
    GridWavefunction final_state;
    double max_norm_drift = 0.0;
};

/// Euler-Maruyama integration of the nonlinear stochastic equation
///   d psi = [ -(i/hbar) H dt + sqrt(lambda) (q - <q>) dW
///             - (lambda/2) (q - <q>)^2 dt ] psi
/// on the grid, with <q> evaluated at step start and renormalization after
/// every step. The Hamiltonian half of the step is applied spectrally
/// (exact free/Strang-split harmonic propagator).
GridSdeResult integrate_grid_sde(const QmuplRunConfig& config,
                                 const GridWavefunction& psi0,
                                 const NoisePath& noise,
                                 const GridSdeOptions& options = {});

/// Ensemble-level off-diagonal damping
///   rho_t(x, y) = rho_0(x, y) exp(-lambda N (x-y)^2 t / 2).
double master_equation_decay(double rho0_offdiag, double x, double y,
                             double lambda, long long n_particles, double t);

/// Coefficients of the collapse part of the Euler-Maruyama step, exposed so
/// the martingale structure (drift = -2 (diffusion/2)^2 = -diffusion^2/2 in
/// front of the squared collapse operator) can be asserted directly.
struct StepCoefficients {
    double diffusion;  // multiplies (q - <q>) dW
    double drift;      // multiplies (q - <q>)^2 dt
};
StepCoefficients collapse_step_coefficients(double lambda);

}  // namespace collapse::qmupl
