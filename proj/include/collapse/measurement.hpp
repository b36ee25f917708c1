#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <vector>

#include "collapse/constants.hpp"
#include "collapse/rng.hpp"

namespace collapse::measurement {

/// Von Neumann pointer measurement of a two-outcome observable: a pointer of
/// mass pointer_mass couples with strength hbar*kappa = kappa_hbar over an
/// interaction window t_interaction, and the outcome is decided by the
/// first passage of the relative-weight process at +-b_threshold.
struct MeasurementSetup {
    double pointer_mass = 1e-3;     // kg
    double kappa_hbar = 1e-2;       // m/s, the product hbar*kappa
    double t_interaction = 1.0;     // s
    std::complex<double> c_plus = std::complex<double>(std::sqrt(0.5), 0.0);
    std::complex<double> c_minus = std::complex<double>(std::sqrt(0.5), 0.0);
    double b_threshold = 35.0;

    /// |c+|^2 + |c-|^2 = 1 to 1e-12, both amplitudes nonzero, b >= 5.
    void validate() const;

    /// Initial log-weight difference Gamma_0 = ln|c+ / c-|.
    double gamma0() const;
};

enum class Outcome { plus, minus };

struct HittingResult {
    Outcome outcome = Outcome::plus;
    double s_col = 0.0;  // dimensionless first-passage clock
    double t_col = 0.0;  // s, via the inverse time change
};

/// Deterministic separation X_t between the two pointer packets (both the
/// nonlinear and the stochastic terms cancel in its equation of motion):
///   X_t = (2 kappa_hbar / w) e^{-w t/2} sin(w t / 2)            0 <= t <= T
///   X_t = same - (2 kappa_hbar / w) e^{-w(t-T)/2} ... for t >= T (matched tail)
/// where w is the collapse frequency scale and T the interaction time.
double pointer_separation(double t, const MeasurementSetup& setup, double omega);

/// Dimensionless collapse clock s_t = (lambda kappa_hbar^2 / 3) t^3, valid
/// for 0 <= t <= t_max (the interaction window); beyond throws
/// OutOfValidityError.
double time_change(double t, double lambda, double kappa_hbar, double t_max);

/// Inverse map t(s) = (3 s / (lambda kappa_hbar^2))^{1/3}.
double inverse_time_change(double s, double lambda, double kappa_hbar);

struct HittingOptions {
    double ds = 1e-3;            // clock step, must be <= 1e-2
    std::size_t max_steps = 50'000'000;
    /// Physical-time recovery t_col = (3 s / (lambda kappa_hbar^2))^{1/3};
    /// set lambda <= 0 to skip and report t_col = 0.
    double lambda = 0.0;
    double kappa_hbar = 0.0;
};

/// Euler-Maruyama simulation of the relative-weight diffusion
///   d Gamma_s = tanh(Gamma_s) ds + dW_s
/// until |Gamma| >= b, with the crossing clock linearly interpolated within
/// the final step. Exhausting the step budget throws NumericError.
HittingResult simulate_hitting(double gamma0, double b,
                               const HittingOptions& options, Philox& rng);

/// Same dynamics driven by a pre-drawn NoisePath (ds = noise.dt, budget =
/// noise length).
HittingResult simulate_hitting(double gamma0, double b, const NoisePath& noise,
                               double lambda = 0.0, double kappa_hbar = 0.0);

struct CollapseProbabilities {
    double p_plus = 0.0;
    double p_minus = 0.0;
};

/// Exact first-passage probabilities
///   P+- = (tanh b +- tanh Gamma_0) / (2 tanh b);
/// for b >> 1 these reduce to the Born weights |c+-|^2.
CollapseProbabilities collapse_probability(double gamma0, double b);

struct CollapseTimeEstimate {
    double s_col = 0.0;        // = b, the mean first-passage clock
    double t_col = 0.0;        // s
    double x_at_t_col = 0.0;   // pointer separation when the outcome is decided
    double lambda = 0.0;       // mass-amplified collapse strength used
};

/// Composes the mean first-passage clock E[S] ~ b with the inverse time
/// change: t_col = (3 b / (lambda kappa_hbar^2))^{1/3}, X(t_col) =
/// kappa_hbar * t_col. Scales with pointer mass as m^{-1/3}.
CollapseTimeEstimate collapse_time_chain(const MeasurementSetup& setup,
                                         double lambda0,
                                         double m0 = phys::m_nucleon);

struct GenericCollapseOptions {
    std::size_t record_every = 1;
    double norm_drift_tol = 1e-2;
    /// Optional projector whose expectation is recorded alongside V_t
    /// (martingale check: E[<P>] is constant when [P,H] = [P,A] = 0).
    const Eigen::MatrixXcd* projector = nullptr;
};

struct GenericCollapseResult {
    std::vector<double> t;
    std::vector<double> variance;        // V_t = <A^2> - <A>^2
    std::vector<double> a_mean;          // <A>_t
    std::vector<double> projector_mean;  // <P>_t when a projector was given
    Eigen::VectorXcd final_state;
};

/// Euler-Maruyama trajectory of the operator-driven reduction
///   d psi = [ -(i/hbar) H - 1/2 (beta_r^2 (A - <A>)^2 + beta_i^2 A^2) ] psi dt
///           + beta_r (A - <A>) psi dW^r + i beta_i A psi dW^i,
/// renormalized each step, for finite dimension <= 64. The two noise paths
/// must share dt and length.
GenericCollapseResult generic_collapse_trajectory(
    const Eigen::MatrixXcd& hamiltonian, const Eigen::MatrixXcd& a_operator,
    double beta_r, double beta_i, const Eigen::VectorXcd& psi0,
    const NoisePath& noise_r, const NoisePath& noise_i,
    const GenericCollapseOptions& options = {});

}  // namespace collapse::measurement
