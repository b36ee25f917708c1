#include "collapse/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "collapse/errors.hpp"

namespace collapse::measurement {

void MeasurementSetup::validate() const {
    if (!(pointer_mass > 0.0) || !(kappa_hbar > 0.0) || !(t_interaction > 0.0))
        throw std::invalid_argument("MeasurementSetup: scales must be positive");
    const double w = std::norm(c_plus) + std::norm(c_minus);
    if (std::abs(w - 1.0) > 1e-12)
        throw std::invalid_argument("MeasurementSetup: |c+|^2 + |c-|^2 != 1");
    if (std::norm(c_plus) == 0.0 || std::norm(c_minus) == 0.0)
        throw std::invalid_argument("MeasurementSetup: amplitudes must be nonzero");
    if (b_threshold < 5.0)
        throw std::invalid_argument("MeasurementSetup: b_threshold must be >= 5");
}

double MeasurementSetup::gamma0() const {
    return std::log(std::abs(c_plus) / std::abs(c_minus));
}

double pointer_separation(double t, const MeasurementSetup& setup,
                          double omega) {
    if (t < 0.0) throw std::invalid_argument("pointer_separation: t < 0");
    if (!(omega > 0.0)) throw std::invalid_argument("pointer_separation: omega <= 0");
    const double amp = 2.0 * setup.kappa_hbar / omega;
    const double half = 0.5 * omega;
    if (t <= setup.t_interaction) {
        return amp * std::exp(-half * t) * std::sin(half * t);
    }
    const double tail =
        std::exp(half * setup.t_interaction) * std::sin(half * (t - setup.t_interaction));
    return amp * std::exp(-half * t) * (std::sin(half * t) - tail);
}

double time_change(double t, double lambda, double kappa_hbar, double t_max) {
    if (t < 0.0 || t > t_max)
        throw OutOfValidityError(
            "time_change: the cubic clock holds only for 0 <= t <= T");
    return lambda * kappa_hbar * kappa_hbar * t * t * t / 3.0;
}

double inverse_time_change(double s, double lambda, double kappa_hbar) {
    if (s < 0.0) throw std::invalid_argument("inverse_time_change: s < 0");
    if (!(lambda > 0.0) || !(kappa_hbar > 0.0))
        throw std::invalid_argument("inverse_time_change: lambda, kappa_hbar > 0");
    return std::cbrt(3.0 * s / (lambda * kappa_hbar * kappa_hbar));
}

namespace {

template <typename DrawIncrement>
HittingResult run_hitting(double gamma0, double b, double ds,
                          std::size_t max_steps, double lambda,
                          double kappa_hbar, DrawIncrement&& draw) {
    if (!(b > 0.0) || std::abs(gamma0) >= b)
        throw std::invalid_argument("simulate_hitting: need |gamma0| < b");
    if (!(ds > 0.0) || ds > 1e-2)
        throw std::invalid_argument("simulate_hitting: need 0 < ds <= 1e-2");

    double g = gamma0;
    double s = 0.0;
    for (std::size_t step = 0; step < max_steps; ++step) {
        const double g_old = g;
        g += std::tanh(g) * ds + draw(step);
        s += ds;
        if (std::abs(g) >= b) {
            // Linear interpolation of the crossing point inside the step.
            const double rise = std::abs(g) - std::abs(g_old);
            double frac = 1.0;
            if (rise > 0.0) frac = (b - std::abs(g_old)) / rise;
            frac = std::clamp(frac, 0.0, 1.0);
            HittingResult r;
            r.outcome = g >= 0.0 ? Outcome::plus : Outcome::minus;
            r.s_col = s - ds + frac * ds;
            r.t_col = lambda > 0.0
                          ? inverse_time_change(r.s_col, lambda, kappa_hbar)
                          : 0.0;
            return r;
        }
    }
    throw NumericError("simulate_hitting: step budget exhausted before hitting");
}

}  // namespace

HittingResult simulate_hitting(double gamma0, double b,
                               const HittingOptions& options, Philox& rng) {
    const double sqrt_ds = std::sqrt(options.ds);
    return run_hitting(gamma0, b, options.ds, options.max_steps, options.lambda,
                       options.kappa_hbar,
                       [&](std::size_t) { return sqrt_ds * rng.next_gaussian(); });
}

HittingResult simulate_hitting(double gamma0, double b, const NoisePath& noise,
                               double lambda, double kappa_hbar) {
    return run_hitting(gamma0, b, noise.dt, noise.size(), lambda, kappa_hbar,
                       [&](std::size_t i) { return noise.increments[i]; });
}

CollapseProbabilities collapse_probability(double gamma0, double b) {
    if (!(b > 0.0) || std::abs(gamma0) >= b)
        throw std::invalid_argument("collapse_probability: need |gamma0| < b");
    const double tb = std::tanh(b);
    const double tg = std::tanh(gamma0);
    return {(tb + tg) / (2.0 * tb), (tb - tg) / (2.0 * tb)};
}

CollapseTimeEstimate collapse_time_chain(const MeasurementSetup& setup,
                                         double lambda0, double m0) {
    setup.validate();
    if (!(lambda0 > 0.0) || !(m0 > 0.0))
        throw std::invalid_argument("collapse_time_chain: lambda0, m0 > 0");
    CollapseTimeEstimate est;
    est.lambda = setup.pointer_mass / m0 * lambda0;
    est.s_col = setup.b_threshold;
    est.t_col = inverse_time_change(est.s_col, est.lambda, setup.kappa_hbar);
    est.x_at_t_col = setup.kappa_hbar * est.t_col;  // linear-growth regime
    return est;
}

GenericCollapseResult generic_collapse_trajectory(
    const Eigen::MatrixXcd& hamiltonian, const Eigen::MatrixXcd& a_operator,
    double beta_r, double beta_i, const Eigen::VectorXcd& psi0,
    const NoisePath& noise_r, const NoisePath& noise_i,
    const GenericCollapseOptions& options) {
    const auto dim = psi0.size();
    if (dim < 1 || dim > 64)
        throw std::invalid_argument("generic_collapse_trajectory: dim must be in [1, 64]");
    if (hamiltonian.rows() != dim || hamiltonian.cols() != dim ||
        a_operator.rows() != dim || a_operator.cols() != dim)
        throw std::invalid_argument("generic_collapse_trajectory: shape mismatch");
    if (noise_r.dt != noise_i.dt || noise_r.size() != noise_i.size())
        throw std::invalid_argument(
            "generic_collapse_trajectory: the two noise paths must match");
    if (std::abs(psi0.squaredNorm() - 1.0) > 1e-9)
        throw ContractError("generic_collapse_trajectory: psi0 must be normalized");

    const double dt = noise_r.dt;
    const std::complex<double> minus_i_over_hbar(0.0, -1.0 / phys::hbar);

    GenericCollapseResult res;
    Eigen::VectorXcd psi = psi0;

    auto record = [&](double t) {
        const Eigen::VectorXcd apsi = a_operator * psi;
        const double a_mean = std::real(psi.dot(apsi));
        const double a2_mean = std::real(apsi.dot(apsi));
        res.t.push_back(t);
        res.a_mean.push_back(a_mean);
        res.variance.push_back(std::max(0.0, a2_mean - a_mean * a_mean));
        if (options.projector != nullptr)
            res.projector_mean.push_back(
                std::real(psi.dot(*options.projector * psi)));
    };

    record(0.0);
    for (std::size_t step = 0; step < noise_r.size(); ++step) {
        const Eigen::VectorXcd apsi = a_operator * psi;
        const double a_mean = std::real(psi.dot(apsi));
        const Eigen::VectorXcd a2psi = a_operator * apsi;
        const Eigen::VectorXcd centered = apsi - a_mean * psi;
        const Eigen::VectorXcd centered2 =
            a2psi - 2.0 * a_mean * apsi + a_mean * a_mean * psi;

        psi += minus_i_over_hbar * (hamiltonian * psi) * dt;
        psi += -0.5 * (beta_r * beta_r * centered2 + beta_i * beta_i * a2psi) * dt;
        psi += beta_r * centered * noise_r.increments[step];
        psi += std::complex<double>(0.0, beta_i) * apsi * noise_i.increments[step];

        const double drift = std::abs(psi.squaredNorm() - 1.0);
        if (drift > options.norm_drift_tol)
            throw StepSizeError("generic_collapse_trajectory: norm drift " +
                                std::to_string(drift) + " at step " +
                                std::to_string(step) + "; reduce dt");
        psi.normalize();

        if ((step + 1) % options.record_every == 0 ||
            step + 1 == noise_r.size()) {
            record(static_cast<double>(step + 1) * dt);
        }
    }
    res.final_state = std::move(psi);
    return res;
}

}  // namespace collapse::measurement
