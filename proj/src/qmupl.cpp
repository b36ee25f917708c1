#include "collapse/qmupl.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "collapse/errors.hpp"
#include "collapse/fft.hpp"

namespace collapse::qmupl {

namespace {

using complexd = std::complex<double>;

/// Right-hand side of the width equation, da/dt = lambda - (2 i hbar / m) a^2.
inline complexd width_rhs(complexd a, double mass, double lambda) {
    const complexd mu(0.0, 2.0 * phys::hbar / mass);
    return lambda - mu * a * a;
}

inline complexd rk4_width_step(complexd a, double mass, double lambda,
                               double dt) {
    const complexd k1 = width_rhs(a, mass, lambda);
    const complexd k2 = width_rhs(a + 0.5 * dt * k1, mass, lambda);
    const complexd k3 = width_rhs(a + 0.5 * dt * k2, mass, lambda);
    const complexd k4 = width_rhs(a + dt * k3, mass, lambda);
    return a + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

void QmuplRunConfig::validate() const {
    if (!(mass > 0.0)) throw std::invalid_argument("mass must be > 0");
    if (lambda < 0.0) throw std::invalid_argument("lambda must be >= 0");
    if (!(t_final > 0.0) || !(dt > 0.0))
        throw std::invalid_argument("t_final and dt must be > 0");
    if (dt > t_final / 100.0)
        throw std::invalid_argument("dt must not exceed t_final / 100");
    if (potential == Potential::harmonic && !(omega_trap > 0.0))
        throw std::invalid_argument("harmonic potential needs omega_trap > 0");
}

QmuplRunConfig QmuplRunConfig::from_params(const CollapseModelParams& params,
                                           double mass, double t_final,
                                           double dt) {
    params.validate();
    if (params.model_kind != ModelKind::qmupl)
        throw std::invalid_argument("params are not a qmupl parameter set");
    QmuplRunConfig cfg;
    cfg.mass = mass;
    cfg.lambda = params.lambda_for_mass(mass);
    cfg.t_final = t_final;
    cfg.dt = dt;
    cfg.validate();
    return cfg;
}

double omega_scale(double lambda0, double m0) {
    if (lambda0 < 0.0 || !(m0 > 0.0))
        throw std::invalid_argument("omega_scale: bad inputs");
    return 2.0 * std::sqrt(phys::hbar * lambda0 / m0);
}

std::complex<double> riccati_width(std::complex<double> a0, double mass,
                                   double lambda, double t) {
    const complexd mu(0.0, 2.0 * phys::hbar / mass);
    if (lambda == 0.0) {
        return a0 / (1.0 + mu * a0 * t);  // pure Schroedinger dispersion
    }
    const complexd big_a = std::sqrt(lambda / mu);  // asymptotic width parameter
    const complexd omega = std::sqrt(lambda * mu);
    const complexd th = std::tanh(omega * t);
    return big_a * (a0 + big_a * th) / (big_a + a0 * th);
}

StepCoefficients collapse_step_coefficients(double lambda) {
    return {std::sqrt(lambda), -0.5 * lambda};
}

std::vector<GaussianState> propagate_gaussian(const QmuplRunConfig& config,
                                              const GaussianState& init,
                                              const NoisePath& noise) {
    config.validate();
    if (config.potential != Potential::free_particle)
        throw std::invalid_argument(
            "propagate_gaussian: only the free particle is solved in closed form");
    if (!(init.a.real() > 0.0))
        throw std::invalid_argument("propagate_gaussian: a_re(0) must be > 0");
    if (noise.dt != config.dt)
        throw std::invalid_argument("propagate_gaussian: noise dt mismatch");

    const double hbar_over_m = phys::hbar / config.mass;
    const double sqrt_lambda = std::sqrt(config.lambda);

    std::vector<GaussianState> traj;
    traj.reserve(noise.size() + 1);
    GaussianState s = init;
    traj.push_back(s);
    for (std::size_t i = 0; i < noise.size(); ++i) {
        const double dw = noise.increments[i];
        const double a_re = s.a.real();
        const double a_im = s.a.imag();
        if (!(a_re > 0.0))
            throw NumericError("propagate_gaussian: a_re hit zero at step " +
                               std::to_string(i));
        s.x_mean += hbar_over_m * s.k_mean * config.dt +
                    sqrt_lambda / (2.0 * a_re) * dw;
        s.k_mean += -sqrt_lambda * (a_im / a_re) * dw;
        s.a = rk4_width_step(s.a, config.mass, config.lambda, config.dt);
        traj.push_back(s);
    }
    return traj;
}

SpreadPair spread_evolution(double mass, double phi1, double phi2, double t,
                            double lambda0, double m0) {
    if (!(mass > 0.0)) throw std::invalid_argument("mass must be > 0");
    if (t < 0.0) throw std::invalid_argument("t must be >= 0");
    const double w = omega_scale(lambda0, m0);
    const double u = w * t;
    const double denom = std::sinh(u + phi1) + std::sin(u + phi2);
    if (!(denom > 0.0))
        throw OutOfValidityError("spread_evolution: vanishing denominator");
    const double cq = std::cosh(u + phi1) + std::cos(u + phi2);
    const double cp = std::cosh(u + phi1) - std::cos(u + phi2);
    SpreadPair out;
    out.sigma_q = std::sqrt(phys::hbar / (mass * w) * cq / denom);
    out.sigma_p = std::sqrt(phys::hbar * mass * w / 2.0 * cp / denom);
    return out;
}

SpreadPair asymptotic_spreads(double mass, double lambda0, double m0) {
    if (!(mass > 0.0) || !(lambda0 > 0.0) || !(m0 > 0.0))
        throw std::invalid_argument("asymptotic_spreads: inputs must be positive");
    const double w = omega_scale(lambda0, m0);
    SpreadPair out;
    out.sigma_q = std::sqrt(phys::hbar / (mass * w));
    out.sigma_p = std::sqrt(phys::hbar * mass * w / 2.0);
    return out;
}

GridSdeResult integrate_grid_sde(const QmuplRunConfig& config,
                                 const GridWavefunction& psi0,
                                 const NoisePath& noise,
                                 const GridSdeOptions& options) {
    config.validate();
    if (noise.dt != config.dt)
        throw std::invalid_argument("integrate_grid_sde: noise dt mismatch");
    if (std::abs(psi0.norm_squared() - 1.0) > 1e-9)
        throw ContractError("integrate_grid_sde: psi0 must be normalized");
    psi0.check_boundary(options.boundary_tol);

    const std::size_t n = psi0.size();
    const double dt = config.dt;
    Fft1D fft(n);

    // Exact spectral propagator of the kinetic term over dt.
    std::vector<complexd> kinetic_phase(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double k = Fft1D::wavenumber(i, n, psi0.dx());
        kinetic_phase[i] =
            std::polar(1.0, -phys::hbar * k * k / (2.0 * config.mass) * dt);
    }
    std::vector<complexd> potential_phase;  // half-step, harmonic only
    if (config.potential == Potential::harmonic) {
        potential_phase.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double x = psi0.x(i);
            const double v =
                0.5 * config.mass * config.omega_trap * config.omega_trap * x * x;
            potential_phase[i] = std::polar(1.0, -v * dt / (2.0 * phys::hbar));
        }
    }

    const auto [diff_coeff, drift_coeff] =
        collapse_step_coefficients(config.lambda);

    GridSdeResult res;
    GridWavefunction psi = psi0;
    const std::size_t n_steps = noise.size();
    res.t.reserve(n_steps + 1);
    res.q_mean.reserve(n_steps + 1);
    res.q_sigma.reserve(n_steps + 1);
    res.norm_correction.reserve(n_steps + 1);

    auto record = [&](double t) {
        const Moments m = expectation_and_variance(psi, Observable::position);
        res.t.push_back(t);
        res.q_mean.push_back(m.mean);
        res.q_sigma.push_back(std::sqrt(m.variance));
    };
    record(0.0);
    res.norm_correction.push_back(1.0);

    for (std::size_t step = 0; step < n_steps; ++step) {
        auto& amp = psi.amplitudes();
        // Hamiltonian substep (unitary, Strang split for the harmonic trap).
        if (config.potential == Potential::harmonic) {
            for (std::size_t i = 0; i < n; ++i) amp[i] *= potential_phase[i];
        }
        fft.forward(amp);
        for (std::size_t i = 0; i < n; ++i) amp[i] *= kinetic_phase[i];
        fft.backward(amp);
        if (config.potential == Potential::harmonic) {
            for (std::size_t i = 0; i < n; ++i) amp[i] *= potential_phase[i];
        }

        // Collapse substep: Euler-Maruyama with <q> at substep start.
        double q_mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) q_mean += std::norm(amp[i]) * psi.x(i);
        q_mean *= psi.dx();
        const double dw = noise.increments[step];
        for (std::size_t i = 0; i < n; ++i) {
            const double d = psi.x(i) - q_mean;
            amp[i] *= 1.0 + diff_coeff * d * dw + drift_coeff * d * d * dt;
        }

        const double drift = std::abs(psi.norm_squared() - 1.0);
        res.max_norm_drift = std::max(res.max_norm_drift, drift);
        if (drift > options.norm_drift_tol) {
            throw StepSizeError(
                "integrate_grid_sde: per-step norm drift " + std::to_string(drift) +
                " exceeds tolerance " + std::to_string(options.norm_drift_tol) +
                " at step " + std::to_string(step) + "; reduce dt");
        }
        res.norm_correction.push_back(psi.normalize());
        psi.check_boundary(options.boundary_tol);
        record(static_cast<double>(step + 1) * dt);

        if (options.snapshot_every != 0 &&
            (step + 1) % options.snapshot_every == 0) {
            res.snapshots.push_back(psi);
        }
    }
    res.final_state = std::move(psi);
    return res;
}

double master_equation_decay(double rho0_offdiag, double x, double y,
                             double lambda, long long n_particles, double t) {
    if (t < 0.0) throw std::invalid_argument("master_equation_decay: t < 0");
    if (n_particles < 1)
        throw std::invalid_argument("master_equation_decay: n_particles < 1");
    const double d = x - y;
    return rho0_offdiag *
           std::exp(-lambda * static_cast<double>(n_particles) * d * d * t / 2.0);
}

}  // namespace collapse::qmupl
