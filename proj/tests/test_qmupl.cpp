#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "collapse/ensemble.hpp"
#include "collapse/errors.hpp"
#include "collapse/qmupl.hpp"

using namespace collapse;
namespace qm = collapse::qmupl;

namespace {

qm::QmuplRunConfig config_for(double mass, double lambda, double t_final,
                              double dt) {
    qm::QmuplRunConfig cfg;
    cfg.mass = mass;
    cfg.lambda = lambda;
    cfg.t_final = t_final;
    cfg.dt = dt;
    return cfg;
}

/// Textbook dispersing free Gaussian on a grid (test-side oracle,
/// independent of the spectral propagator).
GridWavefunction analytic_dispersing_gaussian(const GridSpec& spec,
                                              double sigma0, double mass,
                                              double t) {
    const std::complex<double> i1(0.0, 1.0);
    const std::complex<double> z =
        1.0 + i1 * phys::hbar * t / (2.0 * mass * sigma0 * sigma0);
    std::vector<std::complex<double>> amp(spec.n);
    for (std::size_t k = 0; k < spec.n; ++k) {
        const double x = spec.x(k);
        amp[k] = std::exp(-x * x / (4.0 * sigma0 * sigma0 * z)) / std::sqrt(z);
    }
    GridWavefunction psi(spec, std::move(amp));
    psi.normalize();
    return psi;
}

}  // namespace

TEST_CASE("omega scale at the standard parameters is ~5e-5 s^-1") {
    CHECK(qm::omega_scale(1e-2, phys::m_nucleon) ==
          doctest::Approx(5.02e-5).epsilon(0.01));
}

TEST_CASE("collapse step coefficients carry the martingale ratio") {
    for (double lambda : {1e-4, 1e-2, 5.0}) {
        const auto [diffusion, drift] = qm::collapse_step_coefficients(lambda);
        CHECK(diffusion == doctest::Approx(std::sqrt(lambda)).epsilon(1e-15));
        // Drift = -2 (Diffusion/2)^2, i.e. -(1/2) diffusion^2.
        CHECK(drift == doctest::Approx(-2.0 * std::pow(diffusion / 2.0, 2))
                           .epsilon(1e-15));
        CHECK(drift == doctest::Approx(-0.5 * lambda).epsilon(1e-15));
    }
}

TEST_CASE("asymptotic spreads: product identity and reference values") {
    for (double mass : {phys::m_electron, 1e-6, 1e-3, 1.0}) {
        const auto s = qm::asymptotic_spreads(mass);
        CHECK(s.sigma_q * s.sigma_p ==
              doctest::Approx(phys::hbar / std::sqrt(2.0)).epsilon(1e-12));
    }
    const auto one_gram = qm::asymptotic_spreads(1e-3);
    CHECK(one_gram.sigma_q == doctest::Approx(4.6e-14).epsilon(0.20));
    CHECK(one_gram.sigma_q > 3e-14);
    CHECK(one_gram.sigma_q < 5e-14);
    CHECK(one_gram.sigma_p == doctest::Approx(1.6e-21).epsilon(0.20));
    const auto electron = qm::asymptotic_spreads(phys::m_electron);
    CHECK(electron.sigma_q > 0.1);
    CHECK(electron.sigma_q < 10.0);
}

TEST_CASE("spread evolution approaches the asymptotic values") {
    const double mass = 1e-3;
    const double w = qm::omega_scale(1e-2, phys::m_nucleon);
    const auto inf = qm::asymptotic_spreads(mass);
    const auto late = qm::spread_evolution(mass, 1.0, 0.3, 60.0 / w);
    CHECK(late.sigma_q == doctest::Approx(inf.sigma_q).epsilon(0.01));
    CHECK(late.sigma_p == doctest::Approx(inf.sigma_p).epsilon(0.01));
}

TEST_CASE("spread evolution stays bounded and positive") {
    const double mass = 1e-3;
    const double w = qm::omega_scale(1e-2, phys::m_nucleon);
    const auto inf = qm::asymptotic_spreads(mass);
    for (double u = 0.0; u < 30.0; u += 0.25) {
        const auto s = qm::spread_evolution(mass, 1.5, 0.7, u / w);
        CHECK(s.sigma_q > 0.0);
        CHECK(s.sigma_p > 0.0);
        CHECK(s.sigma_q < 100.0 * inf.sigma_q);
        CHECK(s.sigma_p < 100.0 * inf.sigma_p);
    }
}

TEST_CASE("spread evolution rejects a vanishing denominator") {
    CHECK_THROWS_AS(qm::spread_evolution(1e-3, 0.0, -std::acos(-1.0) / 2.0, 0.0),
                    OutOfValidityError);
}

TEST_CASE("riccati width: lambda = 0 reproduces Schroedinger dispersion") {
    const double sigma0 = 1.0, mass = phys::m_nucleon;
    const std::complex<double> a0(1.0 / (4.0 * sigma0 * sigma0), 0.0);
    for (double t : {1e3, 1e5, 1e7}) {
        const auto a = qm::riccati_width(a0, mass, 0.0, t);
        const double sigma_sq = 1.0 / (4.0 * a.real());
        const double tau = phys::hbar * t / (2.0 * mass * sigma0 * sigma0);
        const double expected = sigma0 * sigma0 * (1.0 + tau * tau);
        CHECK(sigma_sq == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("riccati width: converges to the asymptotic spread") {
    const double mass = 1e-3;
    const double lambda = mass / phys::m_nucleon * 1e-2;
    const double w = qm::omega_scale(1e-2, phys::m_nucleon);
    const std::complex<double> a0(1e22, 0.0);  // far from the fixed point
    const auto a = qm::riccati_width(a0, mass, lambda, 40.0 / w);
    const double sigma_q = 0.5 / std::sqrt(a.real());
    CHECK(sigma_q ==
          doctest::Approx(qm::asymptotic_spreads(mass).sigma_q).epsilon(0.01));
    // Extreme times must saturate cleanly, not overflow inside tanh.
    const auto far = qm::riccati_width(a0, mass, lambda, 1e9 / w);
    CHECK(std::isfinite(far.real()));
    CHECK(far.real() > 0.0);
    CHECK(0.5 / std::sqrt(far.real()) ==
          doctest::Approx(qm::asymptotic_spreads(mass).sigma_q).epsilon(1e-6));
    // The fixed point is the (1 - i)/(4 sigma^2) ready state: Im(a) = -Re(a).
    CHECK(far.imag() == doctest::Approx(-far.real()).epsilon(1e-9));
}

TEST_CASE("propagate_gaussian: width parameter is noise-independent and exact") {
    const double mass = phys::m_nucleon;
    const double lambda = 1e-2;
    const auto cfg = config_for(mass, lambda, 2e5, 2e2);
    const auto init = GaussianState::from_width(1.0);
    const auto na = make_noise_path(1, cfg.dt, 1000);
    const auto nb = make_noise_path(99, cfg.dt, 1000);
    const auto ta = qm::propagate_gaussian(cfg, init, na);
    const auto tb = qm::propagate_gaussian(cfg, init, nb);
    REQUIRE(ta.size() == tb.size());
    for (std::size_t i = 0; i < ta.size(); ++i) {
        CHECK(ta[i].a == tb[i].a);  // deterministic width flow
    }
    const auto closed = qm::riccati_width(init.a, mass, lambda, cfg.t_final);
    CHECK(std::abs(ta.back().a - closed) / std::abs(closed) < 1e-6);
    // The packet center moved (noise did act on x, k).
    CHECK(ta.back().x_mean != tb.back().x_mean);
}

TEST_CASE("propagate_gaussian: ensemble momentum mean is conserved") {
    const double mass = phys::m_nucleon;
    const auto cfg = config_for(mass, 1e-8, 1e5, 1e2);
    const double k0 = 5.0;
    const auto init = GaussianState::from_width(1.0, 0.0, k0);
    const std::size_t n_traj = 1000, n_steps = 1000;
    RunningStats k_final, x_drift;
    const auto results = run_ensemble<std::pair<double, double>>(
        n_traj,
        [&](std::size_t traj) {
            const auto noise = make_noise_path(17, cfg.dt, n_steps, traj);
            const auto states = qm::propagate_gaussian(cfg, init, noise);
            return std::make_pair(states.back().k_mean, states.back().x_mean);
        });
    for (const auto& [k, x] : results) {
        k_final.add(k);
        x_drift.add(x);
    }
    // E[<p>] constant: mean final wavenumber within 3 sigma of k0.
    CHECK(std::abs(k_final.mean() - k0) < 3.0 * k_final.std_error() + 1e-12);
    // E[<q>_t] = (hbar k0 / m) t: straight-line mean motion.
    const double expected_x = phys::hbar * k0 / mass * cfg.t_final;
    CHECK(std::abs(x_drift.mean() - expected_x) <
          3.0 * x_drift.std_error() + 1e-12);
}

TEST_CASE("integrate_grid_sde: lambda = 0 matches the analytic dispersion") {
    const double mass = phys::m_electron, sigma0 = 1.0;
    const GridSpec spec{-16.0, 32.0 / 1024.0, 1024};
    const auto psi0 = make_gaussian_grid_state(spec, 0.0, 0.0, sigma0);
    const double t_disp = 2.0 * mass * sigma0 * sigma0 / phys::hbar;
    const auto cfg = config_for(mass, 0.0, t_disp, t_disp / 1000.0);
    const auto noise = make_noise_path(3, cfg.dt, 1000);
    const auto res = qm::integrate_grid_sde(cfg, psi0, noise);
    const auto oracle =
        analytic_dispersing_gaussian(spec, sigma0, mass, cfg.t_final);
    CHECK(overlap(res.final_state, oracle) >= 0.999);
    // Width doubled as sqrt(1 + tau^2) with tau = 1 ... sqrt(2) spread.
    CHECK(res.q_sigma.back() ==
          doctest::Approx(sigma0 * std::sqrt(2.0)).epsilon(0.02));
}

TEST_CASE("integrate_grid_sde tracks the Gaussian sector on the same noise") {
    const double mass = phys::m_nucleon, sigma0 = 1.0, lambda = 1.0;
    const GridSpec spec{-16.0, 32.0 / 1024.0, 1024};
    const auto psi0 = make_gaussian_grid_state(spec, 0.0, 0.0, sigma0);
    const auto cfg = config_for(mass, lambda, 1e-3, 2e-6);
    const auto noise = make_noise_path(21, cfg.dt, 500);
    qm::GridSdeOptions opts;
    opts.norm_drift_tol = 1e-4;  // wiring run, documented override
    const auto grid = qm::integrate_grid_sde(cfg, psi0, noise, opts);
    const auto sector =
        qm::propagate_gaussian(cfg, GaussianState::from_width(sigma0), noise);
    REQUIRE(grid.t.size() == sector.size());
    for (std::size_t i = 0; i < sector.size(); i += 50) {
        CHECK(std::abs(grid.q_mean[i] - sector[i].x_mean) <
              0.01 * sector[i].sigma_q());
        CHECK(grid.q_sigma[i] ==
              doctest::Approx(sector[i].sigma_q()).epsilon(0.01));
    }
}

TEST_CASE("integrate_grid_sde: harmonic trap oscillates a displaced packet") {
    // Coherent-state check of the Strang-split trap propagator:
    // <q>(t) = x0 cos(w t) for the ground-width packet displaced by x0.
    const double mass = 1e-27, omega_trap = 1.0;
    const double sigma = std::sqrt(phys::hbar / (2.0 * mass * omega_trap));
    const double x0 = 3.0 * sigma;
    const GridSpec spec{-16.0 * sigma + x0 / 2.0, 32.0 * sigma / 1024.0, 1024};
    const auto psi0 = make_gaussian_grid_state(spec, x0, 0.0, sigma);
    qm::QmuplRunConfig cfg;
    cfg.mass = mass;
    cfg.lambda = 0.0;
    cfg.potential = qm::Potential::harmonic;
    cfg.omega_trap = omega_trap;
    cfg.t_final = 2.0 * std::acos(-1.0);  // one full period
    cfg.dt = cfg.t_final / 2000.0;
    const auto noise = make_noise_path(9, cfg.dt, 2000);
    const auto res = qm::integrate_grid_sde(cfg, psi0, noise);
    for (std::size_t i = 0; i < res.t.size(); i += 100) {
        CHECK(res.q_mean[i] ==
              doctest::Approx(x0 * std::cos(omega_trap * res.t[i]))
                  .epsilon(0.01)
                  .scale(x0));
    }
    // Back at the start after one period.
    CHECK(res.q_mean.back() == doctest::Approx(x0).epsilon(0.01));
}

TEST_CASE("integrate_grid_sde: step-halving convergence toward the sector") {
    // Halving dt must shrink the endpoint discrepancy against the
    // closed-form Gaussian sector driven by the identical Wiener path.
    const double mass = phys::m_nucleon, sigma0 = 1.0, lambda = 1.0;
    const GridSpec spec{-16.0, 32.0 / 512.0, 512};
    const auto psi0 = make_gaussian_grid_state(spec, 0.0, 0.0, sigma0);
    const double t_final = 1.28e-3;

    auto endpoint_error = [&](std::size_t n_steps) {
        const double dt = t_final / static_cast<double>(n_steps);
        // Coarse increments are pairwise sums of one fine master path, so
        // every resolution sees the same underlying Wiener trajectory.
        const auto fine = make_noise_path(2718, t_final / 4096.0, 4096);
        NoisePath path;
        path.dt = dt;
        const std::size_t group = 4096 / n_steps;
        for (std::size_t i = 0; i < n_steps; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < group; ++j)
                acc += fine.increments[i * group + j];
            path.increments.push_back(acc);
        }
        qm::QmuplRunConfig cfg;
        cfg.mass = mass;
        cfg.lambda = lambda;
        cfg.t_final = t_final;
        cfg.dt = dt;
        qm::GridSdeOptions opts;
        opts.norm_drift_tol = 1e-2;
        const auto grid = qm::integrate_grid_sde(cfg, psi0, path, opts);
        const auto sector = qm::propagate_gaussian(
            cfg, GaussianState::from_width(sigma0), path);
        return std::abs(grid.q_mean.back() - sector.back().x_mean) +
               std::abs(grid.q_sigma.back() - sector.back().sigma_q());
    };

    const double coarse = endpoint_error(512);
    const double fine = endpoint_error(2048);
    CHECK(fine < coarse);
}

TEST_CASE("integrate_grid_sde raises a step-size error on a too-coarse step") {
    const double mass = phys::m_nucleon, sigma0 = 1.0;
    const GridSpec spec{-16.0, 32.0 / 512.0, 512};
    const auto psi0 = make_gaussian_grid_state(spec, 0.0, 0.0, sigma0);
    auto cfg = config_for(mass, 10.0, 1.0, 1e-3);
    const auto noise = make_noise_path(5, cfg.dt, 100);
    CHECK_THROWS_AS(qm::integrate_grid_sde(cfg, psi0, noise), StepSizeError);
}

TEST_CASE("integrate_grid_sde rejects unnormalized input") {
    const GridSpec spec{-16.0, 32.0 / 512.0, 512};
    auto psi0 = make_gaussian_grid_state(spec, 0.0, 0.0, 1.0);
    for (std::size_t i = 0; i < psi0.size(); ++i) psi0[i] *= 2.0;
    const auto cfg = config_for(phys::m_nucleon, 0.0, 1.0, 1e-3);
    const auto noise = make_noise_path(5, 1e-3, 10);
    CHECK_THROWS_AS(qm::integrate_grid_sde(cfg, psi0, noise), ContractError);
}

TEST_CASE("non-Gaussian initial data: excess kurtosis of |psi|^2 decays") {
    const double mass = 1e-27, sigma0 = 1.0, lambda = 1e-3;
    const GridSpec spec{-16.0, 32.0 / 256.0, 256};
    auto left = make_gaussian_grid_state(spec, -3.0, 0.0, sigma0);
    const auto right = make_gaussian_grid_state(spec, 3.0, 0.0, sigma0);
    for (std::size_t i = 0; i < left.size(); ++i) left[i] += right[i];
    left.normalize();

    auto excess_kurtosis = [](const GridWavefunction& psi) {
        double m1 = 0, m2 = 0, m4 = 0, w = 0;
        for (std::size_t i = 0; i < psi.size(); ++i) {
            const double p = std::norm(psi[i]);
            w += p;
            m1 += p * psi.x(i);
        }
        m1 /= w;
        for (std::size_t i = 0; i < psi.size(); ++i) {
            const double p = std::norm(psi[i]);
            const double d = psi.x(i) - m1;
            m2 += p * d * d;
            m4 += p * d * d * d * d;
        }
        m2 /= w;
        m4 /= w;
        return m4 / (m2 * m2) - 3.0;
    };

    const double kurt0 = excess_kurtosis(left);
    CHECK(kurt0 < -1.0);  // strongly bimodal initial state

    const auto cfg = config_for(mass, lambda, 300.0, 2e-3);
    const auto noise = make_noise_path(12345, cfg.dt, 150000);
    qm::GridSdeOptions opts;
    opts.norm_drift_tol = 1e-3;  // documented override for the strong-collapse run
    const auto res = qm::integrate_grid_sde(cfg, left, noise, opts);
    const double kurt_final = excess_kurtosis(res.final_state);
    CHECK(std::abs(kurt_final) < 0.3);
    CHECK(std::abs(kurt_final) < std::abs(kurt0) / 2.0);
}

TEST_CASE("master equation decay factors") {
    CHECK(qm::master_equation_decay(0.7, 2.0, 2.0, 1e3, 5, 9.0) ==
          doctest::Approx(0.7));
    // Doubling N halves the 1/e time: decay(2N, t) == decay(N, 2t).
    CHECK(qm::master_equation_decay(1.0, 1.0, 0.0, 1e-2, 2, 3.0) ==
          doctest::Approx(qm::master_equation_decay(1.0, 1.0, 0.0, 1e-2, 1, 6.0))
              .epsilon(1e-12));
}

TEST_CASE("ensemble-averaged grid SDE matches the master-equation exponent") {
    // Two-peak superposition; E[psi(x) conj(psi(y))] at the peaks must decay
    // as exp(-lambda (x-y)^2 t / 2).
    const double mass = 1e-27, sigma0 = 1.0, lambda = 1e-3;
    const GridSpec spec{-16.0, 32.0 / 128.0, 128};
    auto psi0 = make_gaussian_grid_state(spec, -3.0, 0.0, sigma0);
    const auto right = make_gaussian_grid_state(spec, 3.0, 0.0, sigma0);
    for (std::size_t i = 0; i < psi0.size(); ++i) psi0[i] += right[i];
    psi0.normalize();
    const std::size_t ix = psi0.index_of(-3.0), iy = psi0.index_of(3.0);
    const double x = psi0.x(ix), y = psi0.x(iy);

    const double t_final = 80.0, dt = 5e-3;
    const auto n_steps = static_cast<std::size_t>(t_final / dt);
    const auto cfg = config_for(mass, lambda, t_final, dt);
    qm::GridSdeOptions opts;
    opts.norm_drift_tol = 5e-3;

    const std::size_t n_traj = 1000;
    const std::size_t n_rec = 8;
    const std::size_t rec_stride = n_steps / n_rec;
    using Series = std::vector<std::complex<double>>;
    const auto all = run_ensemble<Series>(n_traj, [&](std::size_t traj) {
        const auto noise = make_noise_path(777, dt, n_steps, traj);
        qm::GridSdeOptions o = opts;
        o.snapshot_every = rec_stride;
        const auto res = qm::integrate_grid_sde(cfg, psi0, noise, o);
        Series s;
        for (const auto& snap : res.snapshots)
            s.push_back(snap[ix] * std::conj(snap[iy]));
        return s;
    });

    const double rho0 = std::abs(psi0[ix] * std::conj(psi0[iy]));
    double num = 0.0, den = 0.0;  // least-squares slope through the origin
    for (std::size_t r = 0; r < n_rec; ++r) {
        std::complex<double> acc = 0.0;
        for (const auto& s : all) acc += s[r];
        const double rho = std::abs(acc) / static_cast<double>(n_traj);
        const double t = static_cast<double>((r + 1) * rec_stride) * dt;
        const double logdrop = std::log(rho0 / rho);
        num += t * logdrop;
        den += t * t;
    }
    const double fitted_rate = num / den;
    const double expected =
        lambda * (x - y) * (x - y) / 2.0;  // master-equation exponent
    CHECK(fitted_rate == doctest::Approx(expected).epsilon(0.05));
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS(config_for(0.0, 1.0, 1.0, 1e-3).validate(),
                    std::invalid_argument);
    CHECK_THROWS_AS(config_for(1.0, 1.0, 1.0, 0.5).validate(),
                    std::invalid_argument);  // dt > t_final / 100
    CollapseModelParams params{ModelKind::qmupl, 1e-2, 1e-7, phys::m_nucleon};
    const auto cfg = qm::QmuplRunConfig::from_params(params, 2.0 * phys::m_nucleon,
                                                     1.0, 1e-3);
    CHECK(cfg.lambda == doctest::Approx(2e-2).epsilon(1e-12));
}
