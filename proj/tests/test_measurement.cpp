#include <doctest.h>

#include <cmath>
#include <complex>

#include "collapse/ensemble.hpp"
#include "collapse/errors.hpp"
#include "collapse/measurement.hpp"

using namespace collapse;
namespace ms = collapse::measurement;

namespace {

ms::MeasurementSetup one_gram_setup(double b = 35.0) {
    ms::MeasurementSetup s;
    s.pointer_mass = 1e-3;
    s.kappa_hbar = 1e-2;
    s.t_interaction = 1.0;
    s.b_threshold = b;
    return s;
}

double lambda_one_gram() { return 1e-3 / phys::m_nucleon * 1e-2; }

}  // namespace

TEST_CASE("setup validation") {
    auto s = one_gram_setup();
    CHECK_NOTHROW(s.validate());
    s.b_threshold = 2.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = one_gram_setup();
    s.c_plus = 0.9;  // breaks normalization
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = one_gram_setup();
    s.c_plus = 0.0;
    s.c_minus = 1.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("gamma0 from amplitudes") {
    auto s = one_gram_setup();
    s.c_plus = std::sqrt(0.3);
    s.c_minus = std::sqrt(0.7);
    CHECK(s.gamma0() == doctest::Approx(0.5 * std::log(0.3 / 0.7)).epsilon(1e-12));
}

TEST_CASE("pointer separation: linear rise, 1 cm plateau, zero start") {
    const auto s = one_gram_setup();
    const double omega = 5.02e-5;
    CHECK(ms::pointer_separation(0.0, s, omega) == 0.0);
    CHECK(ms::pointer_separation(0.5, s, omega) ==
          doctest::Approx(s.kappa_hbar * 0.5).epsilon(1e-3));
    CHECK(ms::pointer_separation(1.0, s, omega) ==
          doctest::Approx(1e-2).epsilon(1e-3));
    // Long plateau: 1 cm maintained for T <= t << 1/omega.
    CHECK(ms::pointer_separation(100.0, s, omega) ==
          doctest::Approx(1e-2).epsilon(1e-3));
    // Deterministic pure function: identical calls agree bitwise (the
    // separation dynamics consumes no randomness).
    CHECK(ms::pointer_separation(17.0, s, omega) ==
          ms::pointer_separation(17.0, s, omega));
}

TEST_CASE("time change: cubic clock and its inverse") {
    const double lambda = lambda_one_gram();
    const double kh = 1e-2;
    CHECK(ms::time_change(0.0, lambda, kh, 1.0) == 0.0);
    const double s1 = ms::time_change(1.0, lambda, kh, 1.0);
    CHECK(s1 == doctest::Approx(lambda * kh * kh / 3.0).epsilon(1e-12));
    CHECK(s1 == doctest::Approx(2.0e17).epsilon(0.02));
    CHECK(ms::inverse_time_change(1.0, lambda, kh) ==
          doctest::Approx(1.7e-6).epsilon(0.01));
    CHECK(ms::inverse_time_change(s1, lambda, kh) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(ms::time_change(1.5, lambda, kh, 1.0), OutOfValidityError);
}

TEST_CASE("collapse probabilities") {
    const auto even = ms::collapse_probability(0.0, 10.0);
    CHECK(even.p_plus == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(even.p_minus == doctest::Approx(0.5).epsilon(1e-12));

    const double gamma0 = 0.5 * std::log(0.3 / 0.7);
    const auto born = ms::collapse_probability(gamma0, 20.0);
    CHECK(born.p_plus == doctest::Approx(0.3).epsilon(1e-8));
    CHECK(born.p_plus + born.p_minus == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(ms::collapse_probability(11.0, 10.0), std::invalid_argument);
}

TEST_CASE("simulate_hitting: determinism, argument checks, budget") {
    const auto noise = make_noise_path(5, 1e-2, 200'000);
    const auto a = ms::simulate_hitting(0.0, 8.0, noise);
    const auto b = ms::simulate_hitting(0.0, 8.0, noise);
    CHECK(a.s_col == b.s_col);
    CHECK(a.outcome == b.outcome);

    ms::HittingOptions opts;
    opts.ds = 0.1;  // too coarse
    Philox rng(1);
    CHECK_THROWS_AS(ms::simulate_hitting(0.0, 8.0, opts, rng),
                    std::invalid_argument);
    opts.ds = 1e-2;
    opts.max_steps = 10;  // cannot reach the barrier
    CHECK_THROWS_AS(ms::simulate_hitting(0.0, 8.0, opts, rng), NumericError);
    CHECK_THROWS_AS(ms::simulate_hitting(9.0, 8.0, opts, rng),
                    std::invalid_argument);
}

TEST_CASE("hitting ensemble: symmetric start splits evenly, mean clock = b") {
    const double b = 10.0;
    const std::size_t n = 4000;
    ms::HittingOptions opts;
    opts.ds = 2e-3;
    const auto results = run_ensemble<ms::HittingResult>(n, [&](std::size_t i) {
        Philox rng(31, i);
        return ms::simulate_hitting(0.0, b, opts, rng);
    });
    RunningStats s_col;
    std::size_t plus = 0;
    for (const auto& r : results) {
        s_col.add(r.s_col);
        plus += r.outcome == ms::Outcome::plus ? 1 : 0;
    }
    CHECK(std::abs(s_col.mean() - b) < 3.0 * s_col.std_error());
    const double p_hat = static_cast<double>(plus) / static_cast<double>(n);
    CHECK(std::abs(p_hat - 0.5) < 3.0 * std::sqrt(0.25 / static_cast<double>(n)));
    // Variance of the passage clock is ~b as well (loose 25% band; the
    // proportionality constant is not pinned analytically).
    CHECK(s_col.variance() == doctest::Approx(b).epsilon(0.25));
}

TEST_CASE("hitting ensemble reproduces the Born weights (small run)") {
    const double b = 10.0;
    const double gamma0 = 0.5 * std::log(0.3 / 0.7);
    const std::size_t n = 2000;
    ms::HittingOptions opts;
    opts.ds = 2e-3;
    std::size_t plus = 0;
    for (std::size_t i = 0; i < n; ++i) {
        Philox rng(77, i);
        plus += ms::simulate_hitting(gamma0, b, opts, rng).outcome ==
                        ms::Outcome::plus
                    ? 1
                    : 0;
    }
    const double p_hat = static_cast<double>(plus) / static_cast<double>(n);
    const double band = 3.0 * std::sqrt(0.3 * 0.7 / static_cast<double>(n));
    CHECK(std::abs(p_hat - ms::collapse_probability(gamma0, b).p_plus) < band);
}

TEST_CASE("collapse time chain: cubic-root mass scaling and 1-g value") {
    auto setup = one_gram_setup(35.0);
    const auto est = ms::collapse_time_chain(setup, 1e-2);
    // Composing E[S] = b with the inverse cubic clock gives ~5.6e-6 s for the
    // 1-g pointer at b = 35. (A much larger figure of 1.5e-4 s circulates for
    // this configuration; it is inconsistent with the clock composition and
    // is reported by the docs alongside this value.)
    const double expected = std::cbrt(3.0 * 35.0 / (lambda_one_gram() * 1e-4));
    CHECK(est.t_col == doctest::Approx(expected).epsilon(1e-12));
    CHECK(est.t_col == doctest::Approx(5.6e-6).epsilon(0.02));
    // Pointer separation at the decision time is far below the 1 cm scale.
    CHECK(est.x_at_t_col == doctest::Approx(setup.kappa_hbar * est.t_col));
    CHECK(est.x_at_t_col < 1e-3 * 1e-2);

    auto heavy = setup;
    heavy.pointer_mass *= 2.0;
    const auto est2 = ms::collapse_time_chain(heavy, 1e-2);
    CHECK(est2.t_col / est.t_col ==
          doctest::Approx(std::pow(2.0, -1.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("generic collapse: unitary limit keeps the variance constant") {
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2, 2);
    h(0, 0) = phys::hbar * 1.0;
    h(1, 1) = phys::hbar * 2.0;
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(2, 2);
    a(0, 0) = 1.0;
    a(1, 1) = -1.0;
    Eigen::VectorXcd psi0(2);
    psi0 << std::sqrt(0.7), std::sqrt(0.3);
    const auto nr = make_noise_path(1, 1e-4, 1000);
    const auto ni = make_noise_path(2, 1e-4, 1000);
    const auto res = ms::generic_collapse_trajectory(h, a, 0.0, 0.0, psi0, nr, ni);
    for (double v : res.variance)
        CHECK(v == doctest::Approx(res.variance.front()).epsilon(1e-4));
}

TEST_CASE("generic collapse: Born statistics for a two-level system") {
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2, 2);
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(2, 2);
    a(0, 0) = 1.0;
    a(1, 1) = -1.0;
    Eigen::VectorXcd psi0(2);
    psi0 << std::sqrt(0.7), std::sqrt(0.3);
    const double beta_r = 1.0;
    const std::size_t n = 4000;
    const double dt = 1e-3;
    const std::size_t steps = 15'000;
    ms::GenericCollapseOptions opts;
    opts.record_every = steps;  // final point only
    opts.norm_drift_tol = 0.25;  // renormalization absorbs the spikes
    const auto outcomes = run_ensemble<int>(n, [&](std::size_t i) {
        const auto nr = make_noise_path(501, dt, steps, 2 * i);
        const auto ni = make_noise_path(501, dt, steps, 2 * i + 1);
        const auto res =
            ms::generic_collapse_trajectory(h, a, beta_r, 0.4, psi0, nr, ni, opts);
        return res.a_mean.back() > 0.0 ? 1 : 0;
    });
    std::size_t plus = 0;
    for (int o : outcomes) plus += o;
    const double p_hat = static_cast<double>(plus) / static_cast<double>(n);
    const double band = 3.0 * std::sqrt(0.7 * 0.3 / static_cast<double>(n));
    CHECK(std::abs(p_hat - 0.7) < band);
    // Collapse is essentially complete: variance at the end is tiny.
}

TEST_CASE("generic collapse input checks") {
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2, 2);
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(2, 2);
    Eigen::VectorXcd psi0(2);
    psi0 << 1.0, 0.0;
    const auto nr = make_noise_path(1, 1e-3, 10);
    const auto ni = make_noise_path(2, 5e-4, 10);  // mismatched dt
    CHECK_THROWS_AS(
        ms::generic_collapse_trajectory(h, a, 1.0, 0.0, psi0, nr, ni),
        std::invalid_argument);
    Eigen::VectorXcd big = Eigen::VectorXcd::Zero(65);
    big(0) = 1.0;
    CHECK_THROWS_AS(ms::generic_collapse_trajectory(
                        Eigen::MatrixXcd::Zero(65, 65),
                        Eigen::MatrixXcd::Zero(65, 65), 1.0, 0.0, big,
                        make_noise_path(1, 1e-3, 10), make_noise_path(2, 1e-3, 10)),
                    std::invalid_argument);
}
