#include "collapse/grw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "collapse/constants.hpp"
#include "collapse/errors.hpp"
#include "collapse/fft.hpp"

namespace collapse::grw {

void GrwParams::validate() const {
    if (lambda_grw < 0.0) throw std::invalid_argument("lambda_grw must be >= 0");
    if (!(r_c > 0.0)) throw std::invalid_argument("r_c must be > 0");
    if (n_particles < 1) throw std::invalid_argument("n_particles must be >= 1");
}

GridWavefunction localize(const GridWavefunction& psi, double x_center,
                          double r_c) {
    if (!(r_c > 0.0)) throw std::invalid_argument("localize: r_c must be > 0");
    GridWavefunction out = psi;
    const double inv2rc2 = 1.0 / (2.0 * r_c * r_c);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double d = out.x(i) - x_center;
        out[i] *= std::exp(-d * d * inv2rc2);
    }
    const double n2 = out.norm_squared();
    if (!(n2 > 1e-280))
        throw NumericError("localize: degenerate jump (vanishing norm)");
    out.normalize();
    return out;
}

std::vector<double> jump_position_density(const GridWavefunction& psi,
                                          double r_c) {
    if (!(r_c > 0.0))
        throw std::invalid_argument("jump_position_density: r_c must be > 0");
    if (std::abs(psi.norm_squared() - 1.0) > 1e-9)
        throw ContractError("jump_position_density: psi must be normalized");
    const std::size_t n = psi.size();
    const double dx = psi.dx();
    const double norm = 1.0 / (std::sqrt(std::numbers::pi) * r_c);
    const double inv_rc2 = 1.0 / (r_c * r_c);
    std::vector<double> prob(n, 0.0);
    std::vector<double> weight(n);
    for (std::size_t i = 0; i < n; ++i) weight[i] = std::norm(psi[i]) * dx;
    for (std::size_t j = 0; j < n; ++j) {
        const double xj = psi.x(j);
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = psi.x(i) - xj;
            s += weight[i] * std::exp(-d * d * inv_rc2);
        }
        prob[j] = norm * s;
    }
    return prob;
}

double offdiag_decay_rate(double x, double y, double lambda_grw, double r_c) {
    const double d = x - y;
    return lambda_grw * (1.0 - std::exp(-d * d / (4.0 * r_c * r_c)));
}

namespace {

class FreePropagator {
public:
    FreePropagator(std::size_t n, double dx, double mass)
        : fft_(n), dx_(dx), mass_(mass) {}

    void advance(GridWavefunction& psi, double dt) {
        if (dt <= 0.0) return;
        auto& amp = psi.amplitudes();
        fft_.forward(amp);
        for (std::size_t i = 0; i < amp.size(); ++i) {
            const double k = Fft1D::wavenumber(i, amp.size(), dx_);
            amp[i] *= std::polar(1.0, -phys::hbar * k * k / (2.0 * mass_) * dt);
        }
        fft_.backward(amp);
    }

    double kinetic_energy(const GridWavefunction& psi) {
        auto amp = psi.amplitudes();
        fft_.forward(amp);
        double s0 = 0.0, s1 = 0.0;
        for (std::size_t i = 0; i < amp.size(); ++i) {
            const double k = Fft1D::wavenumber(i, amp.size(), dx_);
            const double p = std::norm(amp[i]);
            s0 += p;
            s1 += p * phys::hbar * phys::hbar * k * k / (2.0 * mass_);
        }
        return s1 / s0;
    }

private:
    Fft1D fft_;
    double dx_;
    double mass_;
};

double sample_jump_center(const GridWavefunction& psi, double r_c, Philox& rng) {
    const auto density = jump_position_density(psi, r_c);
    std::vector<double> cdf(density.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < density.size(); ++i) {
        acc += density[i] * psi.dx();
        cdf[i] = acc;
    }
    const double u = rng.next_double() * acc;
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    const auto idx = static_cast<std::size_t>(it - cdf.begin());
    return psi.x(std::min(idx, psi.size() - 1));
}

}  // namespace

GrwTrajectory evolve_grw(const GridWavefunction& psi0, const GrwParams& params,
                         double mass, double t_final, const GrwOptions& options,
                         Philox& rng) {
    params.validate();
    if (!(mass > 0.0)) throw std::invalid_argument("evolve_grw: mass must be > 0");
    if (!(t_final > 0.0) || !(options.dt_record > 0.0))
        throw std::invalid_argument("evolve_grw: t_final and dt_record must be > 0");
    if (std::abs(psi0.norm_squared() - 1.0) > 1e-9)
        throw ContractError("evolve_grw: psi0 must be normalized");

    GrwTrajectory traj;
    GridWavefunction psi = psi0;
    FreePropagator prop(psi.size(), psi.dx(), mass);
    const std::size_t ix = psi.index_of(options.x_probe);
    const std::size_t iy = psi.index_of(options.y_probe);
    const double rate = params.total_rate();

    auto record = [&](double t) {
        traj.t.push_back(t);
        traj.rho_probe.push_back(psi[ix] * std::conj(psi[iy]));
        traj.kinetic_energy.push_back(prop.kinetic_energy(psi));
        psi.check_boundary(options.boundary_tol);
    };

    auto draw_waiting_time = [&]() {
        if (rate <= 0.0) return std::numeric_limits<double>::infinity();
        return -std::log1p(-rng.next_double()) / rate;
    };

    record(0.0);
    double t = 0.0;
    double next_jump = draw_waiting_time();
    std::size_t next_record = 1;
    const auto n_records =
        static_cast<std::size_t>(std::floor(t_final / options.dt_record + 1e-9));

    while (next_record <= n_records) {
        const double t_rec = static_cast<double>(next_record) * options.dt_record;
        if (next_jump < t_rec) {
            prop.advance(psi, next_jump - t);
            t = next_jump;
            for (int attempt = 0;; ++attempt) {
                const double center = sample_jump_center(psi, params.r_c, rng);
                try {
                    psi = localize(psi, center, params.r_c);
                    traj.jumps.push_back({t, center});
                    break;
                } catch (const NumericError&) {
                    // Grid-truncation artifact: resample the jump center.
                    ++traj.degenerate_resamples;
                    if (attempt >= 16)
                        throw NumericError(
                            "evolve_grw: degenerate jump persisted after resampling");
                }
            }
            next_jump = t + draw_waiting_time();
        } else {
            prop.advance(psi, t_rec - t);
            t = t_rec;
            record(t);
            ++next_record;
        }
    }
    traj.final_state = std::move(psi);
    return traj;
}

}  // namespace collapse::grw
