#include "collapse/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "collapse/constants.hpp"
#include "collapse/errors.hpp"
#include "collapse/fft.hpp"

namespace collapse {

GridWavefunction::GridWavefunction(GridSpec spec,
                                   std::vector<std::complex<double>> amplitudes)
    : spec_(spec), amp_(std::move(amplitudes)) {
    if (spec_.n < 8) throw GeometryError("grid needs at least 8 points");
    if (!(spec_.dx > 0.0)) throw GeometryError("grid spacing must be positive");
    if (amp_.size() != spec_.n)
        throw std::invalid_argument("amplitude count does not match grid");
}

double GridWavefunction::norm_squared() const {
    double s = 0.0;
    for (const auto& a : amp_) s += std::norm(a);
    return s * spec_.dx;
}

double GridWavefunction::normalize() {
    const double n2 = norm_squared();
    if (!(n2 > 0.0) || !std::isfinite(n2))
        throw NumericError("cannot normalize state with vanishing norm");
    const double corr = 1.0 / std::sqrt(n2);
    for (auto& a : amp_) a *= corr;
    return corr;
}

double GridWavefunction::boundary_probability() const {
    const std::size_t guard = std::max<std::size_t>(1, amp_.size() / 20);
    double s = 0.0;
    for (std::size_t i = 0; i < guard; ++i) s += std::norm(amp_[i]);
    for (std::size_t i = amp_.size() - guard; i < amp_.size(); ++i)
        s += std::norm(amp_[i]);
    return s * spec_.dx;
}

void GridWavefunction::check_boundary(double tol) const {
    const double p = boundary_probability();
    if (p > tol)
        throw GeometryError("probability " + std::to_string(p) +
                            " reached the outer 5% of the grid");
}

std::size_t GridWavefunction::index_of(double xpos) const {
    const double fi = (xpos - spec_.x_min) / spec_.dx;
    const auto i = static_cast<long long>(std::llround(fi));
    return static_cast<std::size_t>(std::clamp<long long>(
        i, 0, static_cast<long long>(spec_.n) - 1));
}

GridWavefunction make_gaussian_grid_state(const GridSpec& spec, double x_mean,
                                          double k_mean, double sigma) {
    if (!(sigma > 0.0) || sigma <= 2.0 * spec.dx)
        throw GeometryError("sigma not resolvable on this grid (need sigma > 2 dx)");
    if (x_mean - 4.0 * sigma < spec.x_min || x_mean + 4.0 * sigma > spec.x_max())
        throw GeometryError("wave packet closer than 4 sigma to a grid wall");
    std::vector<std::complex<double>> amp(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
        const double x = spec.x(i);
        const double u = (x - x_mean) / sigma;
        amp[i] = std::polar(std::exp(-0.25 * u * u), k_mean * x);
    }
    GridWavefunction psi(spec, std::move(amp));
    psi.normalize();
    return psi;
}

Moments expectation_and_variance(const GridWavefunction& psi, Observable obs) {
    const double n2 = psi.norm_squared();
    if (std::abs(n2 - 1.0) > 1e-9)
        throw ContractError("expectation_and_variance requires a normalized state");

    Moments m;
    if (obs == Observable::position) {
        // Trapezoid quadrature over the grid.
        const std::size_t n = psi.size();
        double s0 = 0.0, s1 = 0.0, s2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
            const double p = w * std::norm(psi[i]);
            const double x = psi.x(i);
            s0 += p;
            s1 += p * x;
            s2 += p * x * x;
        }
        m.mean = s1 / s0;
        m.variance = s2 / s0 - m.mean * m.mean;
    } else {
        auto spectrum = psi.amplitudes();
        Fft1D fft(spectrum.size());
        fft.forward(spectrum);
        double s0 = 0.0, s1 = 0.0, s2 = 0.0;
        for (std::size_t i = 0; i < spectrum.size(); ++i) {
            const double p = std::norm(spectrum[i]);
            const double mom = phys::hbar * Fft1D::wavenumber(i, spectrum.size(), psi.dx());
            s0 += p;
            s1 += p * mom;
            s2 += p * mom * mom;
        }
        m.mean = s1 / s0;
        m.variance = s2 / s0 - m.mean * m.mean;
    }
    return m;
}

double overlap(const GridWavefunction& a, const GridWavefunction& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("overlap: grids differ");
    std::complex<double> s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return std::abs(s) * a.dx();
}

}  // namespace collapse
