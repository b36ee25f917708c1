#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace collapse {

/// Uniform 1D spatial grid with hard-wall (zero amplitude) boundaries.
struct GridSpec {
    double x_min = 0.0;
    double dx = 0.0;
    std::size_t n = 0;

    double x(std::size_t i) const { return x_min + dx * static_cast<double>(i); }
    double x_max() const { return x(n - 1); }
};

/// Complex amplitudes psi_i (units m^-1/2) on a uniform grid; norm^2 is the
/// Riemann sum sum(|psi_i|^2) * dx.
class GridWavefunction {
public:
    GridWavefunction() = default;
    GridWavefunction(GridSpec spec, std::vector<std::complex<double>> amplitudes);

    const GridSpec& spec() const { return spec_; }
    std::size_t size() const { return amp_.size(); }
    double x(std::size_t i) const { return spec_.x(i); }
    double dx() const { return spec_.dx; }

    std::complex<double>& operator[](std::size_t i) { return amp_[i]; }
    const std::complex<double>& operator[](std::size_t i) const { return amp_[i]; }
    std::vector<std::complex<double>>& amplitudes() { return amp_; }
    const std::vector<std::complex<double>>& amplitudes() const { return amp_; }

    double norm_squared() const;

    /// Rescales to unit norm and returns the applied correction factor
    /// 1/sqrt(norm^2). Throws NumericError on a vanishing norm.
    double normalize();

    /// Probability mass in the outer 5% of the grid on each side.
    double boundary_probability() const;

    /// Throws GeometryError when more than `tol` probability reached the
    /// guard band (hard-wall contract).
    void check_boundary(double tol = 1e-6) const;

    /// Nearest grid index to position x.
    std::size_t index_of(double xpos) const;

private:
    GridSpec spec_;
    std::vector<std::complex<double>> amp_;
};

enum class Observable { position, momentum };

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
};

/// Normalized Gaussian packet exp(-(x-x_mean)^2/(4 sigma^2) + i k_mean x).
/// Preconditions: sigma > 2 dx (resolvable) and the packet at least 4 sigma
/// away from both walls; violations throw GeometryError.
GridWavefunction make_gaussian_grid_state(const GridSpec& spec, double x_mean,
                                          double k_mean, double sigma);

/// Position moments by trapezoid quadrature, momentum moments by the spectral
/// method (FFT power spectrum). Requires |norm^2 - 1| <= 1e-9, else
/// ContractError. Momentum mean/variance are in SI momentum units (kg m/s).
Moments expectation_and_variance(const GridWavefunction& psi, Observable obs);

/// |<a|b>| overlap integral modulus (1 for identical normalized states).
double overlap(const GridWavefunction& a, const GridWavefunction& b);

}  // namespace collapse
