#pragma once

#include <cmath>
#include <complex>

#include "collapse/constants.hpp"
#include "collapse/errors.hpp"

namespace collapse {

/// Parameters of the Gaussian ansatz
///   psi(x) = exp[ -a (x - x_mean)^2 + i k_mean x + log_weight ],
/// the closed-form sector of the position-localization dynamics.
struct GaussianState {
    std::complex<double> a;   // m^-2, Re(a) > 0 for a normalizable state
    double x_mean = 0.0;      // m
    double k_mean = 0.0;      // m^-1
    double log_weight = 0.0;  // gamma_t, dimensionless

    double a_re() const { return a.real(); }
    double a_im() const { return a.imag(); }

    double sigma_q() const {
        if (!(a.real() > 0.0)) throw NumericError("GaussianState: a_re <= 0");
        return 0.5 / std::sqrt(a.real());
    }

    double sigma_p() const {
        if (!(a.real() > 0.0)) throw NumericError("GaussianState: a_re <= 0");
        return phys::hbar * std::sqrt(std::norm(a) / a.real());
    }

    /// State of width sigma (in |psi|^2), centered at x_mean with mean
    /// wavenumber k_mean.
    static GaussianState from_width(double sigma, double x_mean = 0.0,
                                    double k_mean = 0.0) {
        GaussianState s;
        s.a = 1.0 / (4.0 * sigma * sigma);
        s.x_mean = x_mean;
        s.k_mean = k_mean;
        return s;
    }
};

}  // namespace collapse
