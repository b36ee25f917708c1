#include "collapse/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <numbers>
#include <stdexcept>

namespace collapse {

namespace {
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

Fft1D::Fft1D(std::size_t n) : n_(n), buf_(n) {
    if (n == 0) throw std::invalid_argument("Fft1D: empty transform");
    std::lock_guard<std::mutex> lock(plan_mutex());
    auto* ptr = reinterpret_cast<fftw_complex*>(buf_.data());
    plan_fwd_ = fftw_plan_dft_1d(static_cast<int>(n), ptr, ptr, FFTW_FORWARD,
                                 FFTW_ESTIMATE);
    plan_bwd_ = fftw_plan_dft_1d(static_cast<int>(n), ptr, ptr, FFTW_BACKWARD,
                                 FFTW_ESTIMATE);
}

Fft1D::~Fft1D() {
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
}

void Fft1D::forward(std::vector<std::complex<double>>& data) const {
    if (data.size() != n_) throw std::invalid_argument("Fft1D: size mismatch");
    buf_ = data;
    auto* ptr = reinterpret_cast<fftw_complex*>(buf_.data());
    fftw_execute_dft(static_cast<fftw_plan>(plan_fwd_), ptr, ptr);
    data = buf_;
}

void Fft1D::backward(std::vector<std::complex<double>>& data) const {
    if (data.size() != n_) throw std::invalid_argument("Fft1D: size mismatch");
    buf_ = data;
    auto* ptr = reinterpret_cast<fftw_complex*>(buf_.data());
    fftw_execute_dft(static_cast<fftw_plan>(plan_bwd_), ptr, ptr);
    const double inv = 1.0 / static_cast<double>(n_);
    for (std::size_t i = 0; i < n_; ++i) data[i] = buf_[i] * inv;
}

double Fft1D::wavenumber(std::size_t i, std::size_t n, double dx) {
    const double dk = 2.0 * std::numbers::pi / (static_cast<double>(n) * dx);
    const auto half = n / 2;
    if (i < half) return static_cast<double>(i) * dk;
    return (static_cast<double>(i) - static_cast<double>(n)) * dk;
}

}  // namespace collapse
