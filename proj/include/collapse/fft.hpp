#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace collapse {

/// In-place complex FFT of fixed length, backed by FFTW. Plan creation is
/// serialized internally (FFTW planning is not thread safe); transforms on
/// distinct instances may run concurrently. backward() includes the 1/n
/// normalization so backward(forward(x)) == x.
class Fft1D {
public:
    explicit Fft1D(std::size_t n);
    ~Fft1D();

    Fft1D(const Fft1D&) = delete;
    Fft1D& operator=(const Fft1D&) = delete;

    std::size_t size() const { return n_; }

    void forward(std::vector<std::complex<double>>& data) const;
    void backward(std::vector<std::complex<double>>& data) const;

    /// Angular wavenumber of FFT bin i for grid spacing dx (standard
    /// wrap-around ordering: positive frequencies first).
    static double wavenumber(std::size_t i, std::size_t n, double dx);

private:
    std::size_t n_;
    void* plan_fwd_;
    void* plan_bwd_;
    mutable std::vector<std::complex<double>> buf_;
};

}  // namespace collapse
