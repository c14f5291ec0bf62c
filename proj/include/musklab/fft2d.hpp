#pragma once

#include <complex>
#include <vector>

#include "musklab/grid.hpp"

namespace musk {

// Real-to-complex FFT workspace for one grid size. Plans use FFTW_ESTIMATE so
// repeated constructions pick the same algorithm (bit-identical transforms).
// Not safe for concurrent execute() calls on the same instance.
class Fft2D {
public:
    explicit Fft2D(const PeriodicGrid& grid);
    ~Fft2D();
    Fft2D(const Fft2D&) = delete;
    Fft2D& operator=(const Fft2D&) = delete;

    int n() const { return n_; }
    int spectral_cols() const { return n_ / 2 + 1; }

    // forward: real n*n -> complex n*(n/2+1); inverse normalizes by 1/n^2
    void forward(const std::vector<double>& real, std::vector<std::complex<double>>& spec) const;
    void inverse(const std::vector<std::complex<double>>& spec, std::vector<double>& real) const;

    // signed integer frequency of spectral row i
    int freq(int i) const { return i <= n_ / 2 ? i : i - n_; }
    // physical wavevector component 2*pi*k/P
    double wavenumber(int k) const { return two_pi_over_period_ * k; }

    // -(-Laplacian)^{1/2}: multiply by -|xi| in spectral space
    void apply_half_laplacian(const std::vector<double>& in, std::vector<double>& out) const;

    // spectral partial derivatives
    void gradient(const std::vector<double>& in, std::vector<double>& gx,
                  std::vector<double>& gy) const;

    // out(x) = in(x + shift), exact for band-limited data (phase multiply)
    void shift(const std::vector<double>& in, double shift_x, double shift_y,
               std::vector<double>& out) const;

    // generic real multiplier table m[i*(n/2+1)+j] indexed like the spectrum
    void apply_multiplier(const std::vector<double>& in, const std::vector<double>& multiplier,
                          std::vector<double>& out) const;

private:
    int n_;
    double two_pi_over_period_;
    void* plan_fwd_ = nullptr;
    void* plan_inv_ = nullptr;
    mutable std::vector<double> rbuf_;
    mutable std::vector<std::complex<double>> cbuf_;
};

}  // namespace musk
