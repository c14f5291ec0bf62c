#include "musklab/fft2d.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace musk {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

Fft2D::Fft2D(const PeriodicGrid& grid)
    : n_(grid.n), two_pi_over_period_(kTwoPi / grid.period) {
    rbuf_.resize(static_cast<std::size_t>(n_) * n_);
    cbuf_.resize(static_cast<std::size_t>(n_) * spectral_cols());
    plan_fwd_ = fftw_plan_dft_r2c_2d(n_, n_, rbuf_.data(),
                                     reinterpret_cast<fftw_complex*>(cbuf_.data()),
                                     FFTW_ESTIMATE);
    plan_inv_ = fftw_plan_dft_c2r_2d(n_, n_, reinterpret_cast<fftw_complex*>(cbuf_.data()),
                                     rbuf_.data(), FFTW_ESTIMATE);
    if (!plan_fwd_ || !plan_inv_) throw std::runtime_error("fftw plan creation failed");
}

Fft2D::~Fft2D() {
    if (plan_fwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    if (plan_inv_) fftw_destroy_plan(static_cast<fftw_plan>(plan_inv_));
}

void Fft2D::forward(const std::vector<double>& real,
                    std::vector<std::complex<double>>& spec) const {
    if (real.size() != rbuf_.size()) throw std::invalid_argument("fft: wrong input size");
    std::memcpy(rbuf_.data(), real.data(), rbuf_.size() * sizeof(double));
    fftw_execute(static_cast<fftw_plan>(plan_fwd_));
    spec.assign(cbuf_.begin(), cbuf_.end());
}

void Fft2D::inverse(const std::vector<std::complex<double>>& spec,
                    std::vector<double>& real) const {
    if (spec.size() != cbuf_.size()) throw std::invalid_argument("fft: wrong spectrum size");
    std::memcpy(cbuf_.data(), spec.data(), cbuf_.size() * sizeof(std::complex<double>));
    fftw_execute(static_cast<fftw_plan>(plan_inv_));
    const double scale = 1.0 / (static_cast<double>(n_) * n_);
    real.resize(rbuf_.size());
    for (std::size_t i = 0; i < rbuf_.size(); ++i) real[i] = rbuf_[i] * scale;
}

void Fft2D::apply_half_laplacian(const std::vector<double>& in,
                                 std::vector<double>& out) const {
    std::vector<std::complex<double>> spec;
    forward(in, spec);
    const int cols = spectral_cols();
    for (int i = 0; i < n_; ++i) {
        const double kx = wavenumber(freq(i));
        for (int j = 0; j < cols; ++j) {
            const double ky = wavenumber(j);
            spec[static_cast<std::size_t>(i) * cols + j] *= -std::sqrt(kx * kx + ky * ky);
        }
    }
    inverse(spec, out);
}

void Fft2D::gradient(const std::vector<double>& in, std::vector<double>& gx,
                     std::vector<double>& gy) const {
    std::vector<std::complex<double>> spec;
    forward(in, spec);
    std::vector<std::complex<double>> sx(spec.size()), sy(spec.size());
    const int cols = spectral_cols();
    const std::complex<double> I(0.0, 1.0);
    for (int i = 0; i < n_; ++i) {
        int ki = freq(i);
        // the unpaired Nyquist mode has no well-defined odd derivative
        if (2 * i == n_) ki = 0;
        const double kx = wavenumber(ki);
        for (int j = 0; j < cols; ++j) {
            const double ky = (2 * j == n_) ? 0.0 : wavenumber(j);
            const std::size_t idx = static_cast<std::size_t>(i) * cols + j;
            sx[idx] = I * kx * spec[idx];
            sy[idx] = I * ky * spec[idx];
        }
    }
    inverse(sx, gx);
    inverse(sy, gy);
}

void Fft2D::shift(const std::vector<double>& in, double shift_x, double shift_y,
                  std::vector<double>& out) const {
    std::vector<std::complex<double>> spec;
    forward(in, spec);
    const int cols = spectral_cols();
    for (int i = 0; i < n_; ++i) {
        const double kx = wavenumber(freq(i));
        for (int j = 0; j < cols; ++j) {
            const double ky = wavenumber(j);
            const double phase = kx * shift_x + ky * shift_y;
            spec[static_cast<std::size_t>(i) * cols + j] *=
                std::complex<double>(std::cos(phase), std::sin(phase));
        }
    }
    inverse(spec, out);
}

void Fft2D::apply_multiplier(const std::vector<double>& in,
                             const std::vector<double>& multiplier,
                             std::vector<double>& out) const {
    std::vector<std::complex<double>> spec;
    forward(in, spec);
    if (multiplier.size() != spec.size())
        throw std::invalid_argument("fft: multiplier table size mismatch");
    for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= multiplier[i];
    inverse(spec, out);
}

}  // namespace musk
