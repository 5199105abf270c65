#include "sqsar/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sqsar {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

void bit_reverse_permute(std::complex<double>* data, std::size_t n) {
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }
}

}  // namespace

Fft1d::Fft1d(std::size_t n) : n_(n), pow2_(is_pow2(n)) {
  if (n == 0) throw std::invalid_argument("fft length must be positive");
  if (pow2_) {
    twiddle_.resize(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
      double a = -2.0 * std::numbers::pi * double(k) / double(n);
      twiddle_[k] = {std::cos(a), std::sin(a)};
    }
    return;
  }
  // Bluestein setup. Reducing k^2 mod 2n before the trig call keeps the
  // phase argument small and the chirp accurate for long lengths.
  m_ = next_pow2(2 * n - 1);
  chirp_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t q = (k * k) % (2 * n);
    double a = -std::numbers::pi * double(q) / double(n);
    chirp_[k] = {std::cos(a), std::sin(a)};
  }
  bspec_.assign(m_, {0.0, 0.0});
  bspec_[0] = std::conj(chirp_[0]);
  for (std::size_t k = 1; k < n; ++k) {
    bspec_[k] = std::conj(chirp_[k]);
    bspec_[m_ - k] = std::conj(chirp_[k]);
  }
  sub_ = std::make_unique<Fft1d>(m_);
  sub_->forward(bspec_.data());
}

void Fft1d::radix2(std::complex<double>* data) const {
  bit_reverse_permute(data, n_);
  for (std::size_t len = 2; len <= n_; len <<= 1) {
    std::size_t step = n_ / len;
    for (std::size_t start = 0; start < n_; start += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        std::complex<double> w = twiddle_[k * step];
        std::complex<double> u = data[start + k];
        std::complex<double> v = data[start + k + len / 2] * w;
        data[start + k] = u + v;
        data[start + k + len / 2] = u - v;
      }
    }
  }
}

void Fft1d::bluestein(std::complex<double>* data) const {
  std::vector<std::complex<double>> a(m_, {0.0, 0.0});
  for (std::size_t k = 0; k < n_; ++k) a[k] = data[k] * chirp_[k];
  sub_->forward(a.data());
  for (std::size_t k = 0; k < m_; ++k) a[k] *= bspec_[k];
  sub_->inverse(a.data());
  for (std::size_t k = 0; k < n_; ++k) data[k] = a[k] * chirp_[k];
}

void Fft1d::forward(std::complex<double>* data) const {
  if (n_ == 1) return;
  if (pow2_)
    radix2(data);
  else
    bluestein(data);
}

void Fft1d::inverse(std::complex<double>* data) const {
  // conj trick: ifft(x) = conj(fft(conj(x))) / n, shared by both paths.
  for (std::size_t k = 0; k < n_; ++k) data[k] = std::conj(data[k]);
  forward(data);
  double s = 1.0 / double(n_);
  for (std::size_t k = 0; k < n_; ++k) data[k] = std::conj(data[k]) * s;
}

namespace {

void fft2d_apply(ComplexGrid& g, bool inverse) {
  const std::size_t rows = g.rows(), cols = g.cols();
  Fft1d row_plan(cols);
  Fft1d col_plan(rows);

#pragma omp parallel for schedule(static)
  for (long r = 0; r < long(rows); ++r) {
    if (inverse)
      row_plan.inverse(g.row(std::size_t(r)));
    else
      row_plan.forward(g.row(std::size_t(r)));
  }

#pragma omp parallel for schedule(static)
  for (long c = 0; c < long(cols); ++c) {
    std::vector<std::complex<double>> buf(rows);
    for (std::size_t r = 0; r < rows; ++r) buf[r] = g(r, std::size_t(c));
    if (inverse)
      col_plan.inverse(buf.data());
    else
      col_plan.forward(buf.data());
    for (std::size_t r = 0; r < rows; ++r) g(r, std::size_t(c)) = buf[r];
  }
}

}  // namespace

void fft2d_forward(ComplexGrid& g) { fft2d_apply(g, false); }
void fft2d_inverse(ComplexGrid& g) { fft2d_apply(g, true); }

}  // namespace sqsar
