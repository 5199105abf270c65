#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

#include "sqsar/grid.hpp"

namespace sqsar {

// Planned 1-D complex DFT of a fixed length. Power-of-two lengths run an
// iterative radix-2 transform; everything else goes through Bluestein's
// chirp-z reduction onto a power-of-two convolution. Plans are immutable
// after construction, so one plan can serve many threads at once.
class Fft1d {
 public:
  explicit Fft1d(std::size_t n);

  std::size_t length() const { return n_; }

  // Unnormalized forward transform, in place.
  void forward(std::complex<double>* data) const;
  // Inverse transform including the 1/n factor, in place.
  void inverse(std::complex<double>* data) const;

 private:
  void radix2(std::complex<double>* data) const;
  void bluestein(std::complex<double>* data) const;

  std::size_t n_ = 0;
  bool pow2_ = false;
  std::vector<std::complex<double>> twiddle_;  // radix-2 stage factors
  // Bluestein state: chirp c[k] = exp(-i pi k^2 / n) and the padded spectrum
  // of its conjugate, precomputed at plan time.
  std::size_t m_ = 0;
  std::vector<std::complex<double>> chirp_;
  std::vector<std::complex<double>> bspec_;
  std::unique_ptr<Fft1d> sub_;
};

// In-place 2-D transforms, rows then columns. Each line is transformed by one
// thread from start to finish, so results are bitwise independent of the
// worker count.
void fft2d_forward(ComplexGrid& g);
void fft2d_inverse(ComplexGrid& g);

}  // namespace sqsar
