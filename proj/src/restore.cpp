#include "sqsar/restore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sqsar/fft.hpp"

namespace sqsar {

Reconstruction wiener_deconvolve(const QuadratureImage& img,
                                 const Kernel& kernel, double nsr,
                                 const WienerOptions& opts) {
  const std::size_t rows = img.x_readout.rows(), cols = img.x_readout.cols();
  if (std::abs(kernel.pitch - img.pitch) > 1e-9 * img.pitch)
    throw std::invalid_argument("kernel pitch must match the image pitch");
  return wiener_deconvolve(img, unit_dc_transfer(kernel, rows, cols), nsr,
                           opts);
}

Reconstruction wiener_deconvolve(const QuadratureImage& img,
                                 const ComplexGrid& h, double nsr,
                                 const WienerOptions& opts) {
  if (!(nsr >= 0.0)) throw std::invalid_argument("nsr must be >= 0");
  if (!(opts.clip_kappa_max > 0.0))
    throw std::invalid_argument("clip ceiling must be positive");
  const std::size_t rows = img.x_readout.rows(), cols = img.x_readout.cols();
  if (h.rows() != rows || h.cols() != cols)
    throw std::invalid_argument("transfer function shape must match the image");

  if (nsr == 0.0) {
    double hmin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < h.size(); ++i)
      hmin = std::min(hmin, std::abs(h.data()[i]));
    if (hmin < 1e-12)
      throw std::domain_error("singular inverse; supply nsr > 0");
  }

  ComplexGrid spec(rows, cols);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < long(spec.size()); ++i)
    spec.data()[i] = {img.x_readout.data()[i], 0.0};
  fft2d_forward(spec);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < long(spec.size()); ++i) {
    std::complex<double> hv = h.data()[std::size_t(i)];
    spec.data()[i] *= std::conj(hv) / (std::norm(hv) + nsr);
  }
  fft2d_inverse(spec);

  const double a = amplitude_scale(img.params, img.budget, rows * cols);
  if (!(a > 0.0)) throw std::domain_error("zero amplitude scale; nothing to invert");
  const double ceiling = std::sqrt(opts.clip_kappa_max);

  Reconstruction rec;
  rec.nsr_used = nsr;
  rec.clip_applied = opts.clip;
  rec.f_tilde = RealGrid(rows, cols);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < long(spec.size()); ++i) {
    double v = spec.data()[i].real() / a;
    if (opts.clip) v = std::clamp(v, 0.0, ceiling);
    rec.f_tilde.data()[i] = v;
  }
  return rec;
}

double default_nsr(const ChannelParams& p, PhotonBudget budget,
                   std::size_t pixel_count) {
  double a = amplitude_scale(p, budget, pixel_count);
  double signal_power = a * a * p.kappa_bar;
  if (!(signal_power > 0.0))
    throw std::domain_error("zero signal power; nsr undefined");
  return readout_variance(p) / signal_power;
}

}  // namespace sqsar
