#include "sqsar/forward.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sqsar/fft.hpp"
#include "sqsar/rng.hpp"

namespace sqsar {

double MeasurementPolicy::compensation(double theta) const {
  switch (mode) {
    case Mode::amplitude_compensated:
      return -theta;
    case Mode::phase_quadrature:
      return -theta + std::numbers::pi / 2.0;
    case Mode::fixed_phase:
      return fixed_phase_rad;
  }
  throw std::logic_error("unknown measurement mode");
}

double amplitude_scale(const ChannelParams& p, PhotonBudget budget,
                       std::size_t pixel_count) {
  if (pixel_count == 0) throw std::invalid_argument("empty image");
  double budgeted = p.n_p_prime;
  if (budget == PhotonBudget::whole_image) budgeted /= double(pixel_count);
  return std::sqrt(budgeted / p.kappa_bar);
}

RealGrid mean_image(const ObjectField& obj, const Kernel& kernel,
                    const ChannelParams& p, const MeasurementPolicy& policy,
                    PhotonBudget budget) {
  const std::size_t rows = obj.rows(), cols = obj.cols();
  if (!obj.kappa.same_shape(obj.theta))
    throw std::invalid_argument("kappa and theta grids must match");
  double pitch = obj.pitch();
  if (std::abs(kernel.pitch - pitch) > 1e-9 * pitch)
    throw std::invalid_argument("kernel pitch must match the object pitch");

  const double a = amplitude_scale(p, budget, rows * cols);
  ComplexGrid field(rows, cols);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < long(rows); ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      auto r = std::size_t(i);
      double theta = obj.theta(r, j);
      double g = std::sqrt(obj.kappa(r, j)) *
                 std::cos(theta + policy.compensation(theta));
      field(r, j) = {g, 0.0};
    }

  ComplexGrid h = unit_dc_transfer(kernel, rows, cols);
  fft2d_forward(field);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < long(field.size()); ++i)
    field.data()[i] *= h.data()[std::size_t(i)];
  fft2d_inverse(field);

  RealGrid out(rows, cols);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < long(out.size()); ++i)
    out.data()[i] = a * field.data()[std::size_t(i)].real();
  return out;
}

QuadratureImage add_noise(const RealGrid& mean, const ChannelParams& p,
                          PhotonBudget budget, double pitch,
                          std::uint64_t seed) {
  const double sigma = std::sqrt(readout_variance(p));
  QuadratureImage img;
  img.params = p;
  img.budget = budget;
  img.seed = seed;
  img.pitch = pitch;
  img.x_readout = RealGrid(mean.rows(), mean.cols());
  const std::size_t cols = mean.cols();
#pragma omp parallel for schedule(static)
  for (long i = 0; i < long(mean.rows()); ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      auto r = std::size_t(i);
      img.x_readout(r, j) =
          mean(r, j) +
          sigma * rng::normal(seed, std::uint32_t(r), std::uint32_t(j));
    }
  return img;
}

QuadratureImage simulate(const ObjectField& obj, const PsfSpec& psf,
                         const ChannelParams& p,
                         const MeasurementPolicy& policy, std::uint64_t seed,
                         PhotonBudget budget) {
  Kernel kernel = gaussian_psf(psf);
  RealGrid mean = mean_image(obj, kernel, p, policy, budget);
  return add_noise(mean, p, budget, obj.pitch(), seed);
}

}  // namespace sqsar
