#pragma once

#include <cstdint>

#include "sqsar/channel.hpp"
#include "sqsar/grid.hpp"
#include "sqsar/optics.hpp"
#include "sqsar/scene.hpp"

namespace sqsar {

// How n_p_prime is spent: per pixel (default), or split across the image.
enum class PhotonBudget { per_pixel, whole_image };

// Local oscillator phase program for the homodyne readout.
struct MeasurementPolicy {
  enum class Mode { amplitude_compensated, phase_quadrature, fixed_phase };
  Mode mode = Mode::amplitude_compensated;
  double fixed_phase_rad = 0.0;

  // Compensation angle theta_C for a pixel with object phase theta.
  double compensation(double theta) const;

  static MeasurementPolicy amplitude_compensated() { return {}; }
  static MeasurementPolicy phase_quadrature() {
    return {Mode::phase_quadrature, 0.0};
  }
  static MeasurementPolicy fixed_phase(double theta_c) {
    return {Mode::fixed_phase, theta_c};
  }
};

// One simulated homodyne frame plus everything needed to invert it.
struct QuadratureImage {
  RealGrid x_readout;
  ChannelParams params;
  PhotonBudget budget = PhotonBudget::per_pixel;
  std::uint64_t seed = 0;
  double pitch = 0.0;
};

// Amplitude applied to sqrt(kappa): sqrt(n_p_prime / kappa_bar), divided by
// the pixel count under the whole-image budget.
double amplitude_scale(const ChannelParams& p, PhotonBudget budget,
                       std::size_t pixel_count);

// Noise-free readout A * blur(sqrt(kappa) cos(theta + theta_C)). The blur is
// circular at the image size with unit DC gain, so a uniform field passes
// through unchanged and the Wiener inverse can cancel it exactly.
RealGrid mean_image(const ObjectField& obj, const Kernel& kernel,
                    const ChannelParams& p, const MeasurementPolicy& policy,
                    PhotonBudget budget = PhotonBudget::per_pixel);

// Adds i.i.d. Gaussian readout noise of variance readout_variance(p) to each
// pixel, drawn from the counter stream keyed by (seed, row, col).
QuadratureImage add_noise(const RealGrid& mean, const ChannelParams& p,
                          PhotonBudget budget, double pitch,
                          std::uint64_t seed);

QuadratureImage simulate(const ObjectField& obj, const PsfSpec& psf,
                         const ChannelParams& p,
                         const MeasurementPolicy& policy, std::uint64_t seed,
                         PhotonBudget budget = PhotonBudget::per_pixel);

}  // namespace sqsar
