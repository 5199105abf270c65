#pragma once

#include "sqsar/forward.hpp"
#include "sqsar/grid.hpp"
#include "sqsar/optics.hpp"

namespace sqsar {

// Wiener estimate of sqrt(kappa), back in object units.
struct Reconstruction {
  RealGrid f_tilde;
  double nsr_used = 0.0;
  bool clip_applied = false;
};

struct WienerOptions {
  bool clip = true;
  double clip_kappa_max = 1.0;  // estimates clamped to [0, sqrt(clip_kappa_max)]
};

// F_tilde = H* Y / (|H|^2 + nsr), inverse transformed and divided by the
// forward amplitude scale. H is the same unit-DC response the forward model
// applied, so nsr = 0 on noise-free input inverts the blur exactly.
// nsr = 0 with a near-singular response (|H| < 1e-12 anywhere) throws.
Reconstruction wiener_deconvolve(const QuadratureImage& img,
                                 const Kernel& kernel, double nsr,
                                 const WienerOptions& opts = {});

// Same filter with the unit-DC transfer function already in hand; sweeps
// reuse one transform per kernel instead of rebuilding it per cell.
Reconstruction wiener_deconvolve(const QuadratureImage& img,
                                 const ComplexGrid& unit_dc_h, double nsr,
                                 const WienerOptions& opts = {});

// Flat-spectrum noise-to-signal ratio: readout variance over the mean signal
// power A^2 kappa_bar. Throws when the signal power is zero.
double default_nsr(const ChannelParams& p, PhotonBudget budget,
                   std::size_t pixel_count);

}  // namespace sqsar
