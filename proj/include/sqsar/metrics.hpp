#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "sqsar/grid.hpp"
#include "sqsar/restore.hpp"
#include "sqsar/scene.hpp"

namespace sqsar {

struct PsnrValue {
  double db = 0.0;
  bool saturated = false;  // zero reconstruction error; db holds +infinity
};

// 10 log10( max|f|^2 / mean (f_tilde - f)^2 ) against the amplitude truth
// f = sqrt(kappa). Serial reduction for reproducibility.
PsnrValue psnr(const RealGrid& f_tilde, const ObjectField& truth);
PsnrValue psnr(const Reconstruction& rec, const ObjectField& truth);

// Recognizability cut, inclusive at the threshold.
bool resolvable(double psnr_db, double threshold_db = 13.0);

// One sweep cell result; mirrors the CSV schema
// d_over_w0,gain_db,n_b_prime,loss_db,seed,psnr_db.
struct SweepRecord {
  double d_over_w0 = 0.0;
  double gain_db = 0.0;
  double n_b_prime = 0.0;
  double loss_db = 0.0;
  std::uint64_t seed = 0;
  double psnr_db = 0.0;
  bool saturated = false;
};

struct ResolvableSize {
  enum class Status { found, unresolvable_in_range, resolvable_everywhere };
  Status status = Status::unresolvable_in_range;
  double d_min_over_w0 = 0.0;
};

// Smallest object size whose PSNR reaches the threshold: first crossing from
// below, interpolated linearly in (log10 d, PSNR). Inputs are per-size
// aggregated PSNR values; sizes need not be presorted.
ResolvableSize min_resolvable_size(
    std::vector<std::pair<double, double>> psnr_by_size, double threshold_db);

// Same, starting from raw sweep records at fixed gain/background/loss:
// seed-averages the PSNR (arithmetic mean in dB) per size first. Saturated
// records are dropped with a warning; fewer than 3 seeds per size warns too.
ResolvableSize min_resolvable_size(std::span<const SweepRecord> records,
                                   double threshold_db);

// Iso-PSNR polylines over the (d_over_w0, gain_db) plane by marching
// squares with linear edge interpolation. `values` holds seed-averaged PSNR,
// rows indexed by gain, cols by d.
struct ContourPolyline {
  double level_db = 0.0;
  std::vector<std::array<double, 2>> vertices;  // (d_over_w0, gain_db)
};
std::vector<ContourPolyline> psnr_contours(const std::vector<double>& d_axis,
                                           const std::vector<double>& gain_axis,
                                           const RealGrid& values,
                                           const std::vector<double>& levels);

}  // namespace sqsar
