#include "sqsar/optics.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "sqsar/fft.hpp"

namespace sqsar {

namespace {

void validate_geometry(const ArrayGeometry& g) {
  if (!(g.rho > 0.0 && g.length_L > 0.0 && g.aperture_D > 0.0 &&
        g.wavelength > 0.0 && g.range_z > 0.0))
    throw std::invalid_argument("array geometry fields must be positive");
}

}  // namespace

Kernel gaussian_psf(const PsfSpec& spec) {
  if (!(spec.waist > 0.0)) throw std::invalid_argument("waist must be positive");
  if (!(spec.pitch > 0.0)) throw std::invalid_argument("pitch must be positive");
  if (spec.rows == 0 || spec.cols == 0 || spec.rows % 2 == 0 ||
      spec.cols % 2 == 0)
    throw std::invalid_argument("kernel grid dimensions must be odd");
  const double half_r = double((spec.rows - 1) / 2) * spec.pitch;
  const double half_c = double((spec.cols - 1) / 2) * spec.pitch;
  const double reach = 4.0 * spec.waist;
  if (half_r < reach * (1.0 - 1e-12) || half_c < reach * (1.0 - 1e-12))
    throw std::invalid_argument("kernel truncated: grid must cover +-4 w0");

  Kernel k;
  k.pitch = spec.pitch;
  k.samples = RealGrid(spec.rows, spec.cols);
  const double amp = 1.0 / std::sqrt(std::numbers::pi * spec.waist * spec.waist);
  const double inv2w2 = 1.0 / (2.0 * spec.waist * spec.waist);
  const long cr = long(spec.rows / 2), cc = long(spec.cols / 2);
  double energy = 0.0;
  for (std::size_t i = 0; i < spec.rows; ++i) {
    for (std::size_t j = 0; j < spec.cols; ++j) {
      double y = double(long(i) - cr) * spec.pitch;
      double x = double(long(j) - cc) * spec.pitch;
      double v = amp * std::exp(-(x * x + y * y) * inv2w2);
      k.samples(i, j) = v;
      energy += v * v;
    }
  }
  energy *= spec.pitch * spec.pitch;
  const double scale = 1.0 / std::sqrt(energy);
  for (std::size_t i = 0; i < k.samples.size(); ++i) k.samples.data()[i] *= scale;
  return k;
}

PsfSpec psf_spec_for_grid(double waist, double pitch, std::size_t max_rows,
                          std::size_t max_cols) {
  if (!(waist > 0.0 && pitch > 0.0))
    throw std::invalid_argument("waist and pitch must be positive");
  const auto radius = std::size_t(std::ceil(4.0 * waist / pitch));
  const std::size_t dim = 2 * std::max<std::size_t>(radius, 1) + 1;
  if (dim > max_rows || dim > max_cols)
    throw std::invalid_argument(
        "kernel truncated: blur waist too large for a " +
        std::to_string(max_rows) + "x" + std::to_string(max_cols) + " grid");
  return PsfSpec{waist, dim, dim, pitch};
}

Spectrum transfer_function(const Kernel& kernel, std::size_t rows,
                           std::size_t cols) {
  const std::size_t kr = kernel.samples.rows(), kc = kernel.samples.cols();
  if (kr > rows || kc > cols)
    throw std::invalid_argument("transfer grid must be at least kernel sized");

  // Embed with the kernel center at (0,0), wrapping negative offsets, so a
  // symmetric kernel transforms to a real spectrum and introduces no shift.
  ComplexGrid padded(rows, cols, {0.0, 0.0});
  const long cr = long(kr / 2), cc = long(kc / 2);
  for (std::size_t i = 0; i < kr; ++i)
    for (std::size_t j = 0; j < kc; ++j) {
      std::size_t r = std::size_t((long(i) - cr + long(rows)) % long(rows));
      std::size_t c = std::size_t((long(j) - cc + long(cols)) % long(cols));
      padded(r, c) = {kernel.samples(i, j), 0.0};
    }
  fft2d_forward(padded);

  Spectrum s;
  s.pitch = kernel.pitch;
  double sum = 0.0;
  for (std::size_t i = 0; i < kernel.samples.size(); ++i)
    sum += kernel.samples.data()[i];
  s.dc_gain = sum;
  s.values = std::move(padded);
  return s;
}

ComplexGrid unit_dc_transfer(const Kernel& kernel, std::size_t rows,
                             std::size_t cols) {
  Spectrum s = transfer_function(kernel, rows, cols);
  std::complex<double> dc = s.values(0, 0);
  if (std::abs(dc) < 1e-300)
    throw std::invalid_argument("kernel has zero DC gain");
  for (std::size_t i = 0; i < s.values.size(); ++i) s.values.data()[i] /= dc;
  return std::move(s.values);
}

double strip_map_waist(double aperture_D) {
  if (!(aperture_D > 0.0)) throw std::invalid_argument("aperture must be positive");
  return aperture_D / 2.0;
}

double synthetic_aperture(const ArrayGeometry& g) {
  validate_geometry(g);
  return g.wavelength * g.range_z / g.aperture_D;
}

double view_angle(const ArrayGeometry& g) {
  validate_geometry(g);
  double angle = g.rho * g.wavelength;
  if (angle > 1.0)
    std::cerr << "warning: view angle " << angle
              << " rad exceeds 1; paraxial model is unreliable\n";
  return angle;
}

double resolution_limit(const ArrayGeometry& g) {
  validate_geometry(g);
  return std::max(g.aperture_D / 2.0, g.wavelength * g.range_z / g.length_L);
}

CompressedProfile fresnel_compressed_psf(const ArrayGeometry& g,
                                         std::size_t n_samples,
                                         double sim_window) {
  validate_geometry(g);
  // The closed forms above tolerate sparse arrays; sampling element positions
  // does not.
  if (g.rho * g.length_L < 2.0)
    throw std::invalid_argument("array needs at least two elements (rho*L >= 2)");
  if (n_samples < 2) throw std::invalid_argument("need at least two samples");
  if (!(sim_window > 0.0)) throw std::invalid_argument("window must be positive");

  // Finest fringe of the matched-filter sum has period lambda*z/(L/2) in x;
  // demand 8 output samples per fringe before trusting peak positions.
  const double fringe = 2.0 * g.wavelength * g.range_z / g.length_L;
  const double dx = sim_window / double(n_samples - 1);
  if (dx > fringe / 8.0) {
    auto needed =
        std::size_t(std::ceil(sim_window / (fringe / 8.0))) + 1;
    throw std::invalid_argument(
        "undersampled chirp: need at least " + std::to_string(needed) +
        " samples across this window");
  }

  const auto n_ant = std::size_t(std::floor(g.rho * g.length_L)) + 1;
  const double du = 1.0 / g.rho;
  const double u0 = -0.5 * double(n_ant - 1) * du;
  const double inv_lz = 1.0 / (g.wavelength * g.range_z);

  CompressedProfile out;
  out.position.resize(n_samples);
  out.amplitude.resize(n_samples);

#pragma omp parallel for schedule(static)
  for (long i = 0; i < long(n_samples); ++i) {
    const double x = -0.5 * sim_window + double(i) * dx;
    // Source chirp exp(i pi u^2 / (lambda z)) matched against the reference
    // for image point x; the u^2 terms cancel into a pure grating sum.
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < n_ant; ++k) {
      const double u = u0 + double(k) * du;
      const double phase = std::numbers::pi * inv_lz * (2.0 * u * x - x * x);
      re += std::cos(phase);
      im += std::sin(phase);
    }
    out.position[std::size_t(i)] = x;
    out.amplitude[std::size_t(i)] = std::hypot(re, im) / double(n_ant);
  }
  return out;
}

double measure_peak_spacing(const CompressedProfile& profile,
                            double rel_floor) {
  const auto& a = profile.amplitude;
  if (a.size() < 3) return 0.0;
  double peak_power = 0.0;
  for (double v : a) peak_power = std::max(peak_power, v * v);
  if (peak_power == 0.0) return 0.0;

  struct Peak {
    double pos, power;
  };
  std::vector<Peak> peaks;
  for (std::size_t i = 1; i + 1 < a.size(); ++i) {
    double p = a[i] * a[i];
    if (a[i] > a[i - 1] && a[i] >= a[i + 1] && p >= rel_floor * peak_power)
      peaks.push_back({profile.position[i], p});
  }
  if (peaks.size() < 2) return 0.0;

  std::size_t main = 0;
  for (std::size_t i = 1; i < peaks.size(); ++i)
    if (peaks[i].power > peaks[main].power) main = i;
  double spacing = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < peaks.size(); ++i)
    if (i != main)
      spacing = std::min(spacing, std::abs(peaks[i].pos - peaks[main].pos));
  return spacing;
}

}  // namespace sqsar
