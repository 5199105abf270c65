#pragma once

#include <cstddef>
#include <vector>

#include "sqsar/grid.hpp"

namespace sqsar {

// Sampling request for a point-spread function: waist (meters), odd grid
// dimensions, and the pixel pitch shared with the object grid.
struct PsfSpec {
  double waist = 0.0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  double pitch = 0.0;
};

// Sampled amplitude PSF, normalized to unit discrete L2 energy,
// sum |h|^2 * pitch^2 = 1.
struct Kernel {
  RealGrid samples;
  double pitch = 0.0;
};

// 2-D DFT of a kernel embedded centered on a target grid. The transform is
// unnormalized, so the DC bin equals the plain sample sum of the kernel;
// that sum is kept in dc_gain for callers that need a unit-gain response.
struct Spectrum {
  ComplexGrid values;
  double pitch = 0.0;
  double dc_gain = 0.0;
};

// Uniform receiver line: element density rho (1/m), span length_L (m),
// element size aperture_D (m), wavelength and range of the scene.
struct ArrayGeometry {
  double rho = 0.0;
  double length_L = 0.0;
  double aperture_D = 0.0;
  double wavelength = 0.0;
  double range_z = 0.0;
};

// Gaussian amplitude blur h(x,y) = exp(-(x^2+y^2)/(2 w0^2)) / sqrt(pi w0^2),
// sampled at pixel centers and renormalized to unit discrete energy.
// Throws "kernel truncated" if the grid covers less than +-4 w0.
Kernel gaussian_psf(const PsfSpec& spec);

// Smallest odd grid that covers +-4 w0 at the given pitch, clamped against
// the image dimensions (throws if it cannot fit).
PsfSpec psf_spec_for_grid(double waist, double pitch, std::size_t max_rows,
                          std::size_t max_cols);

Spectrum transfer_function(const Kernel& kernel, std::size_t rows,
                           std::size_t cols);

// Transfer function scaled to unit DC gain: blurring a constant field leaves
// it unchanged. This is the response used by the forward model and its
// Wiener inverse, which must agree exactly.
ComplexGrid unit_dc_transfer(const Kernel& kernel, std::size_t rows,
                             std::size_t cols);

// Strip-map blur waist set by the element aperture alone.
double strip_map_waist(double aperture_D);

// Synthetic aperture lambda * z / D formed by the element beamwidth.
double synthetic_aperture(const ArrayGeometry& g);

// Angular spread rho * lambda subtended by one resolution cell across the
// array; warns on values above 1 rad where the small-angle model breaks.
double view_angle(const ArrayGeometry& g);

// Achievable transverse resolution max{D/2, lambda z / L}.
double resolution_limit(const ArrayGeometry& g);

// 1-D compressed point response of the sampled array: quadratic (Fresnel)
// chirp from a point source, sampled at the element positions, then matched
// filtered back onto the object plane. Returns |amplitude| at n_samples
// points across sim_window (meters, centered on the source). Grating
// replicas appear spaced rho * lambda * z apart. Throws if n_samples cannot
// resolve the finest chirp fringe (8 samples per fringe).
struct CompressedProfile {
  std::vector<double> position;
  std::vector<double> amplitude;
};
CompressedProfile fresnel_compressed_psf(const ArrayGeometry& g,
                                         std::size_t n_samples,
                                         double sim_window);

// Distance between the two strongest local maxima of a power profile;
// used to measure grating replica spacing. Peaks below rel_floor * max
// power are ignored. Returns 0 when only one peak qualifies.
double measure_peak_spacing(const CompressedProfile& profile,
                            double rel_floor = 0.5);

}  // namespace sqsar
