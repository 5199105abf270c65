#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sqsar/grid.hpp"

namespace sqsar {

// Complex reflectivity field f = sqrt(kappa) * exp(i theta) on a square-pixel
// grid. kappa is the per-pixel power transmissivity, theta the phase map.
struct ObjectField {
  RealGrid kappa;
  RealGrid theta;
  double extent_d = 0.0;  // physical side length of the kappa grid, meters

  std::size_t rows() const { return kappa.rows(); }
  std::size_t cols() const { return kappa.cols(); }
  double pitch() const { return extent_d / double(kappa.cols()); }

  // Serial row-major reduction so the value is reproducible bit for bit.
  double mean_kappa() const;
  double max_kappa() const;
};

// Resolution test chart: dark bars on a bright background.
//
// Layout, all in pixels with integer arithmetic: group g in [0, n_groups)
// uses bar width w_g = w0 >> g where w0 = min(rows, cols) / 16, and bar
// length 5*w_g. Groups run left to right starting at x_0 = w0 with
// x_{g+1} = x_g + 5*w_g + w0. Each group stacks a vertical element
// (bars_per_element bars, each w_g x 5w_g, spaced 2*w_g in x, top edge at
// y = w0) above a horizontal element (bars 5w_g x w_g, spaced 2*w_g in y,
// top edge at y = w0 + 6*w_g). Bars never overlap, so the dark pixel count
// is 2 * bars_per_element * 5 * w_g^2 summed over groups.
ObjectField generate_bar_chart(std::size_t rows, std::size_t cols,
                               std::size_t n_groups,
                               std::size_t bars_per_element, double dark_kappa,
                               double bright_kappa, double extent_d = 1.0);

// 8-bit raster mapping between brightness and transmissivity:
// kappa = kappa_max * (pixel / 255)^2, pixel = round(255 * sqrt(kappa/kappa_max)).
ObjectField load_raster(const std::vector<std::uint8_t>& pgm_bytes,
                        double extent_d, double kappa_max);
ObjectField load_raster_file(const std::string& path, double extent_d,
                             double kappa_max);
std::vector<std::uint8_t> save_raster(const ObjectField& field,
                                      double kappa_max);
void save_raster_file(const ObjectField& field, const std::string& path,
                      double kappa_max);

// Same grids, new physical size (the sweep's size axis: object size d in
// units of the blur waist).
ObjectField rescale_extent(const ObjectField& field, double new_extent_d);

}  // namespace sqsar
