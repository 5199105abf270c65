#include "sqsar/reference.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace sqsar {
namespace reference {

namespace {

std::vector<std::complex<double>> dft_line(
    const std::vector<std::complex<double>>& x, bool inverse) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n);
  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
      double a = sign * 2.0 * std::numbers::pi * double((k * j) % n) / double(n);
      acc += x[j] * std::complex<double>{std::cos(a), std::sin(a)};
    }
    out[k] = inverse ? acc / double(n) : acc;
  }
  return out;
}

}  // namespace

ComplexGrid dft2d(const ComplexGrid& in, bool inverse) {
  const std::size_t rows = in.rows(), cols = in.cols();
  ComplexGrid out = in;
  std::vector<std::complex<double>> line;
  for (std::size_t r = 0; r < rows; ++r) {
    line.assign(out.row(r), out.row(r) + cols);
    auto t = dft_line(line, inverse);
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = t[c];
  }
  for (std::size_t c = 0; c < cols; ++c) {
    line.resize(rows);
    for (std::size_t r = 0; r < rows; ++r) line[r] = out(r, c);
    auto t = dft_line(line, inverse);
    for (std::size_t r = 0; r < rows; ++r) out(r, c) = t[r];
  }
  return out;
}

RealGrid blur_circular(const RealGrid& img, const Kernel& kernel) {
  const std::size_t rows = img.rows(), cols = img.cols();
  const std::size_t kr = kernel.samples.rows(), kc = kernel.samples.cols();
  if (kr > rows || kc > cols)
    throw std::invalid_argument("kernel larger than image");

  double sum = 0.0;
  for (std::size_t i = 0; i < kernel.samples.size(); ++i)
    sum += kernel.samples.data()[i];
  if (sum == 0.0) throw std::invalid_argument("kernel has zero DC gain");

  const long cr = long(kr / 2), cc = long(kc / 2);
  RealGrid out(rows, cols, 0.0);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      double acc = 0.0;
      for (std::size_t i = 0; i < kr; ++i)
        for (std::size_t j = 0; j < kc; ++j) {
          long sr = (long(r) - (long(i) - cr)) % long(rows);
          long sc = (long(c) - (long(j) - cc)) % long(cols);
          if (sr < 0) sr += long(rows);
          if (sc < 0) sc += long(cols);
          acc += kernel.samples(i, j) *
                 img(std::size_t(sr), std::size_t(sc));
        }
      out(r, c) = acc / sum;
    }
  return out;
}

}  // namespace reference
}  // namespace sqsar
