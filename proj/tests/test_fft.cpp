#include <cmath>
#include <complex>

#include "doctest.h"
#include "sqsar/fft.hpp"
#include "sqsar/reference.hpp"
#include "sqsar/rng.hpp"

using namespace sqsar;

namespace {

ComplexGrid random_grid(std::size_t rows, std::size_t cols,
                        std::uint64_t seed) {
  ComplexGrid g(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      g(r, c) = {rng::normal(seed, r, c, 0), rng::normal(seed, r, c, 1)};
  return g;
}

double max_abs_diff(const ComplexGrid& a, const ComplexGrid& b) {
  REQUIRE(a.same_shape(b));
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

}  // namespace

TEST_CASE("forward transform matches the naive DFT") {
  for (auto [rows, cols] : {std::pair<std::size_t, std::size_t>{16, 16},
                            {12, 20},
                            {50, 50},
                            {1, 7},
                            {200, 200}}) {
    ComplexGrid g = random_grid(rows, cols, 11);
    ComplexGrid expect = reference::dft2d(g, false);
    ComplexGrid got = g;
    fft2d_forward(got);
    CHECK(max_abs_diff(got, expect) < 1e-9 * std::sqrt(double(rows * cols)));
  }
}

TEST_CASE("inverse transform matches the naive inverse DFT") {
  ComplexGrid g = random_grid(24, 36, 3);
  ComplexGrid expect = reference::dft2d(g, true);
  ComplexGrid got = g;
  fft2d_inverse(got);
  CHECK(max_abs_diff(got, expect) < 1e-10);
}

TEST_CASE("round trip returns the input") {
  for (std::size_t n : {8u, 48u, 81u, 100u}) {
    ComplexGrid g = random_grid(n, n, n);
    ComplexGrid back = g;
    fft2d_forward(back);
    fft2d_inverse(back);
    CHECK(max_abs_diff(back, g) < 1e-10);
  }
}

TEST_CASE("DC bin is the plain sum") {
  ComplexGrid g = random_grid(10, 13, 5);
  std::complex<double> sum = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) sum += g.data()[i];
  fft2d_forward(g);
  CHECK(std::abs(g(0, 0) - sum) < 1e-10 * std::abs(sum));
}

TEST_CASE("unit impulse transforms to a flat spectrum") {
  ComplexGrid g(9, 14, {0.0, 0.0});
  g(0, 0) = {1.0, 0.0};
  fft2d_forward(g);
  for (std::size_t i = 0; i < g.size(); ++i)
    CHECK(std::abs(g.data()[i] - std::complex<double>{1.0, 0.0}) < 1e-12);
}

TEST_CASE("Parseval energy identity holds") {
  ComplexGrid g = random_grid(20, 20, 9);
  double energy_in = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    energy_in += std::norm(g.data()[i]);
  fft2d_forward(g);
  double energy_out = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    energy_out += std::norm(g.data()[i]);
  CHECK(energy_out == doctest::Approx(energy_in * g.size()).epsilon(1e-12));
}

TEST_CASE("1-D plan rejects zero length") {
  CHECK_THROWS_AS(Fft1d(0), std::invalid_argument);
}
