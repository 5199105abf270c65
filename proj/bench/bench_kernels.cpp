// Timing comparison of the OpenMP kernels against the serial reference
// implementations. Run: ./bench_kernels [grid_size]
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include "sqsar/fft.hpp"
#include "sqsar/forward.hpp"
#include "sqsar/optics.hpp"
#include "sqsar/reference.hpp"
#include "sqsar/restore.hpp"
#include "sqsar/rng.hpp"
#include "sqsar/scene.hpp"

using namespace sqsar;

namespace {

double time_ms(int reps, const std::function<void()>& fn) {
  fn();  // warm up
  auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) fn();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 200;
  std::printf("grid %zux%zu, omp_get_max_threads() = %d\n\n", n, n,
              omp_get_max_threads());

  ObjectField obj = generate_bar_chart(n, n, 3, 3, 0.0, 1.0, 40.0);
  Kernel kernel =
      gaussian_psf(psf_spec_for_grid(1.0, obj.pitch(), n, n));
  ChannelParams p = ChannelParams::from_detected(100.0, 0.1, 1e-9, 10.0,
                                                 obj.mean_kappa());
  auto policy = MeasurementPolicy::amplitude_compensated();

  ComplexGrid spec(n, n);
  for (std::size_t i = 0; i < spec.size(); ++i)
    spec.data()[i] = {rng::uniform(7, i / n, i % n), 0.0};

  double t_fft = time_ms(10, [&] {
    ComplexGrid g = spec;
    fft2d_forward(g);
  });
  // The naive transform is O(n^3); keep reps low.
  double t_dft = time_ms(1, [&] {
    ComplexGrid g = spec;
    g = reference::dft2d(g, false);
  });
  std::printf("%-34s %10.3f ms\n", "fft2d_forward (OpenMP)", t_fft);
  std::printf("%-34s %10.3f ms\n\n", "reference::dft2d (serial)", t_dft);

  double t_blur_fft = time_ms(5, [&] {
    (void)mean_image(obj, kernel, p, policy);
  });
  double t_blur_direct = time_ms(1, [&] {
    (void)reference::blur_circular(obj.kappa, kernel);
  });
  std::printf("%-34s %10.3f ms\n", "blur via FFT (OpenMP)", t_blur_fft);
  std::printf("%-34s %10.3f ms\n\n", "reference::blur_circular (serial)",
              t_blur_direct);

  RealGrid mean = mean_image(obj, kernel, p, policy);
  double t_noise = time_ms(10, [&] {
    (void)add_noise(mean, p, PhotonBudget::per_pixel, obj.pitch(), 42);
  });
  std::printf("%-34s %10.3f ms\n\n", "add_noise (counter RNG)", t_noise);

  double nsr = default_nsr(p, PhotonBudget::per_pixel, n * n);
  QuadratureImage img =
      add_noise(mean, p, PhotonBudget::per_pixel, obj.pitch(), 42);
  double t_cell = time_ms(5, [&] {
    (void)wiener_deconvolve(img, kernel, nsr);
  });
  std::printf("%-34s %10.3f ms\n", "wiener_deconvolve (full cell)", t_cell);
  return 0;
}
