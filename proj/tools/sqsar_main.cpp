// sqsar: simulate squeezed-receiver synthetic-aperture imaging, reconstruct,
// and sweep parameter grids. Exit codes: 0 ok, 1 bad input, 2 runtime failure.
#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>

#include "CLI11.hpp"
#include "sqsar/channel.hpp"
#include "sqsar/forward.hpp"
#include "sqsar/harness.hpp"
#include "sqsar/io.hpp"
#include "sqsar/metrics.hpp"
#include "sqsar/optics.hpp"
#include "sqsar/restore.hpp"
#include "sqsar/scene.hpp"

namespace {

using namespace sqsar;

// First point of each sweep axis; single-shot subcommands operate there.
struct OperatingPoint {
  ObjectField object;
  Kernel kernel;
  PsfSpec psf;
  ChannelParams params;
};

OperatingPoint operating_point(const ExperimentConfig& cfg) {
  OperatingPoint pt;
  double d = cfg.d_over_w0.front();
  double loss = cfg.loss_db.front();
  pt.object = build_object(cfg, loss, d);
  pt.psf = psf_spec_for_grid(1.0, pt.object.pitch(), pt.object.rows(),
                             pt.object.cols());
  pt.kernel = gaussian_psf(pt.psf);
  pt.params = resolve_channel(cfg, cfg.gain_db.front(), loss,
                              pt.object.mean_kappa());
  return pt;
}

int cmd_chart(const std::string& config, const std::string& out) {
  ExperimentConfig cfg = ExperimentConfig::load(config);
  // Render the unattenuated target; channel loss never belongs in the PGM.
  ObjectField obj = build_object(cfg, 0.0, cfg.d_over_w0.front());
  save_raster_file(obj, out, cfg.object.kappa_max);
  std::printf("wrote %s (%zux%zu, mean kappa %.6g)\n", out.c_str(), obj.rows(),
              obj.cols(), obj.mean_kappa());
  return 0;
}

int cmd_simulate(const std::string& config, std::uint64_t seed,
                 const std::string& out_dir) {
  ExperimentConfig cfg = ExperimentConfig::load(config);
  std::filesystem::create_directories(out_dir);
  OperatingPoint pt = operating_point(cfg);
  QuadratureImage img =
      simulate(pt.object, pt.psf, pt.params,
               MeasurementPolicy::amplitude_compensated(), seed, cfg.budget);
  save_quadrature(img, out_dir + "/quadrature.bin");
  save_preview_pgm(img.x_readout, out_dir + "/quadrature_preview.pgm");
  save_kernel_pgm(pt.kernel, out_dir + "/kernel.pgm");
  save_raster_file(pt.object, out_dir + "/truth.pgm", cfg.object.kappa_max);
  std::printf("wrote %s/quadrature.bin (seed %llu, n_p' %.6g, var %.6g)\n",
              out_dir.c_str(), static_cast<unsigned long long>(seed),
              pt.params.n_p_prime, readout_variance(pt.params));
  return 0;
}

int cmd_reconstruct(const std::string& config, const std::string& in,
                    const std::string& out_dir, double nsr_flag,
                    bool nsr_given) {
  ExperimentConfig cfg = ExperimentConfig::load(config);
  std::filesystem::create_directories(out_dir);
  QuadratureImage img = load_quadrature(in);
  OperatingPoint pt = operating_point(cfg);
  double nsr = nsr_given
                   ? nsr_flag
                   : default_nsr(img.params, img.budget, img.x_readout.size());
  WienerOptions opts;
  opts.clip = cfg.clip;
  Reconstruction rec = wiener_deconvolve(img, pt.kernel, nsr, opts);
  save_preview_pgm(rec.f_tilde, out_dir + "/recon.pgm");
  PsnrValue pv = psnr(rec.f_tilde, pt.object);
  std::printf("wrote %s/recon.pgm (nsr %.6g, psnr %.4f dB%s)\n",
              out_dir.c_str(), nsr, pv.db, pv.saturated ? ", saturated" : "");
  return 0;
}

int cmd_sweep(const std::string& config, const std::string& out_dir) {
  ExperimentConfig cfg = ExperimentConfig::load(config);
  SweepOutput out = run_sweep(cfg, out_dir);
  std::printf("wrote %s (%zu records)\n", out.csv_path.c_str(),
              out.records.size());
  return 0;
}

int cmd_resolution(const std::string& config, const std::string& out_dir) {
  ExperimentConfig cfg = ExperimentConfig::load(config);
  auto rows = run_resolution_curve(cfg, out_dir);
  std::printf("wrote %s/resolution.csv (%zu rows)\n", out_dir.c_str(),
              rows.size());
  return 0;
}

int cmd_array_analyze(double rho, double length, double aperture,
                      double lambda, double range, const std::string& profile,
                      std::size_t samples, double window) {
  ArrayGeometry geom{rho, length, aperture, lambda, range};
  std::printf("view_angle_rad = %.12g\n", view_angle(geom));
  std::printf("resolution_limit_m = %.12g\n", resolution_limit(geom));
  std::printf("alias_spacing_m = %.12g\n", rho * lambda * range);
  std::printf("synthetic_aperture_m = %.12g\n", synthetic_aperture(geom));
  if (!profile.empty()) {
    if (window <= 0.0) window = 4.0 * rho * lambda * range;
    CompressedProfile p = fresnel_compressed_psf(geom, samples, window);
    save_profile_csv(p, profile);
    std::printf("wrote %s (%zu samples)\n", profile.c_str(),
                p.position.size());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"squeezed-receiver synthetic-aperture imaging simulator"};
  app.require_subcommand(1);

  std::string config, out = "out", chart_out = "chart.pgm", in, profile_out;
  std::uint64_t seed = 1;
  double nsr = 0.0;
  double rho = 0.0, length = 0.0, aperture = 0.0, lambda = 0.0, range = 0.0;
  std::size_t samples = 4096;
  double window = 0.0;

  auto* chart = app.add_subcommand("chart", "render the target to a PGM");
  chart->add_option("--config", config, "preset name or config path")
      ->required();
  chart->add_option("--out", chart_out, "output PGM path");

  auto* simulate =
      app.add_subcommand("simulate", "simulate one quadrature image");
  simulate->add_option("--config", config)->required();
  simulate->add_option("--seed", seed, "noise seed");
  simulate->add_option("--out", out, "output directory");

  auto* reconstruct =
      app.add_subcommand("reconstruct", "Wiener-deconvolve a quadrature image");
  reconstruct->add_option("--config", config)->required();
  reconstruct->add_option("--in", in, "quadrature binary")->required();
  reconstruct->add_option("--out", out, "output directory");
  auto* nsr_opt =
      reconstruct->add_option("--nsr", nsr, "override the noise-to-signal ratio");

  auto* sweep = app.add_subcommand("sweep", "run the full parameter sweep");
  sweep->add_option("--config", config)->required();
  sweep->add_option("--out", out, "output directory");

  auto* resolution = app.add_subcommand(
      "resolution", "minimum resolvable size per (loss, gain)");
  resolution->add_option("--config", config)->required();
  resolution->add_option("--out", out, "output directory");

  auto* array = app.add_subcommand(
      "array-analyze", "antenna-array digitization figures of merit");
  array->add_option("--rho", rho, "antenna density (1/m)")->required();
  array->add_option("--L", length, "array length (m)")->required();
  array->add_option("--D", aperture, "physical aperture (m)")->required();
  array->add_option("--lambda", lambda, "wavelength (m)")->required();
  array->add_option("--z", range, "range (m)")->required();
  array->add_option("--profile-out", profile_out,
                    "write the compressed profile CSV here");
  array->add_option("--samples", samples, "profile sample count");
  array->add_option("--window", window,
                    "profile window width (m, default 4 alias periods)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (chart->parsed()) return cmd_chart(config, chart_out);
    if (simulate->parsed()) return cmd_simulate(config, seed, out);
    if (reconstruct->parsed())
      return cmd_reconstruct(config, in, out, nsr, nsr_opt->count() > 0);
    if (sweep->parsed()) return cmd_sweep(config, out);
    if (resolution->parsed()) return cmd_resolution(config, out);
    if (array->parsed())
      return cmd_array_analyze(rho, length, aperture, lambda, range,
                               profile_out, samples, window);
  } catch (const std::logic_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
