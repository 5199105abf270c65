#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sqsar/config.hpp"
#include "sqsar/forward.hpp"
#include "sqsar/metrics.hpp"
#include "sqsar/scene.hpp"

namespace sqsar {

inline constexpr const char* kToolVersion = "sqsar 0.1.0";

struct ObjectSpec {
  enum class Kind { chart, raster };
  Kind kind = Kind::chart;
  std::size_t rows = 200, cols = 200;
  std::size_t chart_groups = 4, chart_bars = 3;
  double chart_dark_kappa = 0.0, chart_bright_kappa = 1.0;
  std::string raster_path;
  double kappa_max = 1.0;
};

// One experiment: the object, the sweep axes, and the channel operating
// point. The photon number can be given directly (n_p_prime) or derived
// from the source (n_s or p_s_watts/carrier_hz/bandwidth_hz); in the latter
// case the loss axis attenuates the detected photons through the mean
// transmissivity.
struct ExperimentConfig {
  ObjectSpec object;
  std::vector<double> d_over_w0;
  std::vector<double> gain_db;
  std::vector<double> loss_db{0.0};
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};

  double eta = 0.0;
  std::optional<double> n_p_prime;
  std::optional<double> n_s;
  std::optional<double> n_b;
  std::optional<double> n_b_prime;

  PhotonBudget budget = PhotonBudget::per_pixel;
  bool clip = true;
  bool write_previews = false;
  double psnr_threshold_db = 13.0;
  std::vector<double> contour_levels_db;

  static ExperimentConfig from_kv(KeyValueFile& kv);
  static ExperimentConfig from_file(const std::string& path);
  // Named presets: fig3c (quantum limited grid), fig3d (thermal background
  // grid), fig4 (resolution versus loss).
  static ExperimentConfig preset(const std::string& name);
  // Loads a preset name or, failing that, a config file path.
  static ExperimentConfig load(const std::string& name_or_path);

  void validate() const;
  // Fixed-order serialization of every field; digest() hashes it, so the
  // digest changes exactly when some field changes.
  std::string canonical() const;
  std::uint64_t digest() const;
};

// Scene and channel assembly shared by the CLI and the sweep loops.
ObjectField build_object(const ExperimentConfig& cfg, double loss_db,
                         double d_over_w0);
ChannelParams resolve_channel(const ExperimentConfig& cfg, double gain_db,
                              double loss_db, double kappa_bar);

// Full sweep over d x gain x loss x seeds. Cells run in parallel; records
// come back in deterministic axis order regardless of worker count.
std::vector<SweepRecord> sweep_records(const ExperimentConfig& cfg);

struct SweepOutput {
  std::vector<SweepRecord> records;
  std::string csv_path;
  std::string manifest_path;
};
// sweep_records plus sweep.csv, optional contours.csv, and manifest.txt
// under out_dir.
SweepOutput run_sweep(const ExperimentConfig& cfg, const std::string& out_dir);

struct ResolutionRow {
  double loss_db = 0.0;
  double gain_db = 0.0;
  ResolvableSize size;
};
// Minimum resolvable size per (loss, gain) at the configured PSNR threshold;
// writes resolution.csv and manifest.txt under out_dir.
std::vector<ResolutionRow> run_resolution_curve(const ExperimentConfig& cfg,
                                                const std::string& out_dir);

void write_sweep_csv(const std::vector<SweepRecord>& records,
                     const std::string& path);
void write_resolution_csv(const std::vector<ResolutionRow>& rows,
                          const std::string& path);
void write_manifest(const ExperimentConfig& cfg, std::size_t record_count,
                    double wall_seconds, const std::string& path);

}  // namespace sqsar
