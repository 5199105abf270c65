#include "sqsar/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "sqsar/channel.hpp"
#include "sqsar/io.hpp"
#include "sqsar/optics.hpp"
#include "sqsar/restore.hpp"

namespace sqsar {

namespace {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? "," : "") + fmt17(v[i]);
  return s;
}

std::string join(const std::vector<std::uint64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string opt_str(const std::optional<double>& v) {
  return v ? fmt17(*v) : "none";
}

const char* kPresetFig3c = R"(# Quantum-limited PSNR grid: object size x squeezing gain.
object = chart
object_rows = 200
object_cols = 200
chart_groups = 4
chart_bars = 3
d_over_w0 = 10,16,25,40,63,100
gain_db = 0,4,8,12,16,20
loss_db = 100
eta = 1e-9
n_p_prime = 100
n_b_prime = 0
seeds = 1,2,3,4,5
)";

const char* kPresetFig3d = R"(# Same grid against leaked thermal background.
object = chart
object_rows = 200
object_cols = 200
chart_groups = 4
chart_bars = 3
d_over_w0 = 10,16,25,40,63,100
gain_db = 0,4,8,12,16,20
loss_db = 100
eta = 1e-9
n_p_prime = 100
n_b_prime = 0.1
seeds = 1,2,3,4,5
)";

const char* kPresetFig4 = R"(# Minimum resolvable size versus penetration loss.
# Detected photons follow the mean transmissivity: n_p' = eta kappa_bar n_s.
# The axis tops out just below the loss where the unsqueezed run stops resolving.
object = chart
object_rows = 200
object_cols = 200
chart_groups = 4
chart_bars = 3
d_over_w0 = 10,13,16,20,25,32,40,50,63,79,100,126,158
gain_db = 0,10,100
loss_db = 90,95,100,105,110,115,117
eta = 1e-9
n_s = 1e21
n_b = 1e8
seeds = 1,2,3,4,5
)";

}  // namespace

ExperimentConfig ExperimentConfig::from_kv(KeyValueFile& kv) {
  ExperimentConfig c;

  std::string kind = kv.get_or<std::string>("object", "chart");
  if (kind == "chart") {
    c.object.kind = ObjectSpec::Kind::chart;
  } else if (kind == "raster") {
    c.object.kind = ObjectSpec::Kind::raster;
    c.object.raster_path = kv.get_string("raster_path");
  } else {
    throw std::invalid_argument("object must be 'chart' or 'raster'");
  }
  c.object.rows = kv.get_or<std::uint64_t>("object_rows", 200);
  c.object.cols = kv.get_or<std::uint64_t>("object_cols", 200);
  c.object.chart_groups = kv.get_or<std::uint64_t>("chart_groups", 4);
  c.object.chart_bars = kv.get_or<std::uint64_t>("chart_bars", 3);
  c.object.chart_dark_kappa = kv.get_or<double>("chart_dark_kappa", 0.0);
  c.object.chart_bright_kappa = kv.get_or<double>("chart_bright_kappa", 1.0);
  c.object.kappa_max = kv.get_or<double>("kappa_max", 1.0);

  c.d_over_w0 = kv.get_double_list("d_over_w0");
  c.gain_db = kv.get_double_list("gain_db");
  if (kv.has("loss_db")) c.loss_db = kv.get_double_list("loss_db");
  if (kv.has("seeds")) c.seeds = kv.get_uint_list("seeds");

  if (kv.has("eta")) {
    c.eta = kv.get_double("eta");
  } else if (kv.has("v_pi_volts")) {
    auto t = TransducerSpec::from_hz(
        kv.get_double("v_pi_volts"), kv.get_double("p_in_watts"),
        kv.get_double("impedance_ohms"), kv.get_double("carrier_hz"),
        kv.get_double("optical_hz"));
    c.eta = transduction_efficiency(t);
  } else {
    throw std::invalid_argument(
        "config needs eta or the transducer keys "
        "(v_pi_volts, p_in_watts, impedance_ohms, carrier_hz, optical_hz)");
  }

  int photon_routes = int(kv.has("n_p_prime")) + int(kv.has("n_s")) +
                      int(kv.has("p_s_watts"));
  if (photon_routes != 1)
    throw std::invalid_argument(
        "give exactly one of n_p_prime, n_s, or p_s_watts");
  if (kv.has("n_p_prime")) {
    c.n_p_prime = kv.get_double("n_p_prime");
  } else if (kv.has("n_s")) {
    c.n_s = kv.get_double("n_s");
  } else {
    c.n_s = source_photons(SourceParams::from_hz(kv.get_double("p_s_watts"),
                                                 kv.get_double("carrier_hz"),
                                                 kv.get_double("bandwidth_hz")));
  }

  if (kv.has("n_b") && kv.has("n_b_prime"))
    throw std::invalid_argument("give n_b or n_b_prime, not both");
  if (kv.has("n_b"))
    c.n_b = kv.get_double("n_b");
  else if (kv.has("n_b_prime"))
    c.n_b_prime = kv.get_double("n_b_prime");
  else
    c.n_b_prime = 0.0;

  std::string budget = kv.get_or<std::string>("photon_budget", "per_pixel");
  if (budget == "per_pixel")
    c.budget = PhotonBudget::per_pixel;
  else if (budget == "whole_image")
    c.budget = PhotonBudget::whole_image;
  else
    throw std::invalid_argument(
        "photon_budget must be per_pixel or whole_image");

  c.clip = kv.get_or<bool>("clip", true);
  c.write_previews = kv.get_or<bool>("write_previews", false);
  c.psnr_threshold_db = kv.get_or<double>("psnr_threshold_db", 13.0);
  if (kv.has("contour_levels_db"))
    c.contour_levels_db = kv.get_double_list("contour_levels_db");

  kv.reject_unknown_keys();
  c.validate();
  return c;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  auto kv = KeyValueFile::parse_file(path);
  return from_kv(kv);
}

ExperimentConfig ExperimentConfig::preset(const std::string& name) {
  const char* text = nullptr;
  if (name == "fig3c")
    text = kPresetFig3c;
  else if (name == "fig3d")
    text = kPresetFig3d;
  else if (name == "fig4")
    text = kPresetFig4;
  else
    throw std::invalid_argument("unknown preset '" + name +
                                "' (have fig3c, fig3d, fig4)");
  auto kv = KeyValueFile::parse(text);
  return from_kv(kv);
}

ExperimentConfig ExperimentConfig::load(const std::string& name_or_path) {
  std::string name = name_or_path;
  if (name.rfind("preset_", 0) == 0) name = name.substr(7);
  if (name == "fig3c" || name == "fig3d" || name == "fig4")
    return preset(name);
  return from_file(name_or_path);
}

void ExperimentConfig::validate() const {
  if (object.rows == 0 || object.cols == 0)
    throw std::invalid_argument("object dimensions must be positive");
  if (!(object.kappa_max > 0.0 && object.kappa_max <= 1.0))
    throw std::invalid_argument("kappa_max must be in (0, 1]");
  if (object.kind == ObjectSpec::Kind::raster && object.raster_path.empty())
    throw std::invalid_argument("raster objects need raster_path");

  auto check_axis = [](const std::vector<double>& axis, const char* name,
                       bool positive) {
    if (axis.empty())
      throw std::invalid_argument(std::string("sweep axis '") + name +
                                  "' is empty");
    for (std::size_t i = 0; i < axis.size(); ++i) {
      if (positive && !(axis[i] > 0.0))
        throw std::invalid_argument(std::string("axis '") + name +
                                    "' must be positive");
      if (!positive && !(axis[i] >= 0.0))
        throw std::invalid_argument(std::string("axis '") + name +
                                    "' must be >= 0");
      if (i > 0 && !(axis[i] > axis[i - 1]))
        throw std::invalid_argument(std::string("axis '") + name +
                                    "' must be strictly increasing");
    }
  };
  check_axis(d_over_w0, "d_over_w0", true);
  check_axis(gain_db, "gain_db", false);
  check_axis(loss_db, "loss_db", false);

  if (seeds.empty()) throw std::invalid_argument("seed list is empty");
  std::set<std::uint64_t> unique_seeds(seeds.begin(), seeds.end());
  if (unique_seeds.size() != seeds.size())
    throw std::invalid_argument("seed list has duplicates");

  if (!(eta > 0.0 && eta <= 1.0))
    throw std::invalid_argument("eta must be in (0, 1]");
  if (bool(n_p_prime) == bool(n_s))
    throw std::invalid_argument("need exactly one photon route");
  if (n_p_prime && !(*n_p_prime >= 0.0))
    throw std::invalid_argument("n_p_prime must be >= 0");
  if (n_s && !(*n_s >= 0.0)) throw std::invalid_argument("n_s must be >= 0");
  if (bool(n_b) == bool(n_b_prime))
    throw std::invalid_argument("need exactly one background route");
  if (n_b && !(*n_b >= 0.0)) throw std::invalid_argument("n_b must be >= 0");
  if (n_b_prime && !(*n_b_prime >= 0.0))
    throw std::invalid_argument("n_b_prime must be >= 0");
  if (!std::isfinite(psnr_threshold_db))
    throw std::invalid_argument("psnr threshold must be finite");
}

std::string ExperimentConfig::canonical() const {
  std::ostringstream ss;
  ss << "object="
     << (object.kind == ObjectSpec::Kind::chart ? "chart" : "raster") << "\n"
     << "object_rows=" << object.rows << "\n"
     << "object_cols=" << object.cols << "\n"
     << "chart_groups=" << object.chart_groups << "\n"
     << "chart_bars=" << object.chart_bars << "\n"
     << "chart_dark_kappa=" << fmt17(object.chart_dark_kappa) << "\n"
     << "chart_bright_kappa=" << fmt17(object.chart_bright_kappa) << "\n"
     << "raster_path=" << object.raster_path << "\n"
     << "kappa_max=" << fmt17(object.kappa_max) << "\n"
     << "d_over_w0=" << join(d_over_w0) << "\n"
     << "gain_db=" << join(gain_db) << "\n"
     << "loss_db=" << join(loss_db) << "\n"
     << "seeds=" << join(seeds) << "\n"
     << "eta=" << fmt17(eta) << "\n"
     << "n_p_prime=" << opt_str(n_p_prime) << "\n"
     << "n_s=" << opt_str(n_s) << "\n"
     << "n_b=" << opt_str(n_b) << "\n"
     << "n_b_prime=" << opt_str(n_b_prime) << "\n"
     << "photon_budget="
     << (budget == PhotonBudget::per_pixel ? "per_pixel" : "whole_image")
     << "\n"
     << "clip=" << (clip ? "true" : "false") << "\n"
     << "write_previews=" << (write_previews ? "true" : "false") << "\n"
     << "psnr_threshold_db=" << fmt17(psnr_threshold_db) << "\n"
     << "contour_levels_db=" << join(contour_levels_db) << "\n";
  return ss.str();
}

std::uint64_t ExperimentConfig::digest() const { return fnv1a64(canonical()); }

ObjectField build_object(const ExperimentConfig& cfg, double loss_db,
                         double d_over_w0) {
  const double scale = kappa_from_loss_db(loss_db);
  if (cfg.object.kind == ObjectSpec::Kind::chart)
    return generate_bar_chart(cfg.object.rows, cfg.object.cols,
                              cfg.object.chart_groups, cfg.object.chart_bars,
                              cfg.object.chart_dark_kappa * scale,
                              cfg.object.chart_bright_kappa * scale,
                              d_over_w0);
  ObjectField f = load_raster_file(cfg.object.raster_path, d_over_w0,
                                   cfg.object.kappa_max);
  for (std::size_t i = 0; i < f.kappa.size(); ++i) f.kappa.data()[i] *= scale;
  return f;
}

ChannelParams resolve_channel(const ExperimentConfig& cfg, double gain_db,
                              double loss_db, double kappa_bar) {
  const double gain = db_to_linear(gain_db);
  if (cfg.n_p_prime) {
    double nbp = cfg.n_b_prime ? *cfg.n_b_prime : cfg.eta * *cfg.n_b;
    return ChannelParams::from_detected(*cfg.n_p_prime, nbp, cfg.eta, gain,
                                        kappa_bar);
  }
  double nb = cfg.n_b ? *cfg.n_b : *cfg.n_b_prime / cfg.eta;
  (void)loss_db;  // loss enters through kappa_bar of the attenuated object
  return ChannelParams::from_source(cfg.eta, gain, nb, *cfg.n_s, kappa_bar);
}

namespace {

std::vector<SweepRecord> sweep_records_impl(const ExperimentConfig& cfg,
                                            const std::string& preview_dir) {
  cfg.validate();
  const auto& ds = cfg.d_over_w0;
  const auto& gains = cfg.gain_db;
  const auto& losses = cfg.loss_db;
  const auto& seeds = cfg.seeds;
  const std::size_t nd = ds.size(), ng = gains.size(), nl = losses.size(),
                    ns = seeds.size();
  const auto policy = MeasurementPolicy::amplitude_compensated();

  // Per-loss objects at unit extent; per-d kernels and transfer functions.
  std::vector<ObjectField> objects(nl);
  std::vector<double> kappa_bars(nl);
  for (std::size_t li = 0; li < nl; ++li) {
    objects[li] = build_object(cfg, losses[li], 1.0);
    kappa_bars[li] = objects[li].mean_kappa();
  }
  std::vector<Kernel> kernels(nd);
  std::vector<ComplexGrid> transfers(nd);
  for (std::size_t di = 0; di < nd; ++di) {
    double pitch = ds[di] / double(cfg.object.cols);
    kernels[di] = gaussian_psf(
        psf_spec_for_grid(1.0, pitch, cfg.object.rows, cfg.object.cols));
    transfers[di] =
        unit_dc_transfer(kernels[di], cfg.object.rows, cfg.object.cols);
  }

  // Noise-free means per (d, loss); the amplitude scale ignores gain.
  std::vector<RealGrid> means(nd * nl);
  std::string first_error;
#pragma omp parallel for schedule(dynamic)
  for (long idx = 0; idx < long(nd * nl); ++idx) {
    try {
      std::size_t di = std::size_t(idx) / nl, li = std::size_t(idx) % nl;
      ObjectField obj = rescale_extent(objects[li], ds[di]);
      ChannelParams p =
          resolve_channel(cfg, gains[0], losses[li], kappa_bars[li]);
      means[std::size_t(idx)] =
          mean_image(obj, kernels[di], p, policy, cfg.budget);
    } catch (const std::exception& e) {
#pragma omp critical
      if (first_error.empty()) first_error = e.what();
    }
  }
  if (!first_error.empty())
    throw std::runtime_error("sweep setup failed: " + first_error);

  const std::size_t n_cells = nd * ng * nl * ns;
  std::vector<SweepRecord> records(n_cells);
  const std::size_t px = cfg.object.rows * cfg.object.cols;
  WienerOptions wopts;
  wopts.clip = cfg.clip;

#pragma omp parallel for schedule(dynamic)
  for (long idx = 0; idx < long(n_cells); ++idx) {
    try {
      std::size_t rest = std::size_t(idx);
      const std::size_t si = rest % ns;
      rest /= ns;
      const std::size_t li = rest % nl;
      rest /= nl;
      const std::size_t gi = rest % ng;
      const std::size_t di = rest / ng;

      ChannelParams p =
          resolve_channel(cfg, gains[gi], losses[li], kappa_bars[li]);
      QuadratureImage img =
          add_noise(means[di * nl + li], p, cfg.budget,
                    ds[di] / double(cfg.object.cols), seeds[si]);
      double nsr = default_nsr(p, cfg.budget, px);
      Reconstruction rec =
          wiener_deconvolve(img, transfers[di], nsr, wopts);
      PsnrValue pv = psnr(rec, objects[li]);

      records[std::size_t(idx)] =
          SweepRecord{ds[di], gains[gi],  p.n_b_prime, losses[li],
                      seeds[si], pv.db,   pv.saturated};

      if (!preview_dir.empty()) {
        char name[128];
        std::snprintf(name, sizeof name, "recon_d%zu_g%zu_l%zu_s%zu.pgm", di,
                      gi, li, si);
        save_preview_pgm(rec.f_tilde,
                         preview_dir + "/" + name);
      }
    } catch (const std::exception& e) {
#pragma omp critical
      if (first_error.empty()) first_error = e.what();
    }
  }
  if (!first_error.empty())
    throw std::runtime_error("sweep cell failed: " + first_error);
  return records;
}

RealGrid averaged_psnr_grid(const ExperimentConfig& cfg,
                            const std::vector<SweepRecord>& records) {
  // rows = gain axis, cols = d axis; requires a singleton loss axis.
  if (cfg.loss_db.size() != 1)
    throw std::invalid_argument(
        "contours need a single loss value per sweep");
  const std::size_t nd = cfg.d_over_w0.size(), ng = cfg.gain_db.size();
  const std::size_t ns = cfg.seeds.size(), nl = 1;
  RealGrid grid(ng, nd, 0.0);
  for (std::size_t di = 0; di < nd; ++di)
    for (std::size_t gi = 0; gi < ng; ++gi) {
      double acc = 0.0;
      std::size_t count = 0;
      for (std::size_t si = 0; si < ns; ++si) {
        const auto& r = records[((di * ng + gi) * nl) * ns + si];
        if (r.saturated) continue;
        acc += r.psnr_db;
        ++count;
      }
      if (count == 0)
        throw std::runtime_error("every seed saturated at one contour cell");
      grid(gi, di) = acc / double(count);
    }
  return grid;
}

void write_contours_csv(const std::vector<ContourPolyline>& polys,
                        const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write contour csv: " + path);
  out << "level_db,vertex_index,d_over_w0,gain_db\n";
  char buf[160];
  for (const auto& poly : polys)
    for (std::size_t i = 0; i < poly.vertices.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.12g,%zu,%.12g,%.12g\n", poly.level_db,
                    i, poly.vertices[i][0], poly.vertices[i][1]);
      out << buf;
    }
}

}  // namespace

std::vector<SweepRecord> sweep_records(const ExperimentConfig& cfg) {
  return sweep_records_impl(cfg, "");
}

SweepOutput run_sweep(const ExperimentConfig& cfg, const std::string& out_dir) {
  auto t0 = std::chrono::steady_clock::now();
  std::filesystem::create_directories(out_dir);
  SweepOutput out;
  out.records =
      sweep_records_impl(cfg, cfg.write_previews ? out_dir : std::string());
  out.csv_path = out_dir + "/sweep.csv";
  write_sweep_csv(out.records, out.csv_path);
  if (!cfg.contour_levels_db.empty()) {
    RealGrid grid = averaged_psnr_grid(cfg, out.records);
    auto polys =
        psnr_contours(cfg.d_over_w0, cfg.gain_db, grid, cfg.contour_levels_db);
    write_contours_csv(polys, out_dir + "/contours.csv");
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              t0)
                    .count();
  out.manifest_path = out_dir + "/manifest.txt";
  write_manifest(cfg, out.records.size(), secs, out.manifest_path);
  return out;
}

std::vector<ResolutionRow> run_resolution_curve(const ExperimentConfig& cfg,
                                                const std::string& out_dir) {
  auto t0 = std::chrono::steady_clock::now();
  std::filesystem::create_directories(out_dir);
  auto records = sweep_records(cfg);

  std::vector<ResolutionRow> rows;
  for (double loss : cfg.loss_db)
    for (double gain : cfg.gain_db) {
      std::vector<SweepRecord> subset;
      for (const auto& r : records)
        if (r.loss_db == loss && r.gain_db == gain) subset.push_back(r);
      ResolutionRow row;
      row.loss_db = loss;
      row.gain_db = gain;
      row.size = min_resolvable_size(std::span<const SweepRecord>(subset),
                                     cfg.psnr_threshold_db);
      rows.push_back(row);
    }

  write_resolution_csv(rows, out_dir + "/resolution.csv");
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              t0)
                    .count();
  write_manifest(cfg, records.size(), secs, out_dir + "/manifest.txt");
  return rows;
}

void write_sweep_csv(const std::vector<SweepRecord>& records,
                     const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write sweep csv: " + path);
  out << "d_over_w0,gain_db,n_b_prime,loss_db,seed,psnr_db\n";
  char buf[200];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%llu,%.12g\n",
                  r.d_over_w0, r.gain_db, r.n_b_prime, r.loss_db,
                  static_cast<unsigned long long>(r.seed), r.psnr_db);
    out << buf;
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_resolution_csv(const std::vector<ResolutionRow>& rows,
                          const std::string& path) {
  // d_min sentinels: inf = threshold never reached in range, -inf = already
  // above threshold at the smallest size tested.
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write resolution csv: " + path);
  out << "loss_db,gain_db,d_min_over_w0\n";
  char buf[160];
  for (const auto& r : rows) {
    double d = 0.0;
    switch (r.size.status) {
      case ResolvableSize::Status::found:
        d = r.size.d_min_over_w0;
        break;
      case ResolvableSize::Status::unresolvable_in_range:
        d = std::numeric_limits<double>::infinity();
        break;
      case ResolvableSize::Status::resolvable_everywhere:
        d = -std::numeric_limits<double>::infinity();
        break;
    }
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g\n", r.loss_db, r.gain_db,
                  d);
    out << buf;
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_manifest(const ExperimentConfig& cfg, std::size_t record_count,
                    double wall_seconds, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write manifest: " + path);
  char digest[32];
  std::snprintf(digest, sizeof digest, "%016llx",
                static_cast<unsigned long long>(cfg.digest()));
  out << "tool = " << kToolVersion << "\n"
      << "config_digest = " << digest << "\n"
      << "records = " << record_count << "\n"
      << "wall_time_seconds = " << wall_seconds << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace sqsar
