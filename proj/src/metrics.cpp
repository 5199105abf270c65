#include "sqsar/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <iostream>
#include <limits>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace sqsar {

PsnrValue psnr(const RealGrid& f_tilde, const ObjectField& truth) {
  if (!f_tilde.same_shape(truth.kappa))
    throw std::invalid_argument("psnr grids must have the same shape");
  double peak = truth.max_kappa();
  if (!(peak > 0.0)) throw std::invalid_argument("truth has zero peak power");

  double mse = 0.0;
  for (std::size_t i = 0; i < truth.rows(); ++i)
    for (std::size_t j = 0; j < truth.cols(); ++j) {
      double e = f_tilde(i, j) - std::sqrt(truth.kappa(i, j));
      mse += e * e;
    }
  mse /= double(f_tilde.size());

  PsnrValue v;
  if (mse == 0.0) {
    v.db = std::numeric_limits<double>::infinity();
    v.saturated = true;
    return v;
  }
  v.db = 10.0 * std::log10(peak / mse);
  return v;
}

PsnrValue psnr(const Reconstruction& rec, const ObjectField& truth) {
  return psnr(rec.f_tilde, truth);
}

bool resolvable(double psnr_db, double threshold_db) {
  return psnr_db >= threshold_db;
}

ResolvableSize min_resolvable_size(
    std::vector<std::pair<double, double>> psnr_by_size, double threshold_db) {
  if (psnr_by_size.empty())
    throw std::invalid_argument("min_resolvable_size needs at least one size");
  std::sort(psnr_by_size.begin(), psnr_by_size.end());
  for (std::size_t i = 0; i < psnr_by_size.size(); ++i) {
    if (!(psnr_by_size[i].first > 0.0))
      throw std::invalid_argument("object sizes must be positive");
    if (i > 0 && psnr_by_size[i].first == psnr_by_size[i - 1].first)
      throw std::invalid_argument("duplicate object size in resolvability scan");
  }

  ResolvableSize out;
  if (psnr_by_size.front().second >= threshold_db) {
    out.status = ResolvableSize::Status::resolvable_everywhere;
    out.d_min_over_w0 = psnr_by_size.front().first;
    return out;
  }
  for (std::size_t i = 0; i + 1 < psnr_by_size.size(); ++i) {
    auto [d0, p0] = psnr_by_size[i];
    auto [d1, p1] = psnr_by_size[i + 1];
    if (p0 < threshold_db && p1 >= threshold_db) {
      double t = (threshold_db - p0) / (p1 - p0);
      double logd = std::log10(d0) + t * (std::log10(d1) - std::log10(d0));
      out.status = ResolvableSize::Status::found;
      out.d_min_over_w0 = std::pow(10.0, logd);
      return out;
    }
  }
  out.status = ResolvableSize::Status::unresolvable_in_range;
  return out;
}

ResolvableSize min_resolvable_size(std::span<const SweepRecord> records,
                                   double threshold_db) {
  std::map<double, std::pair<double, std::size_t>> by_size;  // sum, count
  bool warned_saturated = false;
  for (const auto& r : records) {
    if (r.saturated) {
      if (!warned_saturated)
        std::cerr << "warning: dropping saturated records from "
                     "resolvability scan\n";
      warned_saturated = true;
      continue;
    }
    auto& acc = by_size[r.d_over_w0];
    acc.first += r.psnr_db;
    acc.second += 1;
  }
  std::vector<std::pair<double, double>> averaged;
  averaged.reserve(by_size.size());
  for (const auto& [d, acc] : by_size) {
    if (acc.second < 3)
      std::cerr << "warning: only " << acc.second
                << " seed(s) at d/w0 = " << d
                << "; resolvability estimate will be noisy\n";
    averaged.emplace_back(d, acc.first / double(acc.second));
  }
  return min_resolvable_size(std::move(averaged), threshold_db);
}

namespace {

struct Point {
  double x, y;  // (d_over_w0, gain_db)
  bool operator==(const Point&) const = default;
};

struct PointHash {
  std::size_t operator()(const Point& p) const {
    std::uint64_t a, b;
    std::memcpy(&a, &p.x, 8);
    std::memcpy(&b, &p.y, 8);
    return std::size_t(a * 0x9E3779B97F4A7C15ull ^ (b + 0x517CC1B727220A95ull));
  }
};

Point lerp_edge(double level, double xa, double ya, double va, double xb,
                double yb, double vb) {
  double t = (vb == va) ? 0.5 : (level - va) / (vb - va);
  return {xa + t * (xb - xa), ya + t * (yb - ya)};
}

// Crossing segments of one level across the whole grid.
std::vector<std::array<Point, 2>> marching_segments(
    const std::vector<double>& d_axis, const std::vector<double>& gain_axis,
    const RealGrid& values, double level) {
  std::vector<std::array<Point, 2>> segments;
  for (std::size_t gi = 0; gi + 1 < gain_axis.size(); ++gi) {
    for (std::size_t di = 0; di + 1 < d_axis.size(); ++di) {
      const double x0 = d_axis[di], x1 = d_axis[di + 1];
      const double y0 = gain_axis[gi], y1 = gain_axis[gi + 1];
      const double v00 = values(gi, di), v01 = values(gi, di + 1);
      const double v10 = values(gi + 1, di), v11 = values(gi + 1, di + 1);
      const bool b00 = v00 >= level, b01 = v01 >= level;
      const bool b10 = v10 >= level, b11 = v11 >= level;

      std::vector<Point> cut;
      std::vector<int> which;  // 0 bottom, 1 right, 2 top, 3 left
      if (b00 != b01) {
        cut.push_back(lerp_edge(level, x0, y0, v00, x1, y0, v01));
        which.push_back(0);
      }
      if (b01 != b11) {
        cut.push_back(lerp_edge(level, x1, y0, v01, x1, y1, v11));
        which.push_back(1);
      }
      if (b10 != b11) {
        cut.push_back(lerp_edge(level, x0, y1, v10, x1, y1, v11));
        which.push_back(2);
      }
      if (b00 != b10) {
        cut.push_back(lerp_edge(level, x0, y0, v00, x0, y1, v10));
        which.push_back(3);
      }

      if (cut.size() == 2) {
        segments.push_back({cut[0], cut[1]});
      } else if (cut.size() == 4) {
        // Saddle cell: split on the center average, pairing each corner
        // region with its adjacent edges.
        double center = 0.25 * (v00 + v01 + v10 + v11);
        // which order here is always {bottom, right, top, left}
        if ((center >= level) == b00) {
          segments.push_back({cut[0], cut[1]});  // bottom-right
          segments.push_back({cut[2], cut[3]});  // top-left
        } else {
          segments.push_back({cut[3], cut[0]});  // left-bottom
          segments.push_back({cut[1], cut[2]});  // right-top
        }
      }
    }
  }
  return segments;
}

}  // namespace

std::vector<ContourPolyline> psnr_contours(const std::vector<double>& d_axis,
                                           const std::vector<double>& gain_axis,
                                           const RealGrid& values,
                                           const std::vector<double>& levels) {
  if (d_axis.size() < 2 || gain_axis.size() < 2)
    throw std::invalid_argument("contour grid needs at least 2x2 points");
  if (values.rows() != gain_axis.size() || values.cols() != d_axis.size())
    throw std::invalid_argument("contour grid shape must match the axes");
  if (!std::is_sorted(d_axis.begin(), d_axis.end()) ||
      !std::is_sorted(gain_axis.begin(), gain_axis.end()))
    throw std::invalid_argument("contour axes must be increasing");
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!std::isfinite(values.data()[i]))
      throw std::invalid_argument(
          "contour grid has non-finite values; drop saturated cells first");

  std::vector<ContourPolyline> out;
  for (double level : levels) {
    auto segments = marching_segments(d_axis, gain_axis, values, level);

    // Chain segments that share endpoints into polylines. Shared cell edges
    // interpolate to bitwise-identical points, so exact keys suffice.
    std::unordered_map<Point, std::vector<std::size_t>, PointHash> touch;
    for (std::size_t s = 0; s < segments.size(); ++s) {
      touch[segments[s][0]].push_back(s);
      touch[segments[s][1]].push_back(s);
    }
    std::vector<bool> used(segments.size(), false);

    auto walk = [&](std::size_t start, int start_end) {
      std::vector<Point> chain;
      chain.push_back(segments[start][std::size_t(start_end)]);
      Point cur = segments[start][std::size_t(1 - start_end)];
      used[start] = true;
      chain.push_back(cur);
      while (true) {
        const auto& cands = touch[cur];
        std::size_t next = segments.size();
        for (std::size_t c : cands)
          if (!used[c]) {
            next = c;
            break;
          }
        if (next == segments.size()) break;
        used[next] = true;
        cur = (segments[next][0] == cur) ? segments[next][1]
                                         : segments[next][0];
        chain.push_back(cur);
      }
      return chain;
    };

    auto emit = [&](std::size_t s, int end) {
      ContourPolyline poly;
      poly.level_db = level;
      auto chain = walk(s, end);
      poly.vertices.reserve(chain.size());
      for (const auto& p : chain) poly.vertices.push_back({p.x, p.y});
      out.push_back(std::move(poly));
    };

    // Open curves first, starting from a degree-1 endpoint so each walk
    // covers its whole chain; whatever remains afterwards is a closed loop.
    for (std::size_t s = 0; s < segments.size(); ++s) {
      if (used[s]) continue;
      if (touch[segments[s][0]].size() == 1)
        emit(s, 0);
      else if (touch[segments[s][1]].size() == 1)
        emit(s, 1);
    }
    for (std::size_t s = 0; s < segments.size(); ++s)
      if (!used[s]) emit(s, 0);
  }
  return out;
}

}  // namespace sqsar
