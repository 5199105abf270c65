#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "sqsar/metrics.hpp"
#include "sqsar/scene.hpp"

using namespace sqsar;
using doctest::Approx;

namespace {

ObjectField uniform_truth(std::size_t n, double kappa) {
  ObjectField obj;
  obj.kappa = RealGrid(n, n);
  obj.theta = RealGrid(n, n);
  obj.extent_d = double(n);
  for (std::size_t i = 0; i < obj.kappa.size(); ++i)
    obj.kappa.data()[i] = kappa;
  return obj;
}

RealGrid amplitude_of(const ObjectField& obj) {
  RealGrid g(obj.rows(), obj.cols());
  for (std::size_t i = 0; i < g.size(); ++i)
    g.data()[i] = std::sqrt(obj.kappa.data()[i]);
  return g;
}

}  // namespace

TEST_CASE("psnr matches the closed form for a single wrong pixel") {
  // One unit amplitude error in 200x200 with peak kappa 1:
  // 10 log10(1 / (1/40000)) = 10 (4 + 2 log10 2) dB.
  auto obj = uniform_truth(200, 1.0);
  RealGrid rec = amplitude_of(obj);
  rec(17, 31) = 0.0;
  PsnrValue v = psnr(rec, obj);
  CHECK(v.db == Approx(46.020599913279624).epsilon(1e-12));
  CHECK_FALSE(v.saturated);
}

TEST_CASE("psnr of a uniform 0.1 amplitude error is 20 dB") {
  auto obj = uniform_truth(64, 1.0);
  RealGrid rec = amplitude_of(obj);
  for (std::size_t i = 0; i < rec.size(); ++i) rec.data()[i] += 0.1;
  CHECK(psnr(rec, obj).db == Approx(20.0).epsilon(1e-12));
}

TEST_CASE("psnr saturates on an exact reconstruction") {
  auto obj = uniform_truth(16, 0.36);
  PsnrValue v = psnr(amplitude_of(obj), obj);
  CHECK(v.saturated);
  CHECK(v.db == std::numeric_limits<double>::infinity());
}

TEST_CASE("psnr is invariant under a common amplitude rescale") {
  // Scaling truth kappa by s^2 and the estimate by s moves peak and MSE by
  // the same s^2 factor.
  auto obj = generate_bar_chart(64, 64, 2, 3, 0.04, 0.81);
  RealGrid rec = amplitude_of(obj);
  rec(5, 5) += 0.2;
  rec(40, 9) -= 0.1;
  double base = psnr(rec, obj).db;

  const double s = 0.37;
  ObjectField scaled = obj;
  for (std::size_t i = 0; i < scaled.kappa.size(); ++i)
    scaled.kappa.data()[i] *= s * s;
  RealGrid rec_s = rec;
  for (std::size_t i = 0; i < rec_s.size(); ++i) rec_s.data()[i] *= s;
  CHECK(psnr(rec_s, scaled).db == Approx(base).epsilon(1e-12));
}

TEST_CASE("psnr is invariant under transposition") {
  auto obj = generate_bar_chart(48, 48, 1, 3, 0.09, 1.0);
  RealGrid rec = amplitude_of(obj);
  rec(3, 11) = 0.5;
  rec(20, 2) = 0.9;

  ObjectField obj_t = uniform_truth(48, 0.0);
  RealGrid rec_t(48, 48);
  for (std::size_t i = 0; i < 48; ++i)
    for (std::size_t j = 0; j < 48; ++j) {
      obj_t.kappa(j, i) = obj.kappa(i, j);
      rec_t(j, i) = rec(i, j);
    }
  CHECK(psnr(rec_t, obj_t).db == Approx(psnr(rec, obj).db).epsilon(1e-12));
}

TEST_CASE("psnr input validation") {
  auto obj = uniform_truth(8, 1.0);
  CHECK_THROWS_WITH_AS(psnr(RealGrid(8, 9), obj),
                       "psnr grids must have the same shape",
                       std::invalid_argument);
  auto dark = uniform_truth(8, 0.0);
  CHECK_THROWS_WITH_AS(psnr(RealGrid(8, 8), dark),
                       "truth has zero peak power", std::invalid_argument);
}

TEST_CASE("resolvable cut is inclusive at the threshold") {
  CHECK(resolvable(14.0));
  CHECK(resolvable(13.0));
  CHECK_FALSE(resolvable(12.999));
  CHECK(resolvable(12.0, 12.0));
  CHECK_FALSE(resolvable(12.0, 12.5));
}

TEST_CASE("min_resolvable_size interpolates the crossing in log size") {
  // Crossing halfway between 12 and 14 dB: d = 10^(1 + log10(2)/2) = sqrt(200).
  auto r = min_resolvable_size({{10.0, 12.0}, {20.0, 14.0}}, 13.0);
  CHECK(r.status == ResolvableSize::Status::found);
  CHECK(r.d_min_over_w0 == Approx(14.142135623730951).epsilon(1e-12));

  // Threshold hit exactly at a sample: interpolation lands on it.
  auto exact =
      min_resolvable_size({{10.0, 11.0}, {20.0, 13.0}, {40.0, 15.0}}, 13.0);
  CHECK(exact.status == ResolvableSize::Status::found);
  CHECK(exact.d_min_over_w0 == Approx(20.0).epsilon(1e-12));
}

TEST_CASE("min_resolvable_size sorts its input first") {
  auto r = min_resolvable_size({{20.0, 14.0}, {10.0, 12.0}}, 13.0);
  CHECK(r.status == ResolvableSize::Status::found);
  CHECK(r.d_min_over_w0 == Approx(14.142135623730951).epsilon(1e-12));
}

TEST_CASE("min_resolvable_size sentinel statuses") {
  auto lost = min_resolvable_size({{10.0, 5.0}, {20.0, 8.0}}, 13.0);
  CHECK(lost.status == ResolvableSize::Status::unresolvable_in_range);

  auto easy = min_resolvable_size({{10.0, 14.0}, {20.0, 15.0}}, 13.0);
  CHECK(easy.status == ResolvableSize::Status::resolvable_everywhere);
  CHECK(easy.d_min_over_w0 == 10.0);
}

TEST_CASE("min_resolvable_size takes the first crossing from below") {
  // A later dip back under the threshold does not move the answer.
  auto r = min_resolvable_size(
      {{10.0, 12.0}, {20.0, 14.0}, {40.0, 12.0}, {80.0, 15.0}}, 13.0);
  CHECK(r.status == ResolvableSize::Status::found);
  CHECK(r.d_min_over_w0 == Approx(14.142135623730951).epsilon(1e-12));
}

TEST_CASE("min_resolvable_size input validation") {
  std::vector<std::pair<double, double>> empty;
  CHECK_THROWS_WITH_AS(min_resolvable_size(std::move(empty), 13.0),
                       "min_resolvable_size needs at least one size",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      min_resolvable_size({{10.0, 12.0}, {10.0, 14.0}}, 13.0),
      "duplicate object size in resolvability scan", std::invalid_argument);
  CHECK_THROWS_WITH_AS(min_resolvable_size({{0.0, 12.0}, {10.0, 14.0}}, 13.0),
                       "object sizes must be positive", std::invalid_argument);
}

TEST_CASE("record based min_resolvable_size seed-averages per size") {
  std::vector<SweepRecord> recs;
  auto push = [&](double d, std::uint64_t seed, double db, bool sat = false) {
    SweepRecord r;
    r.d_over_w0 = d;
    r.gain_db = 10.0;
    r.loss_db = 100.0;
    r.seed = seed;
    r.psnr_db = db;
    r.saturated = sat;
    recs.push_back(r);
  };
  // Means: 12 dB at d=10, 14 dB at d=20, so the crossing is sqrt(200).
  push(10.0, 1, 11.0);
  push(10.0, 2, 12.0);
  push(10.0, 3, 13.0);
  push(20.0, 1, 13.0);
  push(20.0, 2, 14.0);
  push(20.0, 3, 15.0);
  auto r = min_resolvable_size(recs, 13.0);
  CHECK(r.status == ResolvableSize::Status::found);
  CHECK(r.d_min_over_w0 == Approx(14.142135623730951).epsilon(1e-12));

  // A saturated record is dropped from the average instead of poisoning it.
  push(10.0, 4, std::numeric_limits<double>::infinity(), true);
  auto r2 = min_resolvable_size(recs, 13.0);
  CHECK(r2.d_min_over_w0 == Approx(r.d_min_over_w0).epsilon(1e-12));
}

TEST_CASE("record based min_resolvable_size works below 3 seeds") {
  // Warns on stderr but still averages what it has.
  std::vector<SweepRecord> recs(2);
  recs[0].d_over_w0 = 10.0;
  recs[0].psnr_db = 12.0;
  recs[1].d_over_w0 = 20.0;
  recs[1].psnr_db = 14.0;
  auto r = min_resolvable_size(recs, 13.0);
  CHECK(r.status == ResolvableSize::Status::found);
  CHECK(r.d_min_over_w0 == Approx(14.142135623730951).epsilon(1e-12));
}

TEST_CASE("contours of a constant or out-of-range grid are empty") {
  RealGrid flat(2, 2);
  for (std::size_t i = 0; i < flat.size(); ++i) flat.data()[i] = 10.0;
  CHECK(psnr_contours({10.0, 20.0}, {0.0, 4.0}, flat, {13.0}).empty());
  CHECK(psnr_contours({10.0, 20.0}, {0.0, 4.0}, flat, {10.0}).empty());
  CHECK(psnr_contours({10.0, 20.0}, {0.0, 4.0}, flat, {99.0}).empty());
}

TEST_CASE("contour of a gain-monotone grid is one open horizontal polyline") {
  const std::vector<double> d_axis{10.0, 20.0, 40.0};
  const std::vector<double> gain_axis{0.0, 10.0};
  RealGrid values(2, 3);
  for (std::size_t j = 0; j < 3; ++j) {
    values(0, j) = 12.0;
    values(1, j) = 16.0;
  }
  auto polys = psnr_contours(d_axis, gain_axis, values, {14.0});
  REQUIRE(polys.size() == 1);
  CHECK(polys[0].level_db == 14.0);
  REQUIRE(polys[0].vertices.size() == 3);
  // Crossing at t = 0.5 on every column edge, swept across the d axis.
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(polys[0].vertices[j][0] == Approx(d_axis[j]).epsilon(1e-15));
    CHECK(polys[0].vertices[j][1] == Approx(5.0).epsilon(1e-15));
  }
}

TEST_CASE("higher contour levels sit at higher gain") {
  const std::vector<double> d_axis{10.0, 20.0, 40.0, 80.0};
  const std::vector<double> gain_axis{0.0, 10.0};
  RealGrid values(2, 4);
  for (std::size_t j = 0; j < 4; ++j) {
    values(0, j) = 12.0;
    values(1, j) = 16.0;
  }
  auto polys = psnr_contours(d_axis, gain_axis, values, {12.5, 15.0});
  REQUIRE(polys.size() == 2);
  CHECK(polys[0].level_db == 12.5);
  CHECK(polys[1].level_db == 15.0);
  REQUIRE(polys[0].vertices.size() == polys[1].vertices.size());
  for (std::size_t v = 0; v < polys[0].vertices.size(); ++v)
    CHECK(polys[0].vertices[v][1] < polys[1].vertices[v][1]);
}

TEST_CASE("a bump contour closes and repeats its first vertex") {
  const std::vector<double> axis{0.0, 1.0, 2.0};
  RealGrid values(3, 3);
  values(1, 1) = 1.0;
  auto polys = psnr_contours(axis, axis, values, {0.5});
  REQUIRE(polys.size() == 1);
  const auto& v = polys[0].vertices;
  REQUIRE(v.size() == 5);
  CHECK(v.front() == v.back());
  // The diamond's vertices are the four half-edge midpoints around (1,1).
  double cx = 0.0, cy = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    cx += v[i][0];
    cy += v[i][1];
    double dist = std::abs(v[i][0] - 1.0) + std::abs(v[i][1] - 1.0);
    CHECK(dist == Approx(0.5).epsilon(1e-15));
  }
  CHECK(cx / 4.0 == Approx(1.0).epsilon(1e-15));
  CHECK(cy / 4.0 == Approx(1.0).epsilon(1e-15));
}

TEST_CASE("saddle cells split into two consistent diagonal segments") {
  const std::vector<double> axis{0.0, 1.0};
  RealGrid values(2, 2);
  values(0, 1) = 1.0;
  values(1, 0) = 1.0;
  auto polys = psnr_contours(axis, axis, values, {0.5});
  REQUIRE(polys.size() == 2);
  for (const auto& p : polys) CHECK(p.vertices.size() == 2);
}

TEST_CASE("contour input validation") {
  RealGrid values(2, 2);
  CHECK_THROWS_WITH_AS(psnr_contours({10.0}, {0.0, 4.0}, values, {13.0}),
                       "contour grid needs at least 2x2 points",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      psnr_contours({10.0, 20.0, 30.0}, {0.0, 4.0}, values, {13.0}),
      "contour grid shape must match the axes", std::invalid_argument);
  CHECK_THROWS_WITH_AS(psnr_contours({20.0, 10.0}, {0.0, 4.0}, values, {13.0}),
                       "contour axes must be increasing",
                       std::invalid_argument);
  RealGrid bad(2, 2);
  bad(0, 0) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_WITH(
      psnr_contours({10.0, 20.0}, {0.0, 4.0}, bad, {13.0}),
      doctest::Contains("non-finite"));
}
