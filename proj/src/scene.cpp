#include "sqsar/scene.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace sqsar {

double ObjectField::mean_kappa() const {
  double acc = 0.0;
  const double* p = kappa.data();
  for (std::size_t i = 0; i < kappa.size(); ++i) acc += p[i];
  return acc / double(kappa.size());
}

double ObjectField::max_kappa() const {
  double m = 0.0;
  const double* p = kappa.data();
  for (std::size_t i = 0; i < kappa.size(); ++i)
    if (p[i] > m) m = p[i];
  return m;
}

namespace {

struct Rect {
  std::size_t x, y, w, h;  // top-left corner, width, height
};

void fill_rect(RealGrid& g, const Rect& r, double value) {
  for (std::size_t i = r.y; i < r.y + r.h; ++i)
    for (std::size_t j = r.x; j < r.x + r.w; ++j) g(i, j) = value;
}

}  // namespace

ObjectField generate_bar_chart(std::size_t rows, std::size_t cols,
                               std::size_t n_groups,
                               std::size_t bars_per_element, double dark_kappa,
                               double bright_kappa, double extent_d) {
  if (rows == 0 || cols == 0)
    throw std::invalid_argument("chart dimensions must be positive");
  if (bars_per_element == 0)
    throw std::invalid_argument("bars_per_element must be positive");
  if (!(dark_kappa >= 0.0) || !(bright_kappa <= 1.0) ||
      !(dark_kappa < bright_kappa))
    throw std::invalid_argument(
        "chart needs 0 <= dark_kappa < bright_kappa <= 1");
  if (!(extent_d > 0.0))
    throw std::invalid_argument("chart extent must be positive");

  ObjectField field;
  field.kappa = RealGrid(rows, cols, bright_kappa);
  field.theta = RealGrid(rows, cols, 0.0);
  field.extent_d = extent_d;

  const std::size_t w0 = std::min(rows, cols) / 16;
  std::size_t x = w0;
  for (std::size_t g = 0; g < n_groups; ++g) {
    const std::size_t w = w0 >> g;
    if (w == 0)
      throw std::invalid_argument("grid too small for chart group " +
                                  std::to_string(g));
    const std::size_t len = 5 * w;
    const std::size_t elem_w = (2 * bars_per_element - 1) * w;
    const std::size_t group_w = std::max(len, elem_w);
    const std::size_t y_vert = w0;
    const std::size_t y_horiz = w0 + 6 * w;
    if (x + group_w > cols || y_horiz + elem_w > rows)
      throw std::invalid_argument("grid too small for chart group " +
                                  std::to_string(g));
    for (std::size_t b = 0; b < bars_per_element; ++b) {
      fill_rect(field.kappa, {x + 2 * b * w, y_vert, w, len}, dark_kappa);
      fill_rect(field.kappa, {x, y_horiz + 2 * b * w, len, w}, dark_kappa);
    }
    x += len + w0;
  }
  return field;
}

namespace {

struct PgmParser {
  const std::vector<std::uint8_t>& bytes;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw std::runtime_error("pgm parse error at byte " + std::to_string(pos) +
                             ": " + what);
  }

  void skip_space_and_comments() {
    while (pos < bytes.size()) {
      std::uint8_t c = bytes[pos];
      if (c == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        ++pos;
      } else {
        return;
      }
    }
  }

  unsigned long read_uint() {
    skip_space_and_comments();
    if (pos >= bytes.size()) fail("unexpected end of header");
    if (bytes[pos] < '0' || bytes[pos] > '9') fail("expected digits");
    unsigned long v = 0;
    while (pos < bytes.size() && bytes[pos] >= '0' && bytes[pos] <= '9') {
      v = v * 10 + (bytes[pos] - '0');
      if (v > 1000000000ul) fail("value out of range");
      ++pos;
    }
    return v;
  }
};

}  // namespace

ObjectField load_raster(const std::vector<std::uint8_t>& pgm_bytes,
                        double extent_d, double kappa_max) {
  if (!(kappa_max > 0.0 && kappa_max <= 1.0))
    throw std::invalid_argument("kappa_max must be in (0, 1]");
  if (!(extent_d > 0.0))
    throw std::invalid_argument("raster extent must be positive");

  PgmParser p{pgm_bytes};
  if (pgm_bytes.size() < 2 || pgm_bytes[0] != 'P' || pgm_bytes[1] != '5')
    p.fail("not a binary PGM (P5) file");
  p.pos = 2;
  unsigned long cols = p.read_uint();
  unsigned long rows = p.read_uint();
  unsigned long maxval = p.read_uint();
  if (cols == 0 || rows == 0) p.fail("zero image dimension");
  if (maxval != 255) p.fail("maxval must be 255");
  if (p.pos >= pgm_bytes.size()) p.fail("missing payload");
  ++p.pos;  // single whitespace byte after maxval
  if (pgm_bytes.size() - p.pos < std::size_t(rows) * cols) {
    p.pos = pgm_bytes.size();
    p.fail("truncated payload, expected " +
           std::to_string(std::size_t(rows) * cols) + " pixel bytes");
  }

  ObjectField field;
  field.kappa = RealGrid(rows, cols);
  field.theta = RealGrid(rows, cols, 0.0);
  field.extent_d = extent_d;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      double v = double(pgm_bytes[p.pos++]) / 255.0;
      field.kappa(i, j) = kappa_max * v * v;
    }
  return field;
}

ObjectField load_raster_file(const std::string& path, double extent_d,
                             double kappa_max) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open raster file: " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return load_raster(bytes, extent_d, kappa_max);
}

std::vector<std::uint8_t> save_raster(const ObjectField& field,
                                      double kappa_max) {
  if (!(kappa_max > 0.0 && kappa_max <= 1.0))
    throw std::invalid_argument("kappa_max must be in (0, 1]");
  char header[64];
  int n = std::snprintf(header, sizeof header, "P5\n%zu %zu\n255\n",
                        field.cols(), field.rows());
  std::vector<std::uint8_t> out(header, header + n);
  out.reserve(out.size() + field.kappa.size());
  for (std::size_t i = 0; i < field.rows(); ++i)
    for (std::size_t j = 0; j < field.cols(); ++j) {
      double k = field.kappa(i, j);
      if (k < 0.0) k = 0.0;
      double v = std::lround(255.0 * std::sqrt(k / kappa_max));
      out.push_back(std::uint8_t(v > 255.0 ? 255.0 : v));
    }
  return out;
}

void save_raster_file(const ObjectField& field, const std::string& path,
                      double kappa_max) {
  auto bytes = save_raster(field, kappa_max);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write raster file: " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            std::streamsize(bytes.size()));
}

ObjectField rescale_extent(const ObjectField& field, double new_extent_d) {
  if (!(new_extent_d > 0.0))
    throw std::invalid_argument("extent must be positive");
  ObjectField out = field;
  out.extent_d = new_extent_d;
  return out;
}

}  // namespace sqsar
