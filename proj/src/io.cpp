#include "sqsar/io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace sqsar {

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

std::uint64_t params_digest(const ChannelParams& p, PhotonBudget budget,
                            double pitch) {
  std::ostringstream ss;
  ss.precision(17);
  ss << "eta=" << p.eta << "\ngain=" << p.gain << "\nn_b=" << p.n_b
     << "\nn_s=" << p.n_s << "\nkappa_bar=" << p.kappa_bar
     << "\nn_p_prime=" << p.n_p_prime << "\nn_b_prime=" << p.n_b_prime
     << "\nbudget=" << (budget == PhotonBudget::per_pixel ? "per_pixel"
                                                          : "whole_image")
     << "\npitch=" << pitch << "\n";
  return fnv1a64(ss.str());
}

namespace {

constexpr char kMagic[8] = {'S', 'Q', 'S', 'A', 'R', 'Q', 'I', '1'};

template <typename T>
void put(std::ostream& out, T v) {
  // Fields are written in host order; this tool targets little-endian Linux.
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T take(std::istream& in, const std::string& path) {
  T v;
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!in) throw std::runtime_error("truncated quadrature file: " + path);
  return v;
}

}  // namespace

void save_quadrature(const QuadratureImage& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write quadrature file: " + path);
  out.write(kMagic, sizeof kMagic);
  put(out, std::uint32_t(img.x_readout.rows()));
  put(out, std::uint32_t(img.x_readout.cols()));
  put(out, std::uint64_t(img.seed));
  put(out, std::uint8_t(img.budget == PhotonBudget::whole_image ? 1 : 0));
  const ChannelParams& p = img.params;
  for (double v : {p.eta, p.gain, p.n_b, p.n_s, p.kappa_bar, p.n_p_prime,
                   p.n_b_prime, img.pitch})
    put(out, v);
  put(out, params_digest(p, img.budget, img.pitch));
  out.write(reinterpret_cast<const char*>(img.x_readout.data()),
            std::streamsize(img.x_readout.size() * sizeof(double)));
  if (!out) throw std::runtime_error("write failed: " + path);
}

QuadratureImage load_quadrature(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open quadrature file: " + path);
  char magic[8];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kMagic, sizeof magic) != 0)
    throw std::runtime_error("not a quadrature file: " + path);

  QuadratureImage img;
  auto rows = take<std::uint32_t>(in, path);
  auto cols = take<std::uint32_t>(in, path);
  img.seed = take<std::uint64_t>(in, path);
  img.budget = take<std::uint8_t>(in, path) ? PhotonBudget::whole_image
                                            : PhotonBudget::per_pixel;
  ChannelParams& p = img.params;
  for (double* f : {&p.eta, &p.gain, &p.n_b, &p.n_s, &p.kappa_bar,
                    &p.n_p_prime, &p.n_b_prime, &img.pitch})
    *f = take<double>(in, path);
  auto digest = take<std::uint64_t>(in, path);
  if (digest != params_digest(p, img.budget, img.pitch))
    throw std::runtime_error("quadrature parameter digest mismatch: " + path);
  if (rows == 0 || cols == 0)
    throw std::runtime_error("empty quadrature grid: " + path);

  img.x_readout = RealGrid(rows, cols);
  in.read(reinterpret_cast<char*>(img.x_readout.data()),
          std::streamsize(img.x_readout.size() * sizeof(double)));
  if (!in) throw std::runtime_error("truncated quadrature file: " + path);
  return img;
}

namespace {

void write_pgm(const RealGrid& g, double lo, double hi,
               const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write pgm: " + path);
  out << "P5\n" << g.cols() << " " << g.rows() << "\n255\n";
  const double span = (hi > lo) ? hi - lo : 1.0;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) {
      double t = (g(i, j) - lo) / span;
      int v = int(std::lround(255.0 * std::clamp(t, 0.0, 1.0)));
      out.put(char(v));
    }
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

void save_preview_pgm(const RealGrid& g, const std::string& path) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < g.size(); ++i) {
    lo = std::min(lo, g.data()[i]);
    hi = std::max(hi, g.data()[i]);
  }
  write_pgm(g, lo, hi, path);
}

void save_kernel_pgm(const Kernel& k, const std::string& path) {
  double hi = 0.0;
  for (std::size_t i = 0; i < k.samples.size(); ++i)
    hi = std::max(hi, k.samples.data()[i]);
  write_pgm(k.samples, 0.0, hi, path);
}

void save_profile_csv(const CompressedProfile& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write profile csv: " + path);
  out << "position,amplitude\n";
  out.precision(12);
  for (std::size_t i = 0; i < p.position.size(); ++i)
    out << p.position[i] << "," << p.amplitude[i] << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace sqsar
