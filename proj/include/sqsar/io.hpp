#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sqsar/forward.hpp"
#include "sqsar/grid.hpp"
#include "sqsar/optics.hpp"

namespace sqsar {

// Quadrature frames on disk: magic "SQSARQI1", little-endian u32 rows/cols,
// u64 seed, u8 photon budget, the channel parameter block as f64s, f64
// pitch, u64 parameter digest, then rows*cols f64 samples row-major.
void save_quadrature(const QuadratureImage& img, const std::string& path);
QuadratureImage load_quadrature(const std::string& path);
std::uint64_t params_digest(const ChannelParams& p, PhotonBudget budget,
                            double pitch);

// 8-bit preview of an arbitrary real grid, affine-rescaled so the minimum
// maps to 0 and the maximum to 255.
void save_preview_pgm(const RealGrid& g, const std::string& path);

// Kernel samples rescaled so the peak sample is 255.
void save_kernel_pgm(const Kernel& k, const std::string& path);

// Two-column CSV (position, amplitude) for 1-D profiles.
void save_profile_csv(const CompressedProfile& p, const std::string& path);

// FNV-1a over a byte string; the digest used for params and config files.
std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace sqsar
