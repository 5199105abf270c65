#pragma once

#include "sqsar/grid.hpp"
#include "sqsar/optics.hpp"

namespace sqsar {

// Slow, obviously-correct serial counterparts of the production kernels.
// Tests validate the fast paths against these; the benchmark target reports
// the gap.
namespace reference {

// Textbook O(n^2)-per-line 2-D DFT, same conventions as fft2d_forward
// (unnormalized forward, 1/(rows*cols) on the inverse).
ComplexGrid dft2d(const ComplexGrid& in, bool inverse);

// Direct circular convolution with the kernel scaled to unit sample sum,
// matching the unit-DC-gain blur the forward model applies in the DFT
// domain.
RealGrid blur_circular(const RealGrid& img, const Kernel& kernel);

}  // namespace reference
}  // namespace sqsar
