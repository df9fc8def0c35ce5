#pragma once

#include "tfm/grid.hpp"

#include <span>

namespace tfm {

// f^(xi) = \int f(t) e^{-2 pi i t.xi} dt as a Riemann sum (weight dx^d),
// sampled on the centered dual grid.
SampledSignal forward_ft(const SampledSignal& f);

// Inverse of forward_ft: F -> \int F(xi) e^{2 pi i x.xi} dxi (weight dxi^d).
SampledSignal inverse_ft(const SampledSignal& F);

// M_{xi0} T_{x0} f, i.e. e^{2 pi i xi0.t} f(t - x0), circular in t.
// x0 must be an integer multiple of the grid spacing on every axis.
SampledSignal translate_modulate(const SampledSignal& f, const Point& x0, const Point& xi0);

namespace detail {

// Unnormalized centered DFT, in place:
//   out[k] = sum_j in[j] exp(sign * 2 pi i (k - m/2)(j - m/2) / m)
// on an m^dim array (m a power of two, m >= 4).
void centered_dft(std::span<Complex> data, int dim, std::size_t m, int sign);

} // namespace detail

} // namespace tfm
