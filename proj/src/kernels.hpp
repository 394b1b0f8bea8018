#pragma once

// Hot Monte Carlo kernels, implemented in limitlaw_kernel.cpp which is built
// with vector-math flags. Everything here is deterministic per (seed, index):
// batches fill out[i] from substream (seed, label, index0 + i) regardless of
// the number of OpenMP threads.

#include <cstdint>
#include <span>
#include <vector>

#include "tailest/rng.hpp"

namespace tailest::kernel {

// out[i] = inv_sqrt_norm * sum_{j=N..1} weights[j-1] * (E_j - 1).
void limit_law_batch(std::span<const double> weights, double inv_sqrt_norm,
                     std::uint64_t seed, rng::StreamLabel label,
                     std::uint64_t index0, std::span<double> out, bool parallel);

// Mixture: per draw, tau = u/2 from the first substream output, then one
// normalized L(tau, n_terms) variate from the remaining outputs.
void mixture_batch(std::uint64_t n_terms, std::uint64_t seed,
                   std::uint64_t index0, std::span<double> out, bool parallel);

// weights[j-1] = j^exponent for j = 1..n.
std::vector<double> power_weights(std::uint64_t n, double exponent);

// Fills the m smallest of the n uniforms u_i = substream(seed, label, i),
// i = 0..n-1, into out ascending. The uniforms are bit-identical to scalar
// generation (integer mixing plus one exact multiply), so callers can match
// full-sample code paths exactly. workbuf is reused scratch of size n.
void smallest_uniforms(std::uint64_t seed, rng::StreamLabel label,
                       std::uint64_t n, std::span<double> out_ascending,
                       std::vector<double>& workbuf);

} // namespace tailest::kernel
