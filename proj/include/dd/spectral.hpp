#pragma once

#include <functional>
#include <vector>

#include "dd/grid.hpp"

namespace dd {

// Transform convention against the cell-centered lattice:
//   c_k = N^-n sum_j u(x_j) e^{-i xi_k . x_j},   u(x_j) = sum_k c_k e^{+i xi_k . x_j}
// so a plane wave e^{i xi_k . x} maps to a single unit coefficient at k, and
// Parseval reads dx^n sum_j |u_j|^2 = (2R)^n sum_k |c_k|^2.

/// Forward transform; coefficients in row-major DFT index order.
std::vector<complexd> transform(const WaveField& f);

/// Inverse of transform(); exact round trip up to FFT roundoff.
WaveField inverse_transform(GridPtr grid, const std::vector<complexd>& coeffs);

/// (2R)^n sum |c_k|^2 — the spectral side of the Parseval identity.
double spectral_l2_sq(const Grid& grid, const std::vector<complexd>& coeffs);

/// Pointwise spectral action u -> F^-1(m(xi) F u). The index-order phase
/// twiddles of the cell-centered convention cancel for diagonal multipliers,
/// so this path runs on plain DFTs.
WaveField apply_mode_multiplier(const WaveField& f, const std::function<complexd(const Vec3&)>& multiplier);

/// Same action with a precomputed per-mode table (hot path for propagators).
WaveField apply_mode_table(const WaveField& f, const std::vector<complexd>& table);

namespace detail {
// Unnormalized c2c DFTs (FFTW layout); exposed for the propagator internals.
void fft_forward(const Grid& grid, const complexd* in, complexd* out);
void fft_backward(const Grid& grid, const complexd* in, complexd* out);
}  // namespace detail

}  // namespace dd
