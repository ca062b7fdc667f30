#pragma once

#include <functional>
#include <vector>

#include "dd/grid.hpp"
#include "dd/profiles.hpp"
#include "dd/symbols.hpp"

// Serial reference implementations of the hot kernels: direct O(M^2) DFT sums
// and plain loops, no FFT and no threading. Tests pin the production kernels
// against these, and the benchmark tool compares their timings.
namespace dd::ref {

std::vector<complexd> dft(const WaveField& f);
WaveField idft(GridPtr grid, const std::vector<complexd>& coeffs);

double lp_norm(const WaveField& f, double p);

WaveField apply_mode_multiplier(const WaveField& f, const std::function<complexd(const Vec3&)>& multiplier);

WaveField evolve(const WaveField& phi, const TimeProfile& profile, const DispersionSymbol& symbol, double t);

double trapezoid(const std::vector<double>& samples, double dt);

}  // namespace dd::ref
