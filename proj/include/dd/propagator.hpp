#pragma once

#include <vector>

#include "dd/grid.hpp"
#include "dd/profiles.hpp"
#include "dd/symbols.hpp"

namespace dd {

/// Fields sampled on a uniform time grid over [t_begin, t_end].
struct Trajectory {
    GridPtr grid;
    double t_begin = 0.0;
    double t_end = 0.0;
    std::vector<WaveField> fields;  // steps() + 1 entries
    std::string profile_label;
    std::string symbol_label;

    std::size_t steps() const { return fields.empty() ? 0 : fields.size() - 1; }
    double dt() const { return (t_end - t_begin) / static_cast<double>(steps()); }
    double time_at(std::size_t j) const {
        return t_begin + (t_end - t_begin) * static_cast<double>(j) / static_cast<double>(steps());
    }
};

/// e^{i b(t) a(D)} phi — the exact multiplier solution of the homogeneous IVP
/// from time 0. Unitary on L2 for any real symbol and profile.
WaveField evolve(const WaveField& phi, const TimeProfile& profile, const DispersionSymbol& symbol, double t);

/// e^{i (b(t) - b(s)) a(D)} u_s — data prescribed at time s instead of 0.
WaveField evolve_between(const WaveField& u_s, const TimeProfile& profile, const DispersionSymbol& symbol,
                         double s, double t);

/// Caches the per-mode symbol table for repeated evolutions on one grid.
class Propagator {
public:
    Propagator(GridPtr grid, DispersionSymbol symbol, TimeProfile profile);

    const TimeProfile& profile() const { return profile_; }
    const DispersionSymbol& symbol() const { return symbol_; }
    const std::vector<double>& mode_symbol() const { return mode_symbol_; }

    WaveField at(const WaveField& phi, double t) const;                    // e^{i b(t) a(D)} phi
    WaveField between(const WaveField& u_s, double s, double t) const;     // e^{i (b(t)-b(s)) a(D)} u_s
    Trajectory trajectory(const WaveField& phi, double t0, double t1, std::size_t steps) const;

private:
    GridPtr grid_;
    DispersionSymbol symbol_;
    TimeProfile profile_;
    std::vector<double> mode_symbol_;
};

/// Retarded weighted integral trapezoid-quadratured over the forcing grid:
///   integral_0^{t_j} |b'(s)| e^{i (b(t_j)-b(s)) a(D)} g(s) ds
/// with the symbol defaulting to the Laplacian. j = 0 gives the zero field.
WaveField duhamel(const Trajectory& forcing, const TimeProfile& profile, const DispersionSymbol& symbol,
                  std::size_t j);
WaveField duhamel(const Trajectory& forcing, const TimeProfile& profile, std::size_t j);

/// All target indices at once via spectral prefix sums; identical integrals,
/// O(J) instead of O(J^2) field work. Results independent of thread count.
std::vector<WaveField> duhamel_all(const Trajectory& forcing, const TimeProfile& profile,
                                   const DispersionSymbol& symbol);

/// |grad a(D)|^{1/2} then <x>^{-s_exp}: the invariant-estimate weight applied
/// to a snapshot. The zero mode (gradient set to 0) drops out.
WaveField universal_weight_field(const WaveField& u, const DispersionSymbol& symbol, double s_exp);

void write_trajectory_csv(const Trajectory& traj, const std::string& path);
void write_trajectory_summary_json(const Trajectory& traj, const std::string& path);

}  // namespace dd
