#include "dd/propagator.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "dd/parallel.hpp"
#include "dd/spectral.hpp"

namespace dd {
namespace {

std::vector<double> tabulate_symbol(const Grid& grid, const DispersionSymbol& symbol) {
    std::vector<double> table(grid.site_count());
    par::for_each(table.size(), [&](std::size_t k) { table[k] = symbol.eval(grid.mode_wavenumber(k)); });
    return table;
}

WaveField phase_evolve(const WaveField& f, const std::vector<double>& mode_symbol, double theta) {
    if (!std::isfinite(theta))
        throw std::domain_error("propagator: profile value is not finite at the requested time");
    const Grid& g = *f.grid;
    std::vector<complexd> spec(g.site_count());
    detail::fft_forward(g, f.values.data(), spec.data());
    const double scale = 1.0 / static_cast<double>(g.site_count());
    par::for_each(spec.size(), [&](std::size_t k) { spec[k] *= scale * std::polar(1.0, theta * mode_symbol[k]); });
    WaveField out = zero_field(f.grid);
    detail::fft_backward(g, spec.data(), out.values.data());
    return out;
}

}  // namespace

WaveField evolve(const WaveField& phi, const TimeProfile& profile, const DispersionSymbol& symbol, double t) {
    return phase_evolve(phi, tabulate_symbol(*phi.grid, symbol), profile.b(t));
}

WaveField evolve_between(const WaveField& u_s, const TimeProfile& profile, const DispersionSymbol& symbol,
                         double s, double t) {
    return phase_evolve(u_s, tabulate_symbol(*u_s.grid, symbol), profile.b(t) - profile.b(s));
}

Propagator::Propagator(GridPtr grid, DispersionSymbol symbol, TimeProfile profile)
    : grid_(std::move(grid)), symbol_(std::move(symbol)), profile_(std::move(profile)) {
    mode_symbol_ = tabulate_symbol(*grid_, symbol_);
}

WaveField Propagator::at(const WaveField& phi, double t) const {
    if (phi.grid.get() != grid_.get()) throw std::invalid_argument("propagator: grid mismatch");
    return phase_evolve(phi, mode_symbol_, profile_.b(t));
}

WaveField Propagator::between(const WaveField& u_s, double s, double t) const {
    if (u_s.grid.get() != grid_.get()) throw std::invalid_argument("propagator: grid mismatch");
    return phase_evolve(u_s, mode_symbol_, profile_.b(t) - profile_.b(s));
}

Trajectory Propagator::trajectory(const WaveField& phi, double t0, double t1, std::size_t steps) const {
    if (!(t1 > t0) || steps == 0) throw std::invalid_argument("trajectory: bad window or step count");
    Trajectory traj;
    traj.grid = grid_;
    traj.t_begin = t0;
    traj.t_end = t1;
    traj.profile_label = profile_.label;
    traj.symbol_label = symbol_.label;
    traj.fields.reserve(steps + 1);
    for (std::size_t j = 0; j <= steps; ++j) {
        const double t = t0 + (t1 - t0) * static_cast<double>(j) / static_cast<double>(steps);
        traj.fields.push_back(phase_evolve(phi, mode_symbol_, profile_.b(t)));
    }
    return traj;
}

WaveField duhamel(const Trajectory& forcing, const TimeProfile& profile, const DispersionSymbol& symbol,
                  std::size_t j) {
    if (j > forcing.steps()) throw std::out_of_range("duhamel: target index outside trajectory");
    WaveField acc = zero_field(forcing.grid);
    if (j == 0) return acc;
    const double dt = forcing.dt();
    const double tj = forcing.time_at(j);
    for (std::size_t s = 0; s <= j; ++s) {
        const double ts = forcing.time_at(s);
        const double w = (s == 0 || s == j) ? 0.5 * dt : dt;
        const WaveField term = evolve_between(forcing.fields[s], profile, symbol, ts, tj);
        add_scaled(acc, complexd(w * std::abs(profile.bprime(ts)), 0.0), term);
    }
    return acc;
}

WaveField duhamel(const Trajectory& forcing, const TimeProfile& profile, std::size_t j) {
    return duhamel(forcing, profile, builtin_symbol(SymbolKind::laplacian, 2.0), j);
}

std::vector<WaveField> duhamel_all(const Trajectory& forcing, const TimeProfile& profile,
                                   const DispersionSymbol& symbol) {
    const Grid& g = *forcing.grid;
    const std::size_t J = forcing.steps();
    const std::size_t M = g.site_count();
    const std::vector<double> a = tabulate_symbol(g, symbol);
    const double dt = forcing.dt();

    // Spectra of the forcing snapshots (plain DFT; diagonal phases cancel the
    // index twiddles, as in apply_mode_multiplier).
    std::vector<std::vector<complexd>> spec(J + 1, std::vector<complexd>(M));
    par::for_each(J + 1, [&](std::size_t s) { detail::fft_forward(g, forcing.fields[s].values.data(), spec[s].data()); });

    std::vector<double> bval(J + 1), bpabs(J + 1);
    for (std::size_t s = 0; s <= J; ++s) {
        const double ts = forcing.time_at(s);
        bval[s] = profile.b(ts);
        bpabs[s] = std::abs(profile.bprime(ts));
    }

    // Running trapezoid prefix of h_s(k) = |b'(s)| e^{-i b(s) a_k} ghat_s(k);
    // the target-j spectrum is e^{i b(t_j) a_k} (prefix_j - half end weights).
    std::vector<std::vector<complexd>> out_spec(J + 1, std::vector<complexd>(M));
    const double scale = 1.0 / static_cast<double>(M);
    par::for_each(M, [&](std::size_t k) {
        complexd prefix(0.0, 0.0);
        complexd h0(0.0, 0.0);
        for (std::size_t s = 0; s <= J; ++s) {
            const complexd h = bpabs[s] * std::polar(1.0, -bval[s] * a[k]) * spec[s][k];
            if (s == 0) h0 = h;
            prefix += h;
            const complexd integral = s == 0 ? complexd(0.0, 0.0)
                                             : dt * (prefix - 0.5 * h0 - 0.5 * h);
            out_spec[s][k] = scale * std::polar(1.0, bval[s] * a[k]) * integral;
        }
    });

    std::vector<WaveField> out(J + 1, zero_field(forcing.grid));
    par::for_each(J + 1, [&](std::size_t s) { detail::fft_backward(g, out_spec[s].data(), out[s].values.data()); });
    return out;
}

WaveField universal_weight_field(const WaveField& u, const DispersionSymbol& symbol, double s_exp) {
    auto grad = symbol.gradient;
    WaveField spectral_part = apply_mode_multiplier(u, [grad](const Vec3& xi) {
        return complexd(std::sqrt(norm(grad(xi))), 0.0);
    });
    if (s_exp == 0.0) return spectral_part;
    return apply_spatial_weight(bracket_power(-s_exp), spectral_part);
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "t,site,re,im\n";
    char buf[128];
    for (std::size_t j = 0; j < traj.fields.size(); ++j) {
        const double t = traj.time_at(j);
        for (std::size_t i = 0; i < traj.fields[j].size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.16e,%zu,%.16e,%.16e\n", t, i,
                          traj.fields[j].values[i].real(), traj.fields[j].values[i].imag());
            out << buf;
        }
    }
}

void write_trajectory_summary_json(const Trajectory& traj, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    char buf[64];
    out << "{\n  \"schema\": \"dd-report/1\",\n  \"kind\": \"trajectory_summary\",\n";
    out << "  \"profile\": \"" << traj.profile_label << "\",\n";
    out << "  \"symbol\": \"" << traj.symbol_label << "\",\n  \"norms\": [\n";
    for (std::size_t j = 0; j < traj.fields.size(); ++j) {
        std::snprintf(buf, sizeof(buf), "%.16e", traj.time_at(j));
        out << "    {\"t\": " << buf;
        std::snprintf(buf, sizeof(buf), "%.16e", lp_norm(traj.fields[j], 2.0));
        out << ", \"l2\": " << buf << "}" << (j + 1 < traj.fields.size() ? "," : "") << "\n";
    }
    out << "  ]\n}\n";
}

}  // namespace dd
