#include "dd/family.hpp"

#include <cmath>

namespace dd {

double SeededUniform::next() {
    // splitmix64
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

double SeededUniform::next_gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u = next(), v = next();
    if (u <= 0.0) u = 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u));
    spare_ = r * std::sin(2.0 * M_PI * v);
    have_spare_ = true;
    return r * std::cos(2.0 * M_PI * v);
}

std::vector<FamilyMember> versioned_family(int dims, double half_width, std::uint64_t seed) {
    std::vector<FamilyMember> fam;
    for (double w : {0.5, 1.0, 2.0}) {
        fam.push_back({"gaussian_w" + std::to_string(w),
                       [w](const Vec3& x) { return complexd(std::exp(-norm_sq(x) / (w * w)), 0.0); }});
    }
    for (double k : {2.0, 5.0}) {
        fam.push_back({"modulated_k" + std::to_string(static_cast<int>(k)), [k](const Vec3& x) {
                           return std::polar(std::exp(-norm_sq(x)), k * x[0]);
                       }});
    }

    // Band-limited random field: 8 lattice modes in the shell 4 <= |k| <= 12
    // (per-axis integer indices), complex Gaussian amplitudes.
    SeededUniform rng(seed ^ 0x8f1bbcdcbfa53e0bULL);
    struct Mode {
        Vec3 xi;
        complexd amp;
    };
    std::vector<Mode> modes;
    const double k0 = M_PI / half_width;
    while (modes.size() < 8) {
        std::array<int, 3> k{0, 0, 0};
        double ksq = 0.0;
        for (int d = 0; d < dims; ++d) {
            k[static_cast<std::size_t>(d)] = static_cast<int>(std::floor(rng.next() * 25.0)) - 12;
            ksq += static_cast<double>(k[static_cast<std::size_t>(d)] * k[static_cast<std::size_t>(d)]);
        }
        const double kn = std::sqrt(ksq);
        if (kn < 4.0 || kn > 12.0) continue;
        Mode m;
        m.xi = Vec3{k0 * k[0], k0 * k[1], k0 * k[2]};
        m.amp = complexd(rng.next_gaussian(), rng.next_gaussian());
        modes.push_back(m);
    }
    fam.push_back({"bandlimited_seed" + std::to_string(seed), [modes](const Vec3& x) {
                       complexd acc(0.0, 0.0);
                       for (const auto& m : modes)
                           acc += m.amp * std::polar(1.0, m.xi[0] * x[0] + m.xi[1] * x[1] + m.xi[2] * x[2]);
                       // Gaussian envelope keeps the member localized away from the torus edge.
                       return acc * std::exp(-norm_sq(x) / 4.0);
                   }});
    return fam;
}

std::vector<FamilyMember> low_frequency_family(int dims, double half_width, std::uint64_t seed, double xi_max) {
    std::vector<FamilyMember> fam;
    const double w0 = 6.0 / xi_max;
    for (double w : {w0, 1.5 * w0}) {
        fam.push_back({"lf_gaussian_w" + std::to_string(w),
                       [w](const Vec3& x) { return complexd(std::exp(-norm_sq(x) / (w * w)), 0.0); }});
    }
    {
        const double k = 0.5 * xi_max, w = 2.0 * w0;
        fam.push_back({"lf_modulated", [k, w](const Vec3& x) {
                           return std::polar(std::exp(-norm_sq(x) / (w * w)), k * x[0]);
                       }});
    }
    {
        SeededUniform rng(seed ^ 0x243f6a8885a308d3ULL);
        const double k0 = M_PI / half_width;
        const int kmax = std::max(1, static_cast<int>(0.6 * xi_max / k0));
        struct Mode {
            Vec3 xi;
            complexd amp;
        };
        std::vector<Mode> modes;
        for (int i = 0; i < 6; ++i) {
            std::array<int, 3> k{0, 0, 0};
            int mag = 0;
            for (int d = 0; d < dims; ++d) {
                k[static_cast<std::size_t>(d)] = static_cast<int>(rng.next() * (2 * kmax + 1)) - kmax;
                mag += std::abs(k[static_cast<std::size_t>(d)]);
            }
            if (mag == 0) k[0] = 1;
            modes.push_back({Vec3{k0 * k[0], k0 * k[1], k0 * k[2]},
                             complexd(rng.next_gaussian(), rng.next_gaussian())});
        }
        const double env = 1.5 * w0;
        fam.push_back({"lf_modes_seed" + std::to_string(seed), [modes, env](const Vec3& x) {
                           complexd acc(0.0, 0.0);
                           for (const auto& m : modes)
                               acc += m.amp * std::polar(1.0, m.xi[0] * x[0] + m.xi[1] * x[1] + m.xi[2] * x[2]);
                           return acc * std::exp(-norm_sq(x) / (env * env));
                       }});
    }
    return fam;
}

FamilyMember banded_member(double half_width, double xi_center, double xi_width, std::uint64_t seed) {
    const double k0 = M_PI / half_width;
    struct Mode {
        double xi;
        complexd amp;
    };
    SeededUniform rng(seed ^ 0x452821e638d01377ULL);
    std::vector<Mode> modes;
    const int k_lo = static_cast<int>(std::ceil((xi_center - xi_width) / k0));
    const int k_hi = static_cast<int>(std::floor((xi_center + xi_width) / k0));
    // Smooth phase in xi (translation plus chirp) keeps the packet localized;
    // rough per-mode phases would spread it over the whole torus.
    const double x_off = 4.0 * rng.next() - 2.0;
    const double chirp = 16.0 * rng.next() - 8.0;
    for (int k = k_lo; k <= k_hi; ++k) {
        const double xi = k * k0;
        const double u = (xi - xi_center) / xi_width;
        const double bump = std::exp(-9.0 * u * u * u * u);  // quartic bump, e^-9 at the edges
        modes.push_back({xi, bump * std::polar(1.0, x_off * xi + chirp * (xi - xi_center) * (xi - xi_center))});
    }
    return {"banded_c" + std::to_string(xi_center) + "_seed" + std::to_string(seed),
            [modes](const Vec3& x) {
                complexd acc(0.0, 0.0);
                for (const auto& m : modes) acc += m.amp * std::polar(1.0, m.xi * x[0]);
                return acc;
            }};
}

WaveField materialize(const FamilyMember& member, GridPtr grid) { return make_field(std::move(grid), member.sampler); }

FamilyMember dilate(const FamilyMember& member, int dims, double lambda) {
    auto base = member.sampler;
    const double scale = std::pow(lambda, 0.5 * dims);
    return {member.name + "_lambda" + std::to_string(lambda), [base, scale, lambda](const Vec3& x) {
                return scale * base(Vec3{lambda * x[0], lambda * x[1], lambda * x[2]});
            }};
}

}  // namespace dd
