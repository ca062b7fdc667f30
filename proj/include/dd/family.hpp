#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dd/grid.hpp"

namespace dd {

/// One member of the versioned data family: a closed-form sampler (so
/// dilations phi_lambda(x) = lambda^{n/2} phi(lambda x) are exact) plus a name.
struct FamilyMember {
    std::string name;
    std::function<complexd(const Vec3&)> sampler;
};

/// The fixed verification family: Gaussians of widths {0.5, 1, 2}, modulated
/// Gaussians e^{i k x_1} e^{-|x|^2} with k in {2, 5}, and one band-limited
/// random field with mode amplitudes drawn from the seeded generator. The
/// band-limited modes sit on the lattice of the given half-width so they stay
/// exact under spatial refinement.
std::vector<FamilyMember> versioned_family(int dims, double half_width, std::uint64_t seed);

/// Smooth members with spectra essentially inside |xi| <= xi_max (Gaussian
/// tails below e^-9 there): wide Gaussians, a slow modulation, and a seeded
/// low-mode sum. Used where high-order flows make fast modes wrap the torus.
std::vector<FamilyMember> low_frequency_family(int dims, double half_width, std::uint64_t seed, double xi_max);

/// One-dimensional member built directly from lattice modes of the given
/// half-width: a smooth bump of amplitudes over xi in
/// [center - width, center + width] with seeded phases. Exactly band-limited
/// on every refinement of the base grid, smooth in x (rapid spatial decay).
FamilyMember banded_member(double half_width, double xi_center, double xi_width, std::uint64_t seed);

WaveField materialize(const FamilyMember& member, GridPtr grid);

/// lambda^{n/2} phi(lambda x) as a new member.
FamilyMember dilate(const FamilyMember& member, int dims, double lambda);

/// Deterministic uniform doubles in [0,1) from splitmix64 (stdlib-independent).
class SeededUniform {
public:
    explicit SeededUniform(std::uint64_t seed) : state_(seed) {}
    double next();
    double next_gaussian();  // Box-Muller

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace dd
