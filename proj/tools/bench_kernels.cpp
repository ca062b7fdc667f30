// Benchmark comparing the production kernels (FFTW-backed transforms, OpenMP
// reductions) against the serial reference implementations kept for testing.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>

#include "dd/norms.hpp"
#include "dd/propagator.hpp"
#include "dd/reference.hpp"
#include "dd/spectral.hpp"

using clock_type = std::chrono::high_resolution_clock;

namespace {

double time_ms(const std::function<void()>& body, int repeats) {
    body();  // warm up (plans, caches)
    const auto t0 = clock_type::now();
    for (int r = 0; r < repeats; ++r) body();
    const auto t1 = clock_type::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / repeats;
}

void row(const char* name, double fast_ms, double slow_ms) {
    std::printf("  %-34s %10.3f ms %12.3f ms %9.1fx\n", name, fast_ms, slow_ms, slow_ms / fast_ms);
}

}  // namespace

int main(int argc, char** argv) {
    const int N = argc > 1 ? std::atoi(argv[1]) : 256;
    const int repeats = argc > 2 ? std::atoi(argv[2]) : 5;
    std::printf("kernel benchmark, n=1, N=%d, threads=%d, %d repeats\n", N, omp_get_max_threads(), repeats);
    std::printf("  %-34s %13s %15s %10s\n", "kernel", "parallel", "serial ref", "speedup");

    auto grid = dd::make_grid(1, N, 20.0);
    const dd::WaveField phi =
        dd::make_field(grid, [](const dd::Vec3& x) { return dd::complexd(std::exp(-x[0] * x[0]), 0.0); });
    const dd::TimeProfile profile = dd::builtin_profile(dd::ProfileKind::signed_power, 2.0);
    const dd::DispersionSymbol symbol = dd::builtin_symbol(dd::SymbolKind::radial_power, 2.0);

    row("forward transform",
        time_ms([&] { (void)dd::transform(phi); }, repeats),
        time_ms([&] { (void)dd::ref::dft(phi); }, repeats));

    const auto half_derivative = [](const dd::Vec3& xi) {
        return dd::complexd(std::sqrt(dd::norm(xi)), 0.0);
    };
    row("multiplier apply |D|^{1/2}",
        time_ms([&] { (void)dd::apply_mode_multiplier(phi, half_derivative); }, repeats),
        time_ms([&] { (void)dd::ref::apply_mode_multiplier(phi, half_derivative); }, repeats));

    row("propagator evolve",
        time_ms([&] { (void)dd::evolve(phi, profile, symbol, 0.7); }, repeats),
        time_ms([&] { (void)dd::ref::evolve(phi, profile, symbol, 0.7); }, repeats));

    row("L4 norm",
        time_ms([&] { (void)dd::lp_norm(phi, 4.0); }, repeats * 20),
        time_ms([&] { (void)dd::ref::lp_norm(phi, 4.0); }, repeats * 20));

    dd::Propagator flow(grid, symbol, profile);
    const dd::Trajectory traj = flow.trajectory(phi, 0.0, 2.0, 128);
    dd::MixedNormSpec spec;
    spec.time_exponent = 8.0;
    spec.space_exponent = 4.0;
    auto bp = profile.bprime;
    spec.time_weight = [bp](double t) { return std::abs(bp(t)); };
    const double serial_mixed = time_ms(
        [&] {
            double acc = 0.0;
            const double dt = traj.dt();
            for (std::size_t j = 0; j <= traj.steps(); ++j) {
                const double inner = dd::ref::lp_norm(traj.fields[j], 4.0);
                acc += dd::trapezoid_weight(j, traj.steps(), dt) * spec.time_weight(traj.time_at(j)) *
                       std::pow(inner, 8.0);
            }
            volatile double sink = std::pow(acc, 1.0 / 8.0);
            (void)sink;
        },
        repeats);
    row("mixed norm L8_t L4_x (J=128)",
        time_ms([&] { (void)dd::mixed_norm(traj, spec); }, repeats), serial_mixed);

    return 0;
}
