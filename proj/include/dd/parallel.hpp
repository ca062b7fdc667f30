#pragma once

#include <array>
#include <cstddef>
#include <utility>

namespace dd::par {

// Reductions run over a fixed number of chunks, each chunk summed serially and
// the partials combined in chunk order. The result is bit-identical for any
// thread count, which keeps reports reproducible under --threads.
inline constexpr int kChunks = 64;

template <class F>
double sum(std::size_t n, F&& term) {
    if (n == 0) return 0.0;
    std::array<double, kChunks> partial{};
#pragma omp parallel for schedule(static)
    for (int c = 0; c < kChunks; ++c) {
        const std::size_t lo = n * static_cast<std::size_t>(c) / kChunks;
        const std::size_t hi = n * static_cast<std::size_t>(c + 1) / kChunks;
        double acc = 0.0;
        for (std::size_t i = lo; i < hi; ++i) acc += term(i);
        partial[static_cast<std::size_t>(c)] = acc;
    }
    double total = 0.0;
    for (int c = 0; c < kChunks; ++c) total += partial[static_cast<std::size_t>(c)];
    return total;
}

template <class F>
double max(std::size_t n, F&& term) {
    if (n == 0) return 0.0;
    std::array<double, kChunks> partial{};
#pragma omp parallel for schedule(static)
    for (int c = 0; c < kChunks; ++c) {
        const std::size_t lo = n * static_cast<std::size_t>(c) / kChunks;
        const std::size_t hi = n * static_cast<std::size_t>(c + 1) / kChunks;
        double m = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            const double v = term(i);
            if (v > m) m = v;
        }
        partial[static_cast<std::size_t>(c)] = m;
    }
    double m = 0.0;
    for (int c = 0; c < kChunks; ++c)
        if (partial[static_cast<std::size_t>(c)] > m) m = partial[static_cast<std::size_t>(c)];
    return m;
}

template <class F>
void for_each(std::size_t n, F&& body) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
        body(static_cast<std::size_t>(i));
}

}  // namespace dd::par
