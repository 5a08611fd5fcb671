#pragma once

// Internal deterministic sampling helpers for the multistart solvers.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>

namespace openup::detail {

/// Engine keyed by (seed, start index): starts are reproducible independently
/// of how they are scheduled across workers.
inline std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t start_index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(start_index), 0x9e3779b9u};
    return std::mt19937_64(seq);
}

inline std::complex<double> draw_unit_disk(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (;;) {
        const double re = u(rng);
        const double im = u(rng);
        if (re * re + im * im <= 1.0) return {re, im};
    }
}

inline Eigen::VectorXcd draw_disk_vector(std::mt19937_64& rng, Eigen::Index size) {
    Eigen::VectorXcd v(size);
    for (Eigen::Index i = 0; i < size; ++i) v(i) = draw_unit_disk(rng);
    return v;
}

}  // namespace openup::detail
