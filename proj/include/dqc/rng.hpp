/** \file
 * Deterministic helpers over std::mt19937_64. The standard distributions
 * are implementation-defined, so seeded results would differ across
 * standard libraries; these fixed mappings keep every draw reproducible
 * from (algorithm, seed) alone.
 */
#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace dqc {

/// Uniform double in [0, 1) from the top 53 bits.
inline double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform index in [0, n). Modulo bias is negligible for n << 2^64.
inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
    return static_cast<std::size_t>(rng() % n);
}

/// Fisher-Yates with the fixed index mapping above.
template <typename T>
void shuffle_deterministic(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::size_t j = uniform_index(rng, i);
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace dqc
