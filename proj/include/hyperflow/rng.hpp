#pragma once

#include <cstdint>
#include <random>

namespace hyperflow {

// Uniform draws built directly on the mt19937_64 output stream instead of
// std::uniform_real_distribution, whose value sequence is not pinned by the
// standard. Same seed gives the same bytes on every platform.
inline double rand_u01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

inline double rand_uniform(std::mt19937_64& gen, double lo, double hi) {
    return lo + (hi - lo) * rand_u01(gen);
}

} // namespace hyperflow
