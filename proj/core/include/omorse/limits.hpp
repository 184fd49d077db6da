#pragma once

#include <cstddef>

namespace omorse {

// Hard ceiling of the bitmask representation.
inline constexpr std::size_t kMaxGroundSize = 32;

struct Limits {
    std::size_t max_n = 12;
    std::size_t max_d = 6;

    static Limits unsafe() { return Limits{16, 8}; }
};

}  // namespace omorse
