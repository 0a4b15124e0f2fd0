// Counter-based seed derivation so every codeword owns an independent,
// scheduling-invariant noise stream.
#pragma once

#include <cstdint>

namespace snnbp {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Seed for (master, stream, index). Stream separates grid points, index
// separates codewords; the result does not depend on evaluation order.
inline constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                           std::uint64_t index) {
    return splitmix64(splitmix64(splitmix64(master) + stream) + index);
}

}  // namespace snnbp
