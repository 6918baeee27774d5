#pragma once

#include <cstdint>

namespace discgeom {

// Deterministic 64-bit generator (splitmix64). Used everywhere randomness is
// needed so that reports are byte-identical across platforms and standard
// library versions; std::uniform_*_distribution is implementation-defined.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n). Unbiased enough for sampling work at n << 2^64.
    std::uint64_t next_below(std::uint64_t n) { return n ? next_u64() % n : 0; }

    // Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Child generator for a named stream; documented splitting scheme:
    // child seed = splitmix64 step of (parent seed ^ tag).
    Rng split(std::uint64_t tag) const {
        Rng r(state_ ^ tag);
        r.next_u64();
        return r;
    }

  private:
    std::uint64_t state_;
};

}  // namespace discgeom
