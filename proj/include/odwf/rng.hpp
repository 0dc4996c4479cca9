#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace odwf {

/// Seeded random stream owned by exactly one replication.
///
/// All variates are derived from raw 64-bit engine output so that a given
/// seed produces the same sequence on every standard library.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1].
    double uniform_positive() { return 1.0 - uniform(); }

    /// Exponential with mean 1.
    double exponential();

    /// Uniform integer on [0, n); n must be positive.
    std::size_t below(std::size_t n);

    /// Number of failures before the first success of i.i.d. Bernoulli(p)
    /// trials. Returns SIZE_MAX when p <= 0.
    std::size_t geometric_skip(double p);

  private:
    std::mt19937_64 engine_;
};

/// Counter-based derivation of an independent child seed.
std::uint64_t split_seed(std::uint64_t master, std::uint64_t index);

}  // namespace odwf
