#include "odwf/rng.hpp"

#include <cmath>
#include <limits>

namespace odwf {

double RandomStream::exponential() { return -std::log(uniform_positive()); }

std::size_t RandomStream::below(std::size_t n) {
    const std::uint64_t range = n;
    // Reject the short tail so every residue is equally likely.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x = engine_();
    while (x >= limit) {
        x = engine_();
    }
    return static_cast<std::size_t>(x % range);
}

std::size_t RandomStream::geometric_skip(double p) {
    if (p >= 1.0) {
        return 0;
    }
    if (p <= 0.0) {
        return std::numeric_limits<std::size_t>::max();
    }
    const double skip = std::floor(std::log(uniform_positive()) / std::log1p(-p));
    if (skip >= static_cast<double>(std::numeric_limits<std::size_t>::max() / 2)) {
        return std::numeric_limits<std::size_t>::max();
    }
    return static_cast<std::size_t>(skip);
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

}  // namespace odwf
