#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "odwf/channel.hpp"

namespace odwf {

enum class Scenario { Fixed, Mobile };
enum class Scheme { Odwf, Baseline };

const char* to_string(Scenario s);
const char* to_string(Scheme s);

/// Invalid configuration value; `key()` names the offending field.
class ConfigError : public std::invalid_argument {
  public:
    ConfigError(std::string key, const std::string& message)
        : std::invalid_argument(key + ": " + message), key_(std::move(key)) {}
    const std::string& key() const { return key_; }

  private:
    std::string key_;
};

struct SystemConfig {
    Scenario scenario = Scenario::Fixed;
    Scheme scheme = Scheme::Odwf;
    std::uint32_t K = 1000;
    int N = 1;
    double p = 1.0;
    double beta = 10.0;
    /// Pathloss exponent (mobile scenario).
    double alpha = 2.0;
    int M = 5;
    double q = 0.1;
    double R = 1.0;
    /// Unset means the default rule, see effective_warmup().
    std::optional<std::uint64_t> warmup_frames;
    std::uint64_t measure_frames = 10000;
    std::uint32_t replications = 1;
    std::uint64_t seed = 1;
    /// Abort threshold on undelivered packets; relay buffers are otherwise
    /// unbounded.
    std::uint64_t buffer_cap = 10'000'000;
    /// Mobile scenario: draw every relay position each frame instead of
    /// sampling coverage membership per region.
    bool exact_positions = false;

    /// Throws ConfigError on the first violated invariant.
    void validate() const;

    /// warmup_frames, or max(10 * ceil(2 c beta^2 / K), 10 / q, 1000) with
    /// the 10 / q term only in the mobile scenario.
    std::uint64_t effective_warmup() const;

    channel::RateThreshold rate() const;
};

}  // namespace odwf
