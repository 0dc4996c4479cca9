#include "odwf/config.hpp"

#include <algorithm>
#include <cmath>

namespace odwf {

const char* to_string(Scenario s) { return s == Scenario::Fixed ? "fixed" : "mobile"; }

const char* to_string(Scheme s) { return s == Scheme::Odwf ? "odwf" : "baseline"; }

void SystemConfig::validate() const {
    if (K < 1) {
        throw ConfigError("K", "must be >= 1");
    }
    if (N < 1) {
        throw ConfigError("N", "must be >= 1");
    }
    if (scenario == Scenario::Fixed && scheme == Scheme::Baseline && N > 64) {
        throw ConfigError("N", "baseline genie matching supports at most 64 subcarriers");
    }
    if (!(p > 0.0) || !std::isfinite(p)) {
        throw ConfigError("p", "must be > 0");
    }
    if (!(beta >= 1.0) || !std::isfinite(beta)) {
        throw ConfigError("beta", "must be >= 1");
    }
    if (!(alpha > 0.0)) {
        throw ConfigError("alpha", "must be > 0");
    }
    if (M < 2) {
        throw ConfigError("M", "must be >= 2");
    }
    if (!(q >= 0.0 && q <= 0.5)) {
        throw ConfigError("q", "must satisfy 0 <= q <= 1/2");
    }
    if (!(R > 0.0)) {
        throw ConfigError("R", "must be > 0");
    }
    if (measure_frames < 1) {
        throw ConfigError("measure_frames", "must be >= 1");
    }
    if (replications < 1) {
        throw ConfigError("replications", "must be >= 1");
    }
    if (buffer_cap < 1) {
        throw ConfigError("buffer_cap", "must be >= 1");
    }
}

std::uint64_t SystemConfig::effective_warmup() const {
    if (warmup_frames) {
        return *warmup_frames;
    }
    const double root = std::exp2(1.0 / N);
    const double c = std::log(root / (root - 1.0));
    double frames = 10.0 * std::ceil(2.0 * c * beta * beta / K);
    if (scenario == Scenario::Mobile && q > 0.0) {
        frames = std::max(frames, std::ceil(10.0 / q));
    }
    return static_cast<std::uint64_t>(std::max(frames, 1000.0));
}

channel::RateThreshold SystemConfig::rate() const {
    return scenario == Scenario::Fixed ? channel::RateThreshold::fixed_from_beta(p, beta)
                                       : channel::RateThreshold::mobile_from_beta(N, beta);
}

}  // namespace odwf
