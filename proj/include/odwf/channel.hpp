#pragma once

#include <stdexcept>

#include "odwf/rng.hpp"

namespace odwf::channel {

/// Squared magnitude |H|^2 of a CN(0,1) fading coefficient.
struct LinkGain {
    double power_gain = 0.0;
};

/// Packet rate together with the threshold beta that parameterizes it.
///
/// Fixed scenario:  rate = log2(1 + p ln beta), a link is connected iff
///                  its gain is at least ln beta.
/// Mobile scenario: rate = N log2 beta, a link is connected iff the relay
///                  lies within (p / beta)^(1/alpha) of the transmitter.
class RateThreshold {
  public:
    static RateThreshold fixed_from_beta(double power, double beta);
    static RateThreshold fixed_from_rate(double power, double rate);
    static RateThreshold mobile_from_beta(int subcarriers, double beta);

    double rate() const { return rate_; }
    double beta() const { return beta_; }
    /// ln beta, stored directly so the connectivity test never round-trips
    /// through exp/log2.
    double log_beta() const { return log_beta_; }
    /// Probability that an Exp(1) gain clears the fixed-scenario threshold.
    double connect_probability() const { return 1.0 / beta_; }

  private:
    RateThreshold(double rate, double beta, double log_beta)
        : rate_(rate), beta_(beta), log_beta_(log_beta) {}

    double rate_;
    double beta_;
    double log_beta_;
};

class QuadratureError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

LinkGain sample_power_gain(RandomStream& rng);

double mutual_information(double power, LinkGain gain);

/// `r` must have been built for the same `power`.
bool is_connected_fixed(const RateThreshold& r, double power, LinkGain gain);

double coverage_radius(double power, double beta, double alpha);

bool is_connected_mobile(const RateThreshold& r, double power, double distance,
                         double alpha);

/// N * E[log2(1 + p g / d^alpha)] with g ~ Exp(1), by Gauss-Legendre
/// panels on a truncated domain. Validation oracle only; the simulation
/// uses the pathloss approximation. Throws QuadratureError when the
/// truncation plus refinement error estimate exceeds 1e-6 bits.
double ergodic_capacity_exact(double power, double distance, double alpha,
                              int subcarriers, int quadrature_nodes);

}  // namespace odwf::channel
