#pragma once

#include <optional>
#include <string>
#include <vector>

namespace odwf::analytics {

/// Closed-form values for one operating point. Fields that do not apply to
/// a scheme stay empty. `flags` lists the validity conditions found to
/// hold (finite-K surrogates, ratio <= kVanishingRatio) and marks
/// order-of-magnitude results with "orderwise_only".
struct Prediction {
    double T = 0.0;
    double T_max = 0.0;
    double D = 1.0;
    std::optional<double> P_RD;
    std::optional<double> occupancy_alpha;
    std::optional<double> delta;
    std::optional<double> c;
    /// Finite-K throughput N delta^N / (1 + delta^N) log2(1 + p ln beta).
    std::optional<double> T_finite_k;
    std::optional<double> occupancy_alpha_limit;
    /// Throughput-optimal threshold where the result names one.
    std::optional<double> beta_opt;
    std::vector<std::string> flags;

    bool has(const std::string& flag) const;
};

/// A ratio that "tends to zero" is taken as satisfied at or below this.
inline constexpr double kVanishingRatio = 0.01;

/// 1 - (1 - 1/beta)^K.
double delta_of(double beta, double K);

/// ln(2^{1/N} / (2^{1/N} - 1)).
double c_of(int N);

/// delta^N / (1 + delta^N), the stationary relay-phase probability.
double p_rd(double beta, double K, int N);

struct Occupancy {
    double value = 0.0;
    /// (beta / K) c, the K -> infinity companion.
    double limit = 0.0;
    /// beta == 1, so delta == 1 exactly; `value` is then the limiting value 1.
    bool singular = false;
};

/// Stationary fraction of relays holding a packet in one bank.
Occupancy occupancy_alpha(double beta, double K, int N);

Prediction odwf_fixed_prediction(double K, int N, double p, double beta);
Prediction baseline_fixed_prediction(double K, int N, double p);
Prediction odwf_mobile_prediction(double K, int N, double alpha, double beta, double q);

/// Regime split on q K^{1/(M-1)}. A value in [0.5, 2] is reported under the
/// bounded regime with the "regime_indeterminate" flag.
Prediction baseline_mobile_prediction(double K, int N, double alpha, int M, double q);

/// Ratio of optimal mobile throughputs, ODWF over baseline (unit constants).
double mobile_gain_ratio(double K, int N, double alpha, int M, double q);

/// K d^2 / (2 R^2) with d = (p / beta)^{1/alpha}. Throws
/// std::domain_error when d > R.
double expected_covered_relays(double K, double p, double beta, double alpha, double R);

}  // namespace odwf::analytics
