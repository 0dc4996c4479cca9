#include "odwf/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace odwf::analytics {

bool Prediction::has(const std::string& flag) const {
    return std::find(flags.begin(), flags.end(), flag) != flags.end();
}

double delta_of(double beta, double K) {
    if (beta <= 1.0) {
        return 1.0;
    }
    return -std::expm1(K * std::log1p(-1.0 / beta));
}

double c_of(int N) {
    const double root = std::exp2(1.0 / N);
    return std::log(root / (root - 1.0));
}

double p_rd(double beta, double K, int N) {
    const double dn = std::pow(delta_of(beta, K), N);
    return dn / (1.0 + dn);
}

Occupancy occupancy_alpha(double beta, double K, int N) {
    Occupancy out;
    out.limit = beta / K * c_of(N);
    if (beta <= 1.0) {
        out.value = 1.0;
        out.singular = true;
        return out;
    }
    const double delta = delta_of(beta, K);
    const double log_miss = K * std::log1p(-1.0 / beta);  // ln(1 - delta)
    const double dn = std::pow(delta, N);
    out.value = std::log1p(-delta / std::pow(1.0 + dn, 1.0 / N)) / log_miss;
    return out;
}

Prediction odwf_fixed_prediction(double K, int N, double p, double beta) {
    if (K < 2.0) {
        throw std::invalid_argument("prediction needs K >= 2");
    }
    Prediction out;
    const double rate = std::log2(1.0 + p * std::log(beta));
    out.c = c_of(N);
    out.T = 0.5 * N * rate;
    out.T_max = 0.5 * N * std::log2(1.0 + p * std::log(K));
    out.D = std::max(1.0, 2.0 * *out.c * beta * beta / K);
    out.delta = delta_of(beta, K);
    out.P_RD = p_rd(beta, K, N);
    out.T_finite_k = N * *out.P_RD * rate;
    const auto occ = occupancy_alpha(beta, K, N);
    out.occupancy_alpha = occ.value;
    out.occupancy_alpha_limit = occ.limit;
    if (occ.singular) {
        out.flags.emplace_back("occupancy_singular");
    }
    if (beta / K <= kVanishingRatio) {
        out.flags.emplace_back("beta_over_K_vanishes");
    }
    if (std::abs(std::log(beta) / std::log(K) - 1.0) <= kVanishingRatio) {
        out.flags.emplace_back("ln_beta_over_ln_K_is_1");
    }
    if (std::sqrt(K) / beta <= kVanishingRatio) {
        out.flags.emplace_back("large_rate_regime");
    }
    if (beta / std::sqrt(K) <= kVanishingRatio) {
        out.flags.emplace_back("small_rate_regime");
    }
    return out;
}

Prediction baseline_fixed_prediction(double K, int N, double p) {
    if (K < 2.0) {
        throw std::invalid_argument("prediction needs K >= 2");
    }
    Prediction out;
    out.T = 0.5 * N * std::log2(1.0 + p * 0.5 * std::log(K));
    out.T_max = out.T;
    out.D = 1.0;
    out.beta_opt = std::sqrt(K) / std::log(K);
    return out;
}

Prediction odwf_mobile_prediction(double K, int N, double alpha, double beta, double q) {
    if (!(q > 0.0) || alpha < 2.0) {
        throw std::invalid_argument("mobile prediction needs q > 0 and alpha >= 2");
    }
    Prediction out;
    out.T = 0.5 * N * std::log2(beta);
    out.T_max = N * alpha / 4.0 * std::log2(K);
    out.D = std::max(std::pow(beta, 4.0 / alpha) / (K * q), 1.0 / q);
    out.flags.emplace_back("orderwise_only");
    if (std::pow(beta, 2.0 / alpha) / K <= kVanishingRatio) {
        out.flags.emplace_back("beta_pow_2_over_alpha_over_K_vanishes");
    }
    if (std::pow(beta, 4.0 / alpha) / K <= kVanishingRatio) {
        out.flags.emplace_back("inverse_q_delay_regime");
    }
    return out;
}

Prediction baseline_mobile_prediction(double K, int N, double alpha, int M, double q) {
    if (!(q > 0.0) || M < 2) {
        throw std::invalid_argument("baseline mobile prediction needs q > 0 and M >= 2");
    }
    (void)N;
    Prediction out;
    const double speed = q * std::pow(K, 1.0 / (M - 1));
    out.flags.emplace_back("orderwise_only");
    if (speed >= 0.5 && speed <= 2.0) {
        out.flags.emplace_back("regime_indeterminate");
    }
    if (speed <= 2.0) {
        out.flags.emplace_back("slow_mobility_regime");
        out.T_max = speed;
        out.D = 1.0 / (K * std::pow(q, M - 1));
    } else {
        out.flags.emplace_back("fast_mobility_regime");
        out.T_max = std::log2(K);
        out.D = 1.0;
        out.beta_opt = std::pow(speed, alpha / 4.0);
    }
    out.T = out.T_max;
    return out;
}

double mobile_gain_ratio(double K, int N, double alpha, int M, double q) {
    return odwf_mobile_prediction(K, N, alpha, 1.0, q).T_max /
           baseline_mobile_prediction(K, N, alpha, M, q).T_max;
}

double expected_covered_relays(double K, double p, double beta, double alpha, double R) {
    const double d = std::pow(p / beta, 1.0 / alpha);
    if (d > R) {
        throw std::domain_error("coverage radius exceeds the disk radius");
    }
    return K * d * d / (2.0 * R * R);
}

}  // namespace odwf::analytics
