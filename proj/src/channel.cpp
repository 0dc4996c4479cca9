#include "odwf/channel.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace odwf::channel {

RateThreshold RateThreshold::fixed_from_beta(double power, double beta) {
    if (!(power > 0.0) || !(beta >= 1.0)) {
        throw std::invalid_argument("fixed rate threshold needs p > 0 and beta >= 1");
    }
    const double log_beta = std::log(beta);
    return RateThreshold(std::log2(1.0 + power * log_beta), beta, log_beta);
}

RateThreshold RateThreshold::fixed_from_rate(double power, double rate) {
    if (!(power > 0.0) || !(rate >= 0.0)) {
        throw std::invalid_argument("fixed rate threshold needs p > 0 and r >= 0");
    }
    const double log_beta = std::expm1(rate * std::numbers::ln2) / power;
    return RateThreshold(rate, std::exp(log_beta), log_beta);
}

RateThreshold RateThreshold::mobile_from_beta(int subcarriers, double beta) {
    if (subcarriers < 1 || !(beta >= 1.0)) {
        throw std::invalid_argument("mobile rate threshold needs N >= 1 and beta >= 1");
    }
    return RateThreshold(subcarriers * std::log2(beta), beta, std::log(beta));
}

LinkGain sample_power_gain(RandomStream& rng) { return LinkGain{rng.exponential()}; }

double mutual_information(double power, LinkGain gain) {
    return std::log2(1.0 + power * gain.power_gain);
}

bool is_connected_fixed(const RateThreshold& r, double /*power*/, LinkGain gain) {
    return gain.power_gain >= r.log_beta();
}

double coverage_radius(double power, double beta, double alpha) {
    return std::pow(power / beta, 1.0 / alpha);
}

bool is_connected_mobile(const RateThreshold& r, double power, double distance,
                         double alpha) {
    return distance <= coverage_radius(power, r.beta(), alpha);
}

namespace {

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Legendre roots by Newton iteration on the three-term recurrence.
GaussRule gauss_legendre(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double derivative = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            derivative = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / derivative;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * derivative * derivative);
    }
    return rule;
}

template <class F>
double integrate_panels(const GaussRule& rule, const std::vector<double>& breaks, F&& f) {
    double total = 0.0;
    for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
        const double mid = 0.5 * (breaks[j] + breaks[j + 1]);
        const double half = 0.5 * (breaks[j + 1] - breaks[j]);
        double panel = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            panel += rule.weights[i] * f(mid + half * rule.nodes[i]);
        }
        total += half * panel;
    }
    return total;
}

}  // namespace

double ergodic_capacity_exact(double power, double distance, double alpha,
                              int subcarriers, int quadrature_nodes) {
    if (!(distance > 0.0) || quadrature_nodes < 16 || subcarriers < 1) {
        throw std::invalid_argument("ergodic capacity needs d > 0, N >= 1, nodes >= 16");
    }
    const double snr = power / std::pow(distance, alpha);
    constexpr double kLog2e = std::numbers::log2e;

    // Tail of log2(1 + a g) e^{-g} beyond G, using
    // log2(1 + a g) <= log2(1 + a G) + (g - G) / (G ln 2) for g >= G.
    auto tail_bound = [snr](double cut) {
        return std::exp(-cut) * (std::log2(1.0 + snr * cut) + kLog2e / cut);
    };
    double cut = 8.0;
    while (cut < 700.0 && tail_bound(cut) > 1e-14) {
        cut += 4.0;
    }

    // Geometric panels below min(1, 1/a) resolve the log's curvature scale;
    // unit panels cover the exponential body.
    std::vector<double> breaks{0.0};
    const double scale = std::min(1.0, 1.0 / snr);
    for (int k = 60; k >= 1; --k) {
        breaks.push_back(scale * std::ldexp(1.0, -k));
    }
    for (double x = scale; x < 1.0; x *= 2.0) {
        breaks.push_back(x);
    }
    for (double x = 1.0; x < cut; x += 1.0) {
        breaks.push_back(x);
    }
    breaks.push_back(cut);

    auto integrand = [snr](double g) { return std::log2(1.0 + snr * g) * std::exp(-g); };
    const double coarse = integrate_panels(gauss_legendre(quadrature_nodes), breaks, integrand);
    const double fine =
        integrate_panels(gauss_legendre(quadrature_nodes + 8), breaks, integrand);

    const double error_estimate = tail_bound(cut) + std::abs(fine - coarse);
    if (!std::isfinite(fine) || !(error_estimate <= 1e-6)) {
        throw QuadratureError("ergodic capacity quadrature error estimate exceeds 1e-6 bits");
    }
    return subcarriers * fine;
}

}  // namespace odwf::channel
