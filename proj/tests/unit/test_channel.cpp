#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "odwf/channel.hpp"
#include "odwf/fading.hpp"
#include "odwf/rng.hpp"

using namespace odwf;
using namespace odwf::channel;

TEST_CASE("rng golden draws") {
    RandomStream rng(42);
    std::mt19937_64 reference(42);
    CHECK(rng.next() == 13930160852258120406ULL);
    reference();
    for (int i = 0; i < 100; ++i) {
        CHECK(rng.next() == reference());
    }
    CHECK(split_seed(42, 0) == 5043374705829640723ULL);
    CHECK(split_seed(42, 1) == 9920616184565843241ULL);
}

TEST_CASE("rng helpers stay in range") {
    RandomStream rng(7);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        CHECK(rng.uniform_positive() > 0.0);
        CHECK(rng.below(7) < 7);
    }
    CHECK(rng.geometric_skip(1.0) == 0);
    CHECK(rng.geometric_skip(0.0) == SIZE_MAX);
}

TEST_CASE("geometric skip has mean (1 - p) / p") {
    RandomStream rng(11);
    const double p = 0.05;
    const int n = 200000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        sum += static_cast<double>(rng.geometric_skip(p));
    }
    const double mean = (1.0 - p) / p;
    const double sd = std::sqrt(1.0 - p) / p;
    CHECK(std::abs(sum / n - mean) < 4.0 * sd / std::sqrt(n));
}

TEST_CASE("rate threshold parameterizations") {
    const auto fixed = RateThreshold::fixed_from_beta(2.0, 50.0);
    CHECK(fixed.rate() == doctest::Approx(std::log2(1.0 + 2.0 * std::log(50.0))).epsilon(1e-14));
    CHECK(fixed.connect_probability() == doctest::Approx(0.02));
    const auto back = RateThreshold::fixed_from_rate(2.0, fixed.rate());
    CHECK(back.beta() == doctest::Approx(50.0).epsilon(1e-12));

    const auto mobile = RateThreshold::mobile_from_beta(3, 8.0);
    CHECK(mobile.rate() == doctest::Approx(9.0).epsilon(1e-14));
}

TEST_CASE("fixed link is connected exactly when mutual information reaches the rate") {
    const double p = 1.5;
    const auto r = RateThreshold::fixed_from_beta(p, 20.0);
    RandomStream rng(3);
    for (int i = 0; i < 20000; ++i) {
        const auto g = sample_power_gain(rng);
        CHECK(g.power_gain >= 0.0);
        const bool by_rate = mutual_information(p, g) >= r.rate() - 1e-12;
        const bool by_gain = is_connected_fixed(r, p, g);
        if (std::abs(g.power_gain - r.log_beta()) > 1e-9) {
            CHECK(by_rate == by_gain);
        }
    }
    CHECK(is_connected_fixed(r, p, LinkGain{r.log_beta()}));
    CHECK_FALSE(is_connected_fixed(r, p, LinkGain{std::nextafter(r.log_beta(), 0.0)}));
}

TEST_CASE("empirical connect probability is 1/beta") {
    RandomStream rng(101);
    for (double beta : {2.0, 10.0, 100.0}) {
        const auto r = RateThreshold::fixed_from_beta(1.0, beta);
        const int n = 200000;
        int hits = 0;
        for (int i = 0; i < n; ++i) {
            hits += is_connected_fixed(r, 1.0, sample_power_gain(rng)) ? 1 : 0;
        }
        const double pr = 1.0 / beta;
        CHECK(std::abs(hits - n * pr) <= 3.0 * std::sqrt(n * pr * (1 - pr)));
    }
}

TEST_CASE("mobile coverage radius") {
    CHECK(coverage_radius(1.0, 100.0, 2.0) == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(coverage_radius(4.0, 1.0, 2.0) == doctest::Approx(2.0).epsilon(1e-14));
    const auto r = RateThreshold::mobile_from_beta(1, 100.0);
    CHECK(is_connected_mobile(r, 1.0, 0.0999, 2.0));
    CHECK_FALSE(is_connected_mobile(r, 1.0, 0.1001, 2.0));
}

TEST_CASE("ergodic capacity matches high-precision oracle") {
    // E[log2(1 + a g)], g ~ Exp(1), computed independently with mpmath.
    CHECK(ergodic_capacity_exact(1.0, 1.0, 2.0, 1, 32) == doctest::Approx(0.8603473822708860).epsilon(1e-9));
    CHECK(ergodic_capacity_exact(10.0, 1.0, 2.0, 1, 32) == doctest::Approx(2.906514808414805).epsilon(1e-9));
    CHECK(ergodic_capacity_exact(1.0, 0.1, 2.0, 1, 32) == doctest::Approx(5.884048233683473).epsilon(1e-9));
    CHECK(ergodic_capacity_exact(1.0, 1.0, 2.0, 3, 32) == doctest::Approx(3 * 0.8603473822708860).epsilon(1e-9));
    CHECK_THROWS_AS(ergodic_capacity_exact(1.0, 1.0, 2.0, 1, 8), std::invalid_argument);
}

TEST_CASE("ergodic capacity lies between the Jensen bounds") {
    const double gamma = 0.57721566490153286;
    double previous_gap = 1e9;
    for (double a : {2.0, 10.0, 100.0, 1e3, 1e4, 1e6}) {
        const double c = ergodic_capacity_exact(a, 1.0, 2.0, 1, 32);
        const double lower = std::log2(a) - gamma / std::numbers::ln2;
        const double upper = std::log2(1.0 + a);
        CHECK(c >= lower - 1e-9);
        CHECK(c <= upper);
        const double gap = (upper - c) / c;
        CHECK(gap < previous_gap);
        previous_gap = gap;
    }
}

TEST_CASE("sampled and thresholded fixed channels agree in law") {
    const std::size_t K = 200;
    const int N = 2;
    const auto r = RateThreshold::fixed_from_beta(1.0, 40.0);
    RandomStream a(5);
    RandomStream b(6);
    SampledFixedChannel sampled(K, N, r, a);
    ThresholdedFixedChannel thresholded(K, N, 1.0, r, b);

    const int frames = 20000;
    double size_a = 0.0;
    double size_b = 0.0;
    int empty_a = 0;
    int empty_b = 0;
    for (int f = 0; f < frames; ++f) {
        for (int n = 0; n < N; ++n) {
            for (Hop h : {Hop::SourceRelay, Hop::RelayDestination}) {
                const auto sa = sampled.connected(h, n);
                const auto sb = thresholded.connected(h, n);
                CHECK(std::is_sorted(sa.begin(), sa.end()));
                CHECK(std::is_sorted(sb.begin(), sb.end()));
                size_a += static_cast<double>(sa.size());
                size_b += static_cast<double>(sb.size());
                empty_a += sa.empty() ? 1 : 0;
                empty_b += sb.empty() ? 1 : 0;
            }
        }
        sampled.next_frame();
        thresholded.next_frame();
    }
    const double draws = frames * N * 2.0;
    const double expected = K / 40.0;
    CHECK(size_a / draws == doctest::Approx(expected).epsilon(0.01));
    CHECK(size_b / draws == doctest::Approx(expected).epsilon(0.01));
    const double p_empty = std::pow(1.0 - 1.0 / 40.0, K);
    const double sd = std::sqrt(p_empty * (1 - p_empty) / draws);
    CHECK(std::abs(empty_a / draws - p_empty) < 4 * sd);
    CHECK(std::abs(empty_b / draws - p_empty) < 4 * sd);
}

TEST_CASE("connected set is stable within a frame") {
    RandomStream rng(9);
    SampledFixedChannel ch(100, 1, RateThreshold::fixed_from_beta(1.0, 5.0), rng);
    const auto first = ch.connected(Hop::SourceRelay, 0);
    const std::vector<RelayId> copy(first.begin(), first.end());
    const auto again = ch.connected(Hop::SourceRelay, 0);
    CHECK(std::vector<RelayId>(again.begin(), again.end()) == copy);
}

TEST_CASE("gain table channel thresholds explicit gains") {
    const auto r = RateThreshold::fixed_from_beta(1.0, 10.0);
    GainTableChannel ch(4, 2, 1.0, r);
    CHECK(ch.connected(Hop::SourceRelay, 0).empty());
    ch.set_gain(Hop::SourceRelay, 0, 3, LinkGain{10.0});
    ch.set_gain(Hop::SourceRelay, 0, 1, LinkGain{r.log_beta()});
    ch.set_gain(Hop::SourceRelay, 1, 2, LinkGain{0.1});
    const auto s0 = ch.connected(Hop::SourceRelay, 0);
    const auto s1 = ch.connected(Hop::SourceRelay, 1);
    CHECK(std::vector<RelayId>(s0.begin(), s0.end()) == std::vector<RelayId>{1, 3});
    CHECK(s1.empty());
    ch.set_all(Hop::RelayDestination, LinkGain{5.0});
    CHECK(ch.connected(Hop::RelayDestination, 1).size() == 4);
}
