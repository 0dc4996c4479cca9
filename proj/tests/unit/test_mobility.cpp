#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "odwf/coverage.hpp"
#include "odwf/mobility.hpp"
#include "odwf/rng.hpp"

using namespace odwf;
using namespace odwf::mobility;

namespace {

// 99% upper quantiles of chi-square by degrees of freedom.
double chi2_99(int dof) {
    switch (dof) {
        case 1:
            return 6.6349;
        case 4:
            return 13.2767;
        case 9:
            return 21.6660;
        default:
            FAIL("no quantile for dof " << dof);
            return 0.0;
    }
}

double chi2_uniform(const std::vector<double>& counts) {
    double total = 0.0;
    for (double c : counts) {
        total += c;
    }
    const double expected = total / static_cast<double>(counts.size());
    double stat = 0.0;
    for (double c : counts) {
        stat += (c - expected) * (c - expected) / expected;
    }
    return stat;
}

std::vector<int> initial_regions(std::size_t relays, int region) {
    return std::vector<int>(relays, region);
}

}  // namespace

TEST_CASE("equal-area boundaries match high-precision oracle") {
    const auto g4 = build_geometry(1.0, 4);
    REQUIRE(g4.boundaries().size() == 5);
    CHECK(std::abs(g4.boundaries()[1] - -0.40397275329951721) < 1e-10);
    CHECK(g4.boundaries()[2] == 0.0);
    CHECK(std::abs(g4.boundaries()[3] - 0.40397275329951721) < 1e-10);

    const auto g5 = build_geometry(1.0, 5);
    CHECK(std::abs(g5.boundaries()[1] - -0.49186183276370993) < 1e-10);
    CHECK(std::abs(g5.boundaries()[2] - -0.15773619380001580) < 1e-10);
    CHECK(std::abs(g5.boundaries()[3] - 0.15773619380001580) < 1e-10);
    CHECK(std::abs(g5.boundaries()[4] - 0.49186183276370993) < 1e-10);
}

TEST_CASE("strips have equal area for every region count") {
    for (double radius : {0.5, 1.0, 3.0}) {
        for (int M = 2; M <= 64; ++M) {
            const auto g = build_geometry(radius, M);
            const double disk = std::numbers::pi * radius * radius;
            for (int i = 0; i < M; ++i) {
                CHECK(std::abs(g.strip_area(i) - disk / M) < 1e-10 * disk);
            }
            for (int i = 0; i <= M; ++i) {
                CHECK(std::abs(g.boundaries()[i] + g.boundaries()[M - i]) < 1e-15 * radius);
            }
        }
    }
    CHECK_THROWS(build_geometry(1.0, 1));
    CHECK_THROWS(build_geometry(0.0, 4));
}

TEST_CASE("region lookup") {
    const auto g = build_geometry(1.0, 5);
    CHECK(g.region_of(-0.99) == 0);
    CHECK(g.region_of(-0.3) == 1);
    CHECK(g.region_of(0.0) == 2);
    CHECK(g.region_of(0.3) == 3);
    CHECK(g.region_of(0.99) == 4);
}

TEST_CASE("sampled positions lie in their region") {
    const auto g = build_geometry(2.0, 5);
    RandomStream rng(4);
    for (int i = 0; i < 5; ++i) {
        for (int k = 0; k < 2000; ++k) {
            const auto pos = sample_position_in_region(g, i, rng);
            CHECK(pos.region == i);
            CHECK(std::hypot(pos.coords.x, pos.coords.y) <= 2.0);
            CHECK(g.region_of(pos.coords.x) == i);
        }
    }
}

TEST_CASE("coverage fraction closed form") {
    // Lens of radius 0.5 centered on the unit circle covers 0.111652... of the
    // disk, all of it inside the left half.
    const auto g2 = build_geometry(1.0, 2);
    CHECK(g2.coverage_fraction(0, -1.0, 0.5) == doctest::Approx(2 * 0.11165247968116598).epsilon(1e-12));
    CHECK(g2.coverage_fraction(1, -1.0, 0.5) == doctest::Approx(0.0));
    CHECK(g2.coverage_fraction(1, 1.0, 0.5) == doctest::Approx(2 * 0.11165247968116598).epsilon(1e-12));
    // Full coverage.
    CHECK(g2.coverage_fraction(1, -1.0, 2.0) == doctest::Approx(1.0).epsilon(1e-12));

    const auto g5 = build_geometry(1.0, 5);
    for (double d : {0.2, 0.6, 1.0}) {
        double total = 0.0;
        for (int i = 0; i < 5; ++i) {
            total += g5.coverage_fraction(i, -1.0, d) / 5.0;
        }
        const auto lens = g2.coverage_fraction(0, -1.0, d) / 2.0 + g2.coverage_fraction(1, -1.0, d) / 2.0;
        CHECK(total == doctest::Approx(lens).epsilon(1e-12));
    }
}

TEST_CASE("coverage fraction agrees with Monte Carlo positions") {
    const auto g = build_geometry(1.0, 5);
    RandomStream rng(8);
    const double d = 0.7;
    const int n = 100000;
    for (int i = 0; i < 2; ++i) {
        int hits = 0;
        for (int k = 0; k < n; ++k) {
            const auto pos = sample_position_in_region(g, i, rng);
            hits += distance_to_source(g, pos.coords) <= d ? 1 : 0;
        }
        const double p = g.coverage_fraction(i, -1.0, d);
        CHECK(std::abs(hits - n * p) <= 4.0 * std::sqrt(n * p * (1 - p)) + 1e-9);
    }
}

TEST_CASE("frozen walk never moves") {
    RandomStream rng(1);
    for (int r = 0; r < 5; ++r) {
        for (int k = 0; k < 1000; ++k) {
            CHECK(step_region(r, 5, 0.0, rng) == r);
        }
    }
    RegionWalk walk(5, std::vector<int>{0, 1, 2, 3, 4});
    for (int k = 0; k < 1000; ++k) {
        walk.step(0.0, rng);
    }
    for (RelayId i = 0; i < 5; ++i) {
        CHECK(walk.region_of(i) == static_cast<int>(i));
    }
}

TEST_CASE("walk moves by at most one region and reflects at the ends") {
    RandomStream rng(2);
    int current = 0;
    int left_moves = 0;
    int end_visits = 0;
    for (int k = 0; k < 100000; ++k) {
        const int next = step_region(current, 4, 0.5, rng);
        CHECK(next >= 0);
        CHECK(next < 4);
        CHECK(std::abs(next - current) <= 1);
        if (current == 0) {
            ++end_visits;
            left_moves += next == 0 ? 0 : 1;
        }
        current = next;
    }
    // At an end the walker leaves with probability q.
    CHECK(static_cast<double>(left_moves) / end_visits == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("stationary distribution is uniform") {
    struct Case {
        int M;
        double q;
    };
    for (const auto [M, q] : {Case{5, 0.25}, Case{2, 0.5}, Case{5, 0.1}, Case{10, 0.01}}) {
        CAPTURE(M);
        CAPTURE(q);
        RandomStream rng(2000 + M);
        // Independent walkers started far from stationarity.
        RegionWalk walk(M, initial_regions(2000, 0));
        const int steps = q < 0.05 ? 20000 : 2000;
        for (int k = 0; k < steps; ++k) {
            walk.step(q, rng);
        }
        std::vector<double> counts(M, 0.0);
        for (int i = 0; i < M; ++i) {
            counts[i] = static_cast<double>(walk.members(i).size());
        }
        CHECK(chi2_uniform(counts) < chi2_99(M - 1));
    }
}

TEST_CASE("single walker occupancy over 1e5 steps is uniform") {
    RandomStream rng(77);
    int current = 0;
    std::vector<double> counts(5, 0.0);
    // Thinned so successive samples are nearly independent.
    for (int k = 1; k <= 100000; ++k) {
        current = step_region(current, 5, 0.1, rng);
        if (k % 200 == 0) {
            counts[current] += 1.0;
        }
    }
    CHECK(chi2_uniform(counts) < chi2_99(4));
}

TEST_CASE("walk is reversible: flows between neighbours balance") {
    RandomStream rng(12);
    const int M = 5;
    std::vector<double> up(M, 0.0);
    std::vector<double> down(M, 0.0);
    int current = 2;
    const int steps = 1000000;
    for (int k = 0; k < steps; ++k) {
        const int next = step_region(current, M, 0.2, rng);
        if (next == current + 1) {
            up[current] += 1;
        } else if (next == current - 1) {
            down[next] += 1;
        }
        current = next;
    }
    for (int i = 0; i + 1 < M; ++i) {
        // Each flow is about steps * q / M = 40000.
        CHECK(std::abs(up[i] - down[i]) <= 4.0 * std::sqrt(up[i] + down[i]) + 2.0);
    }
}

TEST_CASE("batched walk matches the per-relay step law") {
    const int M = 5;
    const double q = 0.15;
    const std::size_t relays = 5000;
    RandomStream rng_a(21);
    RandomStream rng_b(22);
    std::vector<int> start(relays);
    for (std::size_t i = 0; i < relays; ++i) {
        start[i] = static_cast<int>(i % M);
    }
    RegionWalk walk(M, start);
    std::vector<int> single(start);

    // Move counts by origin class: end regions, interior regions.
    double walk_end_moves = 0, walk_end = 0, walk_mid_moves = 0, walk_mid = 0;
    double single_end_moves = 0, single_end = 0, single_mid_moves = 0, single_mid = 0;
    for (int k = 0; k < 200; ++k) {
        std::vector<int> before(relays);
        for (std::size_t i = 0; i < relays; ++i) {
            before[i] = walk.region_of(static_cast<RelayId>(i));
        }
        walk.step(q, rng_a);
        for (std::size_t i = 0; i < relays; ++i) {
            const int now = walk.region_of(static_cast<RelayId>(i));
            CHECK(std::abs(now - before[i]) <= 1);
            const bool end = before[i] == 0 || before[i] == M - 1;
            (end ? walk_end : walk_mid) += 1;
            (end ? walk_end_moves : walk_mid_moves) += now != before[i] ? 1 : 0;

            const int prev = single[i];
            single[i] = step_region(prev, M, q, rng_b);
            const bool end_s = prev == 0 || prev == M - 1;
            (end_s ? single_end : single_mid) += 1;
            (end_s ? single_end_moves : single_mid_moves) += single[i] != prev ? 1 : 0;
        }
    }
    CHECK(walk_end_moves / walk_end == doctest::Approx(q).epsilon(0.03));
    CHECK(single_end_moves / single_end == doctest::Approx(q).epsilon(0.03));
    CHECK(walk_mid_moves / walk_mid == doctest::Approx(2 * q).epsilon(0.03));
    CHECK(single_mid_moves / single_mid == doctest::Approx(2 * q).epsilon(0.03));

    std::size_t members = 0;
    for (int i = 0; i < M; ++i) {
        for (RelayId r : walk.members(i)) {
            CHECK(walk.region_of(r) == i);
        }
        members += walk.members(i).size();
    }
    CHECK(members == relays);
}

TEST_CASE("region coverage sampler matches explicit positions") {
    const auto g = build_geometry(1.0, 5);
    RandomStream init(3);
    const std::size_t K = 4000;
    const auto positions = init_relays(g, K, init);
    std::vector<int> regions;
    for (const auto& p : positions) {
        regions.push_back(p.region);
    }
    RegionWalk walk(5, regions);
    const double d = 0.5;
    RandomStream rng_a(31);
    RandomStream rng_b(32);
    CoverageSampler sampler(g, walk, d, rng_a);
    ExplicitPositionChannel explicit_channel(g, walk, d, rng_b);

    const int frames = 400;
    double s_a = 0, d_a = 0, s_b = 0, d_b = 0;
    for (int f = 0; f < frames; ++f) {
        const auto sa = sampler.source_coverage();
        const auto da = sampler.destination_coverage();
        const auto sb = explicit_channel.source_coverage();
        const auto db = explicit_channel.destination_coverage();
        CHECK(std::is_sorted(sa.begin(), sa.end()));
        CHECK(std::is_sorted(da.begin(), da.end()));
        std::set<RelayId> in_d(da.begin(), da.end());
        for (RelayId r : sa) {
            CHECK(in_d.count(r) == 0);
        }
        s_a += static_cast<double>(sa.size());
        d_a += static_cast<double>(da.size());
        s_b += static_cast<double>(sb.size());
        d_b += static_cast<double>(db.size());
        sampler.next_frame();
        explicit_channel.next_frame();
    }
    // Coverage lies inside the end strips at d = 0.5.
    const double expected_s = walk.members(0).size() * g.coverage_fraction(0, -1.0, d);
    const double expected_d = walk.members(4).size() * g.coverage_fraction(4, 1.0, d);
    CHECK(s_a / frames == doctest::Approx(expected_s).epsilon(0.01));
    CHECK(d_a / frames == doctest::Approx(expected_d).epsilon(0.01));
    CHECK(s_b / frames == doctest::Approx(expected_s).epsilon(0.01));
    CHECK(d_b / frames == doctest::Approx(expected_d).epsilon(0.01));
    // Uniform relays: about K times the lens fraction 0.111652...
    CHECK(expected_s == doctest::Approx(K * 0.11165247968116598).epsilon(0.1));
}

TEST_CASE("static positions give deterministic coverage") {
    const auto g = build_geometry(1.0, 4);
    StaticPositionChannel ch(g, 0.3, {Point{-0.9, 0.0}, Point{0.0, 0.0}, Point{0.85, 0.1}});
    const auto s = ch.source_coverage();
    const auto d = ch.destination_coverage();
    CHECK(std::vector<RelayId>(s.begin(), s.end()) == std::vector<RelayId>{0});
    CHECK(std::vector<RelayId>(d.begin(), d.end()) == std::vector<RelayId>{2});
    ch.set_position(1, Point{0.95, 0.0});
    const auto d2 = ch.destination_coverage();
    CHECK(std::vector<RelayId>(d2.begin(), d2.end()) == std::vector<RelayId>{1, 2});
    RandomStream rng(1);
    const RegionWalk walk(4, std::vector<int>{0});
    CHECK_THROWS(CoverageSampler(g, walk, 1.5, rng));
}
