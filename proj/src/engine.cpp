#include "odwf/engine.hpp"

#include <cmath>
#include <memory>
#include <numeric>

#include "odwf/coverage.hpp"
#include "odwf/fading.hpp"
#include "odwf/mobility.hpp"
#include "odwf/parallel.hpp"

namespace odwf::engine {

namespace {

template <class Scheme, class Channel, class Advance>
void run_frames(MetricsTrace& trace, Scheme& scheme, Channel& channel, RandomStream& rng,
                Advance&& advance) {
    const std::uint64_t warmup = trace.warmup_frames;
    const std::uint64_t total = warmup + trace.measure_frames;
    const int banks = scheme.occupancy_banks();
    trace.occupancy_counts.assign(static_cast<std::size_t>(banks), {});
    for (auto& series : trace.occupancy_counts) {
        series.reserve(trace.measure_frames);
    }
    trace.delivered_per_frame.reserve(trace.measure_frames);
    trace.in_network.reserve(trace.measure_frames);
    trace.phases.reserve(trace.measure_frames);

    for (std::uint64_t frame = 0; frame < total; ++frame) {
        if (frame > 0) {
            advance();
        }
        const auto decision = scheme.step(frame, channel, rng);
        if (frame < warmup) {
            continue;
        }
        trace.phases.push_back(decision.kind);
        switch (decision.kind) {
            case protocol::Phase::SourceTx:
                ++trace.phase_counts.source_tx;
                break;
            case protocol::Phase::RelayTx:
                ++trace.phase_counts.relay_tx;
                break;
            case protocol::Phase::Idle:
                ++trace.phase_counts.idle;
                break;
        }
        trace.delivered_per_frame.push_back(static_cast<std::uint32_t>(decision.delivered.size()));
        for (const auto& d : decision.delivered) {
            trace.delays.push_back(frame - d.created_frame);
        }
        trace.delivered_packets += decision.delivered.size();
        for (int b = 0; b < banks; ++b) {
            trace.occupancy_counts[b].push_back(
                static_cast<std::uint32_t>(scheme.nonempty_relays(b)));
        }
        trace.in_network.push_back(static_cast<std::uint32_t>(scheme.packets_in_network()));
    }
    trace.undelivered_at_end = scheme.packets_in_network();
}

void run_fixed(const SystemConfig& cfg, MetricsTrace& trace, RandomStream& rng) {
    const auto rate = cfg.rate();
    channel::SampledFixedChannel links(cfg.K, cfg.N, rate, rng);
    auto advance = [&] { links.next_frame(); };
    if (cfg.scheme == Scheme::Odwf) {
        protocol::OdwfFixed scheme(cfg.K, cfg.N, rate, cfg.buffer_cap);
        run_frames(trace, scheme, links, rng, advance);
    } else {
        protocol::BaselineFixed scheme(cfg.K, cfg.N, rate);
        run_frames(trace, scheme, links, rng, advance);
    }
}

void run_mobile(const SystemConfig& cfg, MetricsTrace& trace, RandomStream& rng) {
    const auto rate = cfg.rate();
    const auto geometry = mobility::build_geometry(cfg.R, cfg.M);
    const auto initial = mobility::init_relays(geometry, cfg.K, rng);
    std::vector<int> regions;
    regions.reserve(initial.size());
    for (const auto& pos : initial) {
        regions.push_back(pos.region);
    }
    mobility::RegionWalk walk(cfg.M, regions);
    const double radius = channel::coverage_radius(cfg.p, cfg.beta, cfg.alpha);

    std::unique_ptr<mobility::MobileFrameChannel> coverage;
    if (cfg.exact_positions || radius > cfg.R) {
        coverage = std::make_unique<mobility::ExplicitPositionChannel>(geometry, walk, radius, rng);
    } else {
        coverage = std::make_unique<mobility::CoverageSampler>(geometry, walk, radius, rng);
    }
    auto advance = [&] {
        walk.step(cfg.q, rng);
        coverage->next_frame();
    };
    if (cfg.scheme == Scheme::Odwf) {
        protocol::OdwfMobile scheme(cfg.K, rate, cfg.buffer_cap);
        run_frames(trace, scheme, *coverage, rng, advance);
    } else {
        protocol::BaselineMobile scheme(cfg.K, rate);
        run_frames(trace, scheme, *coverage, rng, advance);
    }
}

}  // namespace

double MetricsTrace::mean_occupancy() const {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& series : occupancy_counts) {
        for (auto v : series) {
            sum += v;
        }
        count += series.size();
    }
    return count == 0 ? 0.0 : sum / (static_cast<double>(count) * static_cast<double>(relays));
}

double measure_throughput(const MetricsTrace& trace) {
    if (trace.delivered_per_frame.empty()) {
        return 0.0;
    }
    const std::uint64_t packets = std::accumulate(trace.delivered_per_frame.begin(),
                                                  trace.delivered_per_frame.end(),
                                                  std::uint64_t{0});
    return trace.rate_bits * static_cast<double>(packets) /
           static_cast<double>(trace.delivered_per_frame.size());
}

std::optional<double> measure_delay(const MetricsTrace& trace) {
    if (trace.delays.empty()) {
        return std::nullopt;
    }
    const std::uint64_t sum =
        std::accumulate(trace.delays.begin(), trace.delays.end(), std::uint64_t{0});
    return static_cast<double>(sum) / static_cast<double>(trace.delays.size());
}

MetricsTrace run_once(const SystemConfig& cfg, RandomStream& rng) {
    cfg.validate();
    MetricsTrace trace;
    trace.rate_bits = cfg.rate().rate();
    trace.relays = cfg.K;
    trace.warmup_frames = cfg.effective_warmup();
    trace.measure_frames = cfg.measure_frames;
    if (cfg.scenario == Scenario::Fixed) {
        run_fixed(cfg, trace, rng);
    } else {
        run_mobile(cfg, trace, rng);
    }
    return trace;
}

ReplicationResult summarize(const MetricsTrace& trace, std::uint64_t seed) {
    ReplicationResult out;
    out.seed = seed;
    out.throughput = measure_throughput(trace);
    out.delay = measure_delay(trace);
    out.occupancy = trace.mean_occupancy();
    const double frames = static_cast<double>(trace.measure_frames);
    out.p_rd = static_cast<double>(trace.phase_counts.relay_tx) / frames;
    out.p_sr = static_cast<double>(trace.phase_counts.source_tx) / frames;
    out.delivered = trace.delivered_packets;
    out.undelivered = trace.undelivered_at_end;
    double in_network = 0.0;
    for (auto v : trace.in_network) {
        in_network += v;
    }
    out.mean_in_network = trace.in_network.empty() ? 0.0 : in_network / frames;
    return out;
}

Estimate estimate(const std::vector<double>& values) {
    Estimate e;
    if (values.empty()) {
        return e;
    }
    const double n = static_cast<double>(values.size());
    e.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) {
            ss += (v - e.mean) * (v - e.mean);
        }
        e.half_width = 1.959963984540054 * std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    }
    return e;
}

RunSummary run_replicated(const SystemConfig& cfg, unsigned threads) {
    cfg.validate();
    RunSummary summary;
    summary.replications.resize(cfg.replications);
    parallel_for(cfg.replications, threads, [&](std::size_t r) {
        const std::uint64_t seed = split_seed(cfg.seed, r);
        RandomStream rng(seed);
        summary.replications[r] = summarize(run_once(cfg, rng), seed);
    });

    std::vector<double> t, d, occ, prd, psr;
    for (const auto& rep : summary.replications) {
        t.push_back(rep.throughput);
        if (rep.delay) {
            d.push_back(*rep.delay);
        }
        occ.push_back(rep.occupancy);
        prd.push_back(rep.p_rd);
        psr.push_back(rep.p_sr);
        summary.undelivered += rep.undelivered;
    }
    summary.throughput = estimate(t);
    if (!d.empty()) {
        summary.delay = estimate(d);
    }
    summary.occupancy = estimate(occ);
    summary.p_rd = estimate(prd);
    summary.p_sr = estimate(psr);
    return summary;
}

}  // namespace odwf::engine
