#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "odwf/config.hpp"
#include "odwf/protocol.hpp"
#include "odwf/rng.hpp"

namespace odwf::engine {

struct PhaseCounts {
    std::uint64_t source_tx = 0;
    std::uint64_t relay_tx = 0;
    std::uint64_t idle = 0;

    std::uint64_t total() const { return source_tx + relay_tx + idle; }
};

/// Everything observed during the measurement window of one run.
struct MetricsTrace {
    double rate_bits = 0.0;
    std::size_t relays = 0;
    std::uint64_t warmup_frames = 0;
    std::uint64_t measure_frames = 0;

    std::vector<std::uint32_t> delivered_per_frame;
    /// Delivery frame minus creation frame, one entry per delivered packet.
    std::vector<std::uint64_t> delays;
    /// Relays with a nonempty bank, [bank][frame]. One bank in the mobile
    /// scenario.
    std::vector<std::vector<std::uint32_t>> occupancy_counts;
    /// Undelivered packets at the end of each frame.
    std::vector<std::uint32_t> in_network;
    std::vector<protocol::Phase> phases;
    PhaseCounts phase_counts;
    std::uint64_t delivered_packets = 0;
    std::uint64_t undelivered_at_end = 0;

    double bits_delivered(std::size_t frame) const {
        return rate_bits * delivered_per_frame[frame];
    }
    double occupancy_fraction(int bank, std::size_t frame) const {
        return static_cast<double>(occupancy_counts[bank][frame]) / static_cast<double>(relays);
    }
    /// Occupancy fraction averaged over banks and frames.
    double mean_occupancy() const;
};

/// Mean bits per frame over the window.
double measure_throughput(const MetricsTrace& trace);

/// Mean packet delay in frames; nullopt when nothing was delivered.
std::optional<double> measure_delay(const MetricsTrace& trace);

/// Runs warm-up then measurement with one random stream. Throws
/// protocol::BufferGuardError when the buffer guard trips.
MetricsTrace run_once(const SystemConfig& cfg, RandomStream& rng);

struct Estimate {
    double mean = 0.0;
    /// 95% normal-approximation half-width across replications.
    double half_width = 0.0;
};

struct ReplicationResult {
    std::uint64_t seed = 0;
    double throughput = 0.0;
    std::optional<double> delay;
    double occupancy = 0.0;
    double p_rd = 0.0;
    double p_sr = 0.0;
    std::uint64_t delivered = 0;
    std::uint64_t undelivered = 0;
    double mean_in_network = 0.0;
};

struct RunSummary {
    Estimate throughput;
    std::optional<Estimate> delay;
    Estimate occupancy;
    Estimate p_rd;
    Estimate p_sr;
    std::uint64_t undelivered = 0;
    std::vector<ReplicationResult> replications;
};

ReplicationResult summarize(const MetricsTrace& trace, std::uint64_t seed);

/// Mean and 95% half-width of a sample (half-width 0 for one value).
Estimate estimate(const std::vector<double>& values);

/// Replication r uses split_seed(cfg.seed, r). Replications run on up to
/// `threads` workers; the result does not depend on scheduling.
RunSummary run_replicated(const SystemConfig& cfg, unsigned threads = 1);

}  // namespace odwf::engine
