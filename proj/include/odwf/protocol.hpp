#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "odwf/channel.hpp"
#include "odwf/coverage.hpp"
#include "odwf/fading.hpp"
#include "odwf/relay_banks.hpp"
#include "odwf/rng.hpp"

namespace odwf::protocol {

enum class Phase : std::uint8_t { Idle, SourceTx, RelayTx };

const char* to_string(Phase phase);

struct Packet {
    Seq seq = 0;
    std::uint64_t created_frame = 0;
    int subcarrier_of_origin = 0;
    double size_bits = 0.0;
};

struct Delivery {
    Seq seq = 0;
    std::uint64_t created_frame = 0;
    RelayId relay = 0;
    int subcarrier = 0;
};

struct PhaseDecision {
    Phase kind = Phase::Idle;
    /// Transmitting relay per subcarrier (fixed) or a single entry (mobile).
    std::vector<std::optional<RelayId>> selected;
    std::vector<Delivery> delivered;
    std::vector<Seq> injected;
};

/// Opportunistic decode-wait-and-forward over N parallel fading
/// subcarriers. A frame goes to the relays when every subcarrier has a
/// buffered relay with a connected destination link; otherwise to the
/// source when every subcarrier has a connected source link.
class OdwfFixed {
  public:
    OdwfFixed(std::size_t relays, int subcarriers, const channel::RateThreshold& rate,
              std::size_t buffer_cap);

    PhaseDecision step(std::uint64_t frame, channel::FixedFrameChannel& links,
                       RandomStream& rng);

    std::size_t packets_in_network() const { return ledger_.in_network(); }
    std::size_t nonempty_relays(int subcarrier) const { return banks_.nonempty_relays(subcarrier); }
    int occupancy_banks() const { return subcarriers_; }

    const PacketLedger& ledger() const { return ledger_; }
    const RelayBanks& banks() const { return banks_; }
    Packet packet(Seq seq) const;

  private:
    std::size_t relays_;
    int subcarriers_;
    channel::RateThreshold rate_;
    std::size_t buffer_cap_;
    PacketLedger ledger_;
    RelayBanks banks_;
    std::vector<std::vector<RelayId>> eligible_;
};

/// Regular decode-and-forward with a genie that assigns buffered packets
/// to subcarriers by maximum bipartite matching. A new batch of N packets
/// is admitted only once the previous batch has been fully delivered.
class BaselineFixed {
  public:
    BaselineFixed(std::size_t relays, int subcarriers, const channel::RateThreshold& rate);

    PhaseDecision step(std::uint64_t frame, channel::FixedFrameChannel& links,
                       RandomStream& rng);

    std::size_t packets_in_network() const;
    /// Relays holding the undelivered batch packet of `subcarrier`.
    std::size_t nonempty_relays(int subcarrier) const;
    int occupancy_banks() const { return subcarriers_; }

    bool holds(RelayId relay, int subcarrier) const;
    std::uint64_t outstanding_mask() const { return outstanding_; }
    Seq batch_seq(int subcarrier) const { return batch_seq_[subcarrier]; }

  private:
    std::size_t relays_;
    int subcarriers_;
    channel::RateThreshold rate_;
    std::vector<std::uint64_t> mask_;
    std::vector<RelayId> holders_;
    std::vector<std::size_t> holder_count_;
    std::uint64_t outstanding_ = 0;
    std::vector<Seq> batch_seq_;
    std::uint64_t batch_created_ = 0;
    Seq next_seq_ = 0;
};

/// Opportunistic decode-wait-and-forward with mobile relays: one packet
/// per frame over the whole band, one FIFO per relay.
class OdwfMobile {
  public:
    OdwfMobile(std::size_t relays, const channel::RateThreshold& rate, std::size_t buffer_cap);

    PhaseDecision step(std::uint64_t frame, mobility::MobileFrameChannel& coverage,
                       RandomStream& rng);

    std::size_t packets_in_network() const { return ledger_.in_network(); }
    std::size_t nonempty_relays(int /*bank*/ = 0) const { return banks_.nonempty_relays(0); }
    int occupancy_banks() const { return 1; }

    const PacketLedger& ledger() const { return ledger_; }
    const RelayBanks& banks() const { return banks_; }

  private:
    std::size_t relays_;
    channel::RateThreshold rate_;
    std::size_t buffer_cap_;
    PacketLedger ledger_;
    RelayBanks banks_;
    std::vector<RelayId> eligible_;
};

/// Regular decode-and-forward with mobile relays: at most one packet in
/// the network; it waits at its holders until one enters the
/// destination's coverage.
class BaselineMobile {
  public:
    explicit BaselineMobile(std::size_t relays, const channel::RateThreshold& rate);

    PhaseDecision step(std::uint64_t frame, mobility::MobileFrameChannel& coverage,
                       RandomStream& rng);

    std::size_t packets_in_network() const { return outstanding_ ? 1 : 0; }
    std::size_t nonempty_relays(int /*bank*/ = 0) const { return holders_.size(); }
    int occupancy_banks() const { return 1; }

    bool holds(RelayId relay) const { return held_[relay] != 0; }
    std::optional<Seq> outstanding() const {
        return outstanding_ ? std::optional<Seq>(seq_) : std::nullopt;
    }

  private:
    std::size_t relays_;
    channel::RateThreshold rate_;
    std::vector<std::uint8_t> held_;
    std::vector<RelayId> holders_;
    std::vector<RelayId> eligible_;
    bool outstanding_ = false;
    Seq seq_ = 0;
    std::uint64_t created_ = 0;
    Seq next_seq_ = 0;
};

}  // namespace odwf::protocol
