#include "odwf/protocol.hpp"

#include <bit>
#include <stdexcept>

namespace odwf::protocol {

namespace {

// Kuhn's augmenting-path matching of packets (bits) to subcarriers.
// feasible[m] holds the packet bits subcarrier m can carry.
bool augment(int packet, const std::vector<std::uint64_t>& feasible,
             std::vector<int>& carrier_of_packet, std::vector<int>& packet_on_carrier,
             std::uint64_t& visited) {
    for (std::size_t m = 0; m < feasible.size(); ++m) {
        if (!(feasible[m] >> packet & 1ULL) || (visited >> m & 1ULL)) {
            continue;
        }
        visited |= 1ULL << m;
        const int owner = packet_on_carrier[m];
        if (owner < 0 ||
            augment(owner, feasible, carrier_of_packet, packet_on_carrier, visited)) {
            packet_on_carrier[m] = packet;
            carrier_of_packet[packet] = static_cast<int>(m);
            return true;
        }
    }
    return false;
}

}  // namespace

BaselineFixed::BaselineFixed(std::size_t relays, int subcarriers,
                             const channel::RateThreshold& rate)
    : relays_(relays),
      subcarriers_(subcarriers),
      rate_(rate),
      mask_(relays, 0),
      holder_count_(static_cast<std::size_t>(subcarriers), 0),
      batch_seq_(static_cast<std::size_t>(subcarriers), 0) {
    if (subcarriers < 1 || subcarriers > 64) {
        throw std::invalid_argument("baseline genie supports 1..64 subcarriers");
    }
}

std::size_t BaselineFixed::packets_in_network() const {
    return static_cast<std::size_t>(std::popcount(outstanding_));
}

std::size_t BaselineFixed::nonempty_relays(int subcarrier) const {
    return (outstanding_ >> subcarrier & 1ULL) ? holder_count_[subcarrier] : 0;
}

bool BaselineFixed::holds(RelayId relay, int subcarrier) const {
    return ((mask_[relay] & outstanding_) >> subcarrier & 1ULL) != 0;
}

PhaseDecision BaselineFixed::step(std::uint64_t frame, channel::FixedFrameChannel& links,
                                  RandomStream& rng) {
    using channel::Hop;
    PhaseDecision out;

    if (outstanding_ == 0) {
        for (int n = 0; n < subcarriers_; ++n) {
            if (links.connected(Hop::SourceRelay, n).empty()) {
                return out;
            }
        }
        out.kind = Phase::SourceTx;
        for (RelayId k : holders_) {
            mask_[k] = 0;
        }
        holders_.clear();
        batch_created_ = frame;
        for (int n = 0; n < subcarriers_; ++n) {
            batch_seq_[n] = next_seq_++;
            const auto receivers = links.connected(Hop::SourceRelay, n);
            holder_count_[n] = receivers.size();
            for (RelayId k : receivers) {
                if (mask_[k] == 0) {
                    holders_.push_back(k);
                }
                mask_[k] |= 1ULL << n;
            }
            outstanding_ |= 1ULL << n;
            out.injected.push_back(batch_seq_[n]);
        }
        return out;
    }

    // feasible[m]: undelivered packets some holder can send on subcarrier m.
    std::vector<std::uint64_t> feasible(static_cast<std::size_t>(subcarriers_), 0);
    for (int m = 0; m < subcarriers_; ++m) {
        for (RelayId k : links.connected(Hop::RelayDestination, m)) {
            feasible[m] |= mask_[k] & outstanding_;
        }
    }

    std::vector<int> carrier_of_packet(static_cast<std::size_t>(subcarriers_), -1);
    std::vector<int> packet_on_carrier(static_cast<std::size_t>(subcarriers_), -1);
    for (int b = 0; b < subcarriers_; ++b) {
        if (outstanding_ >> b & 1ULL) {
            std::uint64_t visited = 0;
            augment(b, feasible, carrier_of_packet, packet_on_carrier, visited);
        }
    }

    out.selected.resize(subcarriers_);
    for (int m = 0; m < subcarriers_; ++m) {
        const int b = packet_on_carrier[m];
        if (b < 0) {
            continue;
        }
        // Uniform choice among holders of packet b connected on m.
        const auto dest = links.connected(Hop::RelayDestination, m);
        std::size_t count = 0;
        for (RelayId k : dest) {
            count += (mask_[k] >> b) & 1ULL;
        }
        std::size_t pick = rng.below(count);
        for (RelayId k : dest) {
            if ((mask_[k] >> b & 1ULL) && pick-- == 0) {
                out.selected[m] = k;
                out.delivered.push_back(Delivery{batch_seq_[b], batch_created_, k, m});
                break;
            }
        }
    }

    if (out.delivered.empty()) {
        out.selected.clear();
        return out;
    }
    out.kind = Phase::RelayTx;
    for (const auto& d : out.delivered) {
        const int b = static_cast<int>(d.seq - batch_seq_[0]);
        outstanding_ &= ~(1ULL << b);
        holder_count_[b] = 0;
    }
    return out;
}

}  // namespace odwf::protocol
