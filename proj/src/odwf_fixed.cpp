#include "odwf/protocol.hpp"

#include <string>

namespace odwf::protocol {

const char* to_string(Phase phase) {
    switch (phase) {
        case Phase::SourceTx:
            return "source_tx";
        case Phase::RelayTx:
            return "relay_tx";
        case Phase::Idle:
            break;
    }
    return "idle";
}

OdwfFixed::OdwfFixed(std::size_t relays, int subcarriers, const channel::RateThreshold& rate,
                     std::size_t buffer_cap)
    : relays_(relays),
      subcarriers_(subcarriers),
      rate_(rate),
      buffer_cap_(buffer_cap),
      banks_(relays, subcarriers),
      eligible_(static_cast<std::size_t>(subcarriers)) {}

Packet OdwfFixed::packet(Seq seq) const {
    const auto& rec = ledger_.record(seq);
    return Packet{seq, rec.created_frame, rec.subcarrier, rate_.rate()};
}

PhaseDecision OdwfFixed::step(std::uint64_t frame, channel::FixedFrameChannel& links,
                              RandomStream& rng) {
    using channel::Hop;
    PhaseDecision out;

    // Relay phase: every subcarrier needs a relay with a buffered packet in
    // that bank and a connected destination link.
    bool relay_ready = true;
    for (int n = 0; n < subcarriers_ && relay_ready; ++n) {
        auto& eligible = eligible_[n];
        eligible.clear();
        if (banks_.nonempty_relays(n) == 0) {
            relay_ready = false;
            break;
        }
        for (RelayId k : links.connected(Hop::RelayDestination, n)) {
            if (banks_.live(k, n) > 0) {
                eligible.push_back(k);
            }
        }
        relay_ready = !eligible.empty();
    }

    if (relay_ready) {
        out.kind = Phase::RelayTx;
        out.selected.resize(subcarriers_);
        for (int n = 0; n < subcarriers_; ++n) {
            const auto& eligible = eligible_[n];
            const RelayId chosen = eligible[rng.below(eligible.size())];
            const Seq seq = *banks_.head(chosen, n, ledger_);
            const auto created = ledger_.record(seq).created_frame;
            for (RelayId holder : ledger_.mark_delivered(seq)) {
                banks_.on_purged(holder, n);
            }
            out.selected[n] = chosen;
            out.delivered.push_back(Delivery{seq, created, chosen, n});
        }
        return out;
    }

    for (int n = 0; n < subcarriers_; ++n) {
        if (links.connected(Hop::SourceRelay, n).empty()) {
            return out;
        }
    }

    out.kind = Phase::SourceTx;
    for (int n = 0; n < subcarriers_; ++n) {
        const Seq seq = ledger_.create(frame, n);
        for (RelayId k : links.connected(Hop::SourceRelay, n)) {
            banks_.push(k, n, seq, ledger_);
            ledger_.add_holder(seq, k);
        }
        out.injected.push_back(seq);
    }
    if (ledger_.in_network() > buffer_cap_) {
        throw BufferGuardError("relay buffers exceeded the guard cap of " +
                               std::to_string(buffer_cap_) + " packets at frame " +
                               std::to_string(frame));
    }
    return out;
}

}  // namespace odwf::protocol
