#include "odwf/protocol.hpp"

#include <string>

namespace odwf::protocol {

OdwfMobile::OdwfMobile(std::size_t relays, const channel::RateThreshold& rate,
                       std::size_t buffer_cap)
    : relays_(relays), rate_(rate), buffer_cap_(buffer_cap), banks_(relays, 1) {}

PhaseDecision OdwfMobile::step(std::uint64_t frame, mobility::MobileFrameChannel& coverage,
                               RandomStream& rng) {
    PhaseDecision out;

    eligible_.clear();
    if (banks_.nonempty_relays(0) > 0) {
        for (RelayId k : coverage.destination_coverage()) {
            if (banks_.live(k, 0) > 0) {
                eligible_.push_back(k);
            }
        }
    }

    if (!eligible_.empty()) {
        out.kind = Phase::RelayTx;
        const RelayId chosen = eligible_[rng.below(eligible_.size())];
        const Seq seq = *banks_.head(chosen, 0, ledger_);
        const auto created = ledger_.record(seq).created_frame;
        for (RelayId holder : ledger_.mark_delivered(seq)) {
            banks_.on_purged(holder, 0);
        }
        out.selected.push_back(chosen);
        out.delivered.push_back(Delivery{seq, created, chosen, 0});
        return out;
    }

    const auto receivers = coverage.source_coverage();
    if (receivers.empty()) {
        return out;
    }
    out.kind = Phase::SourceTx;
    const Seq seq = ledger_.create(frame, 0);
    for (RelayId k : receivers) {
        banks_.push(k, 0, seq, ledger_);
        ledger_.add_holder(seq, k);
    }
    out.injected.push_back(seq);
    if (ledger_.in_network() > buffer_cap_) {
        throw BufferGuardError("relay buffers exceeded the guard cap of " +
                               std::to_string(buffer_cap_) + " packets at frame " +
                               std::to_string(frame));
    }
    return out;
}

}  // namespace odwf::protocol
