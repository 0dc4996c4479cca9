#include "odwf/protocol.hpp"

namespace odwf::protocol {

BaselineMobile::BaselineMobile(std::size_t relays, const channel::RateThreshold& rate)
    : relays_(relays), rate_(rate), held_(relays, 0) {}

PhaseDecision BaselineMobile::step(std::uint64_t frame, mobility::MobileFrameChannel& coverage,
                                   RandomStream& rng) {
    PhaseDecision out;

    if (!outstanding_) {
        const auto receivers = coverage.source_coverage();
        if (receivers.empty()) {
            return out;
        }
        out.kind = Phase::SourceTx;
        seq_ = next_seq_++;
        created_ = frame;
        outstanding_ = true;
        for (RelayId k : receivers) {
            held_[k] = 1;
            holders_.push_back(k);
        }
        out.injected.push_back(seq_);
        return out;
    }

    eligible_.clear();
    for (RelayId k : coverage.destination_coverage()) {
        if (held_[k] != 0) {
            eligible_.push_back(k);
        }
    }
    if (eligible_.empty()) {
        return out;
    }
    out.kind = Phase::RelayTx;
    const RelayId chosen = eligible_[rng.below(eligible_.size())];
    out.selected.push_back(chosen);
    out.delivered.push_back(Delivery{seq_, created_, chosen, 0});
    for (RelayId k : holders_) {
        held_[k] = 0;
    }
    holders_.clear();
    outstanding_ = false;
    return out;
}

}  // namespace odwf::protocol
