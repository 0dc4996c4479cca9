#include "odwf/fading.hpp"

#include <stdexcept>

namespace odwf::channel {

namespace {

std::size_t hop_index(Hop hop) { return hop == Hop::SourceRelay ? 0 : 1; }

}  // namespace

SampledFixedChannel::SampledFixedChannel(std::size_t relays, int subcarriers,
                                         const RateThreshold& rate, RandomStream& rng)
    : relays_(relays),
      subcarriers_(subcarriers),
      connect_probability_(rate.connect_probability()),
      rng_(&rng),
      sets_(2 * static_cast<std::size_t>(subcarriers)),
      drawn_in_frame_(2 * static_cast<std::size_t>(subcarriers), 0) {}

std::size_t SampledFixedChannel::slot(Hop hop, int subcarrier) const {
    if (subcarrier < 0 || subcarrier >= subcarriers_) {
        throw std::out_of_range("subcarrier index out of range");
    }
    return hop_index(hop) * subcarriers_ + static_cast<std::size_t>(subcarrier);
}

std::span<const RelayId> SampledFixedChannel::connected(Hop hop, int subcarrier) {
    const std::size_t s = slot(hop, subcarrier);
    auto& set = sets_[s];
    if (drawn_in_frame_[s] != frame_) {
        drawn_in_frame_[s] = frame_;
        set.clear();
        std::size_t k = rng_->geometric_skip(connect_probability_);
        while (k < relays_) {
            set.push_back(static_cast<RelayId>(k));
            const std::size_t gap = rng_->geometric_skip(connect_probability_);
            if (gap >= relays_) {
                break;
            }
            k += gap + 1;
        }
    }
    return set;
}

void SampledFixedChannel::next_frame() { ++frame_; }

ThresholdedFixedChannel::ThresholdedFixedChannel(std::size_t relays, int subcarriers,
                                                 double power, const RateThreshold& rate,
                                                 RandomStream& rng)
    : relays_(relays),
      subcarriers_(subcarriers),
      power_(power),
      rate_(rate),
      rng_(&rng),
      sets_(2 * static_cast<std::size_t>(subcarriers)),
      drawn_in_frame_(2 * static_cast<std::size_t>(subcarriers), 0) {}

std::span<const RelayId> ThresholdedFixedChannel::connected(Hop hop, int subcarrier) {
    const std::size_t s = hop_index(hop) * subcarriers_ + static_cast<std::size_t>(subcarrier);
    auto& set = sets_.at(s);
    if (drawn_in_frame_[s] != frame_) {
        drawn_in_frame_[s] = frame_;
        set.clear();
        for (std::size_t k = 0; k < relays_; ++k) {
            if (is_connected_fixed(rate_, power_, sample_power_gain(*rng_))) {
                set.push_back(static_cast<RelayId>(k));
            }
        }
    }
    return set;
}

void ThresholdedFixedChannel::next_frame() { ++frame_; }

GainTableChannel::GainTableChannel(std::size_t relays, int subcarriers, double power,
                                   const RateThreshold& rate)
    : relays_(relays),
      subcarriers_(subcarriers),
      power_(power),
      rate_(rate),
      gains_(2 * relays * static_cast<std::size_t>(subcarriers)),
      sets_(2 * static_cast<std::size_t>(subcarriers)) {}

std::size_t GainTableChannel::index(Hop hop, int subcarrier, RelayId relay) const {
    if (subcarrier < 0 || subcarrier >= subcarriers_ || relay >= relays_) {
        throw std::out_of_range("gain table index out of range");
    }
    return (hop_index(hop) * subcarriers_ + static_cast<std::size_t>(subcarrier)) * relays_ +
           relay;
}

void GainTableChannel::set_gain(Hop hop, int subcarrier, RelayId relay, LinkGain gain) {
    gains_[index(hop, subcarrier, relay)] = gain;
}

void GainTableChannel::set_all(Hop hop, LinkGain gain) {
    for (int n = 0; n < subcarriers_; ++n) {
        for (std::size_t k = 0; k < relays_; ++k) {
            gains_[index(hop, n, static_cast<RelayId>(k))] = gain;
        }
    }
}

std::span<const RelayId> GainTableChannel::connected(Hop hop, int subcarrier) {
    auto& set = sets_[hop_index(hop) * subcarriers_ + static_cast<std::size_t>(subcarrier)];
    set.clear();
    for (std::size_t k = 0; k < relays_; ++k) {
        const auto gain = gains_[index(hop, subcarrier, static_cast<RelayId>(k))];
        if (is_connected_fixed(rate_, power_, gain)) {
            set.push_back(static_cast<RelayId>(k));
        }
    }
    return set;
}

}  // namespace odwf::channel
