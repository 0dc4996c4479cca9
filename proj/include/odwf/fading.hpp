#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "odwf/channel.hpp"
#include "odwf/rng.hpp"

namespace odwf::channel {

using RelayId = std::uint32_t;

enum class Hop { SourceRelay, RelayDestination };

/// Per-frame connectivity of the K x N source-relay and relay-destination
/// links in the fixed scenario. Implementations draw fresh block fading
/// on every `next_frame()`.
class FixedFrameChannel {
  public:
    virtual ~FixedFrameChannel() = default;

    /// Relays whose `hop` link on `subcarrier` is connected in the current
    /// frame, in ascending id order.
    virtual std::span<const RelayId> connected(Hop hop, int subcarrier) = 0;

    virtual void next_frame() = 0;

    virtual std::size_t relay_count() const = 0;
    virtual int subcarriers() const = 0;
};

/// Lazy sampler used by the simulation loop. A link set is drawn only the
/// first time a protocol step asks for it within a frame; the draw walks
/// the K relays with geometric skips of Bernoulli(1/beta), which is the
/// law of {gain >= ln beta} for i.i.d. Exp(1) gains.
class SampledFixedChannel final : public FixedFrameChannel {
  public:
    SampledFixedChannel(std::size_t relays, int subcarriers, const RateThreshold& rate,
                        RandomStream& rng);

    std::span<const RelayId> connected(Hop hop, int subcarrier) override;
    void next_frame() override;
    std::size_t relay_count() const override { return relays_; }
    int subcarriers() const override { return subcarriers_; }

  private:
    std::size_t slot(Hop hop, int subcarrier) const;

    std::size_t relays_;
    int subcarriers_;
    double connect_probability_;
    RandomStream* rng_;
    std::vector<std::vector<RelayId>> sets_;
    std::vector<std::uint64_t> drawn_in_frame_;
    std::uint64_t frame_ = 1;
};

/// Brute-force sampler: draws every inspected gain with sample_power_gain
/// and thresholds it. Used to cross-check SampledFixedChannel.
class ThresholdedFixedChannel final : public FixedFrameChannel {
  public:
    ThresholdedFixedChannel(std::size_t relays, int subcarriers, double power,
                            const RateThreshold& rate, RandomStream& rng);

    std::span<const RelayId> connected(Hop hop, int subcarrier) override;
    void next_frame() override;
    std::size_t relay_count() const override { return relays_; }
    int subcarriers() const override { return subcarriers_; }

  private:
    std::size_t relays_;
    int subcarriers_;
    double power_;
    RateThreshold rate_;
    RandomStream* rng_;
    std::vector<std::vector<RelayId>> sets_;
    std::vector<std::uint64_t> drawn_in_frame_;
    std::uint64_t frame_ = 1;
};

/// Deterministic gains set by hand; they persist across frames until
/// changed. All gains start at 0 (every link broken).
class GainTableChannel final : public FixedFrameChannel {
  public:
    GainTableChannel(std::size_t relays, int subcarriers, double power,
                     const RateThreshold& rate);

    void set_gain(Hop hop, int subcarrier, RelayId relay, LinkGain gain);
    void set_all(Hop hop, LinkGain gain);

    std::span<const RelayId> connected(Hop hop, int subcarrier) override;
    void next_frame() override {}
    std::size_t relay_count() const override { return relays_; }
    int subcarriers() const override { return subcarriers_; }

  private:
    std::size_t index(Hop hop, int subcarrier, RelayId relay) const;

    std::size_t relays_;
    int subcarriers_;
    double power_;
    RateThreshold rate_;
    std::vector<LinkGain> gains_;
    std::vector<std::vector<RelayId>> sets_;
};

}  // namespace odwf::channel
