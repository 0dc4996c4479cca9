#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "odwf/mobility.hpp"
#include "odwf/rng.hpp"

namespace odwf::mobility {

/// Which relays lie inside the source's and the destination's coverage
/// disks in the current frame. Positions are redrawn uniformly inside each
/// relay's region on every `next_frame()`.
class MobileFrameChannel {
  public:
    virtual ~MobileFrameChannel() = default;

    /// Ascending relay ids within the coverage radius of the source.
    virtual std::span<const RelayId> source_coverage() = 0;
    /// Ascending relay ids within the coverage radius of the destination.
    virtual std::span<const RelayId> destination_coverage() = 0;

    virtual void next_frame() = 0;
};

/// Draws coverage membership region by region with per-region hit
/// probabilities, never materializing positions. Requires the coverage
/// radius to be at most R, so the two coverage disks are disjoint.
class CoverageSampler final : public MobileFrameChannel {
  public:
    CoverageSampler(const DiskGeometry& geometry, const RegionWalk& walk,
                    double coverage_radius, RandomStream& rng);

    std::span<const RelayId> source_coverage() override;
    std::span<const RelayId> destination_coverage() override;
    void next_frame() override { ++frame_; }

  private:
    const RegionWalk* walk_;
    RandomStream* rng_;
    std::vector<double> source_hit_;
    std::vector<double> destination_hit_;
    std::vector<RelayId> source_set_;
    std::vector<RelayId> destination_set_;
    std::vector<std::uint64_t> in_destination_;
    std::uint64_t frame_ = 1;
    std::uint64_t source_frame_ = 0;
    std::uint64_t destination_frame_ = 0;
};

/// Samples an explicit position for every relay each frame and compares
/// distances against the coverage radius. Exact for any radius; O(K) per
/// frame.
class ExplicitPositionChannel final : public MobileFrameChannel {
  public:
    ExplicitPositionChannel(const DiskGeometry& geometry, const RegionWalk& walk,
                            double coverage_radius, RandomStream& rng);

    std::span<const RelayId> source_coverage() override;
    std::span<const RelayId> destination_coverage() override;
    void next_frame() override { ++frame_; }

  private:
    void refresh();

    const DiskGeometry* geometry_;
    const RegionWalk* walk_;
    double radius_;
    RandomStream* rng_;
    std::vector<RelayId> source_set_;
    std::vector<RelayId> destination_set_;
    std::uint64_t frame_ = 1;
    std::uint64_t drawn_frame_ = 0;
};

/// Positions supplied by the caller; coverage recomputed on demand.
class StaticPositionChannel final : public MobileFrameChannel {
  public:
    StaticPositionChannel(const DiskGeometry& geometry, double coverage_radius,
                          std::vector<Point> positions);

    void set_position(RelayId relay, Point p);

    std::span<const RelayId> source_coverage() override;
    std::span<const RelayId> destination_coverage() override;
    void next_frame() override {}

  private:
    const DiskGeometry* geometry_;
    double radius_;
    std::vector<Point> positions_;
    std::vector<RelayId> source_set_;
    std::vector<RelayId> destination_set_;
};

}  // namespace odwf::mobility
