#include "odwf/coverage.hpp"

#include <algorithm>
#include <stdexcept>

namespace odwf::mobility {

namespace {

template <class Emit>
void bernoulli_scan(std::span<const RelayId> list, double probability, RandomStream& rng,
                    Emit&& emit) {
    if (probability <= 0.0 || list.empty()) {
        return;
    }
    std::size_t idx = rng.geometric_skip(probability);
    while (idx < list.size()) {
        emit(list[idx]);
        const std::size_t gap = rng.geometric_skip(probability);
        if (gap >= list.size()) {
            break;
        }
        idx += gap + 1;
    }
}

}  // namespace

CoverageSampler::CoverageSampler(const DiskGeometry& geometry, const RegionWalk& walk,
                                 double coverage_radius, RandomStream& rng)
    : walk_(&walk), rng_(&rng), in_destination_(walk.relay_count(), 0) {
    if (coverage_radius > geometry.radius()) {
        throw std::invalid_argument("coverage sampler needs coverage radius <= R");
    }
    const int m = geometry.regions();
    for (int i = 0; i < m; ++i) {
        source_hit_.push_back(geometry.coverage_fraction(i, -geometry.radius(), coverage_radius));
        destination_hit_.push_back(
            geometry.coverage_fraction(i, geometry.radius(), coverage_radius));
    }
}

std::span<const RelayId> CoverageSampler::destination_coverage() {
    if (destination_frame_ != frame_) {
        destination_frame_ = frame_;
        destination_set_.clear();
        for (int i = 0; i < walk_->regions(); ++i) {
            bernoulli_scan(walk_->members(i), destination_hit_[i], *rng_, [&](RelayId k) {
                destination_set_.push_back(k);
                in_destination_[k] = frame_;
            });
        }
        std::sort(destination_set_.begin(), destination_set_.end());
    }
    return destination_set_;
}

std::span<const RelayId> CoverageSampler::source_coverage() {
    if (source_frame_ != frame_) {
        // The two disks are disjoint, so a relay outside the destination disk
        // is in the source disk with probability s / (1 - t).
        destination_coverage();
        source_frame_ = frame_;
        source_set_.clear();
        for (int i = 0; i < walk_->regions(); ++i) {
            const double outside = 1.0 - destination_hit_[i];
            const double p = outside > 0.0 ? std::min(1.0, source_hit_[i] / outside) : 0.0;
            bernoulli_scan(walk_->members(i), p, *rng_, [&](RelayId k) {
                if (in_destination_[k] != frame_) {
                    source_set_.push_back(k);
                }
            });
        }
        std::sort(source_set_.begin(), source_set_.end());
    }
    return source_set_;
}

ExplicitPositionChannel::ExplicitPositionChannel(const DiskGeometry& geometry,
                                                 const RegionWalk& walk, double coverage_radius,
                                                 RandomStream& rng)
    : geometry_(&geometry), walk_(&walk), radius_(coverage_radius), rng_(&rng) {}

void ExplicitPositionChannel::refresh() {
    if (drawn_frame_ == frame_) {
        return;
    }
    drawn_frame_ = frame_;
    source_set_.clear();
    destination_set_.clear();
    for (std::size_t k = 0; k < walk_->relay_count(); ++k) {
        const auto relay = static_cast<RelayId>(k);
        const auto pos = sample_position_in_region(*geometry_, walk_->region_of(relay), *rng_);
        if (distance_to_source(*geometry_, pos.coords) <= radius_) {
            source_set_.push_back(relay);
        }
        if (distance_to_destination(*geometry_, pos.coords) <= radius_) {
            destination_set_.push_back(relay);
        }
    }
}

std::span<const RelayId> ExplicitPositionChannel::source_coverage() {
    refresh();
    return source_set_;
}

std::span<const RelayId> ExplicitPositionChannel::destination_coverage() {
    refresh();
    return destination_set_;
}

StaticPositionChannel::StaticPositionChannel(const DiskGeometry& geometry,
                                             double coverage_radius, std::vector<Point> positions)
    : geometry_(&geometry), radius_(coverage_radius), positions_(std::move(positions)) {}

void StaticPositionChannel::set_position(RelayId relay, Point p) { positions_.at(relay) = p; }

std::span<const RelayId> StaticPositionChannel::source_coverage() {
    source_set_.clear();
    for (std::size_t k = 0; k < positions_.size(); ++k) {
        if (distance_to_source(*geometry_, positions_[k]) <= radius_) {
            source_set_.push_back(static_cast<RelayId>(k));
        }
    }
    return source_set_;
}

std::span<const RelayId> StaticPositionChannel::destination_coverage() {
    destination_set_.clear();
    for (std::size_t k = 0; k < positions_.size(); ++k) {
        if (distance_to_destination(*geometry_, positions_[k]) <= radius_) {
            destination_set_.push_back(static_cast<RelayId>(k));
        }
    }
    return destination_set_;
}

}  // namespace odwf::mobility
