#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "odwf/rng.hpp"

namespace odwf::mobility {

using RelayId = std::uint32_t;

class GeometryError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Disk of radius R cut by vertical lines into M strips of equal area.
/// Region 0 touches the source at (-R, 0); region M-1 touches the
/// destination at (R, 0).
class DiskGeometry {
  public:
    DiskGeometry(double radius, std::vector<double> boundaries);

    double radius() const { return radius_; }
    int regions() const { return static_cast<int>(boundaries_.size()) - 1; }
    /// M + 1 strictly increasing abscissae from -R to R.
    std::span<const double> boundaries() const { return boundaries_; }

    /// Region containing abscissa x (x clamped to [-R, R]).
    int region_of(double x) const;

    /// Area of the disk lying in region `region`.
    double strip_area(int region) const;

    /// Fraction of region `region`'s area within `distance` of the point
    /// (center_x, 0), where center_x is -R (source) or R (destination).
    double coverage_fraction(int region, double center_x, double distance) const;

  private:
    double radius_;
    std::vector<double> boundaries_;
};

struct Point {
    double x = 0.0;
    double y = 0.0;
};

struct RelayPosition {
    int region = 0;
    Point coords;
};

/// Area of {x' <= x} inside a disk of radius R centred at the origin.
double area_left_of(double x, double radius);

/// Solves the equal-area boundary equations by bisection. `tolerance` is
/// relative to the disk area; throws GeometryError when a boundary fails to
/// converge within 200 iterations.
DiskGeometry build_geometry(double radius, int regions, double tolerance = 1e-12);

/// One step of the reflecting lazy walk: +-1 with probability q each,
/// staying put with the rest (1 - q at the end regions).
int step_region(int current, int regions, double q, RandomStream& rng);

/// Uniform point in the strip, by rejection from its bounding box.
RelayPosition sample_position_in_region(const DiskGeometry& geometry, int region,
                                        RandomStream& rng);

/// K i.i.d. uniform positions on the disk.
std::vector<RelayPosition> init_relays(const DiskGeometry& geometry, std::size_t relays,
                                       RandomStream& rng);

double distance_to_source(const DiskGeometry& geometry, Point p);
double distance_to_destination(const DiskGeometry& geometry, Point p);

/// Region state of the whole relay population. Movers are found with
/// geometric skips over each region's member list, which gives every relay
/// the same per-frame law as step_region at O(Kq + M) cost.
class RegionWalk {
  public:
    RegionWalk(int regions, std::span<const int> initial_regions);

    void step(double q, RandomStream& rng);

    int region_of(RelayId relay) const { return region_[relay]; }
    std::span<const RelayId> members(int region) const { return members_[region]; }
    std::size_t relay_count() const { return region_.size(); }
    int regions() const { return static_cast<int>(members_.size()); }

  private:
    void move(RelayId relay, int to);

    std::vector<int> region_;
    std::vector<std::vector<RelayId>> members_;
    std::vector<std::uint32_t> slot_;
    std::vector<std::pair<RelayId, int>> pending_;
};

}  // namespace odwf::mobility
