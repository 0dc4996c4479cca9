#include "odwf/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

namespace odwf::mobility {

namespace {

// Antiderivative of sqrt(r^2 - u^2).
double half_chord_integral(double u, double r) {
    const double c = std::clamp(u / r, -1.0, 1.0);
    return 0.5 * (u * r * std::sqrt(std::max(0.0, 1.0 - c * c)) + r * r * std::asin(c));
}

double integrate_half_chord(double a, double b, double r, double shift) {
    if (b <= a) {
        return 0.0;
    }
    return half_chord_integral(b - shift, r) - half_chord_integral(a - shift, r);
}

}  // namespace

double area_left_of(double x, double radius) {
    const double c = std::clamp(x, -radius, radius);
    return 2.0 * (half_chord_integral(c, radius) - half_chord_integral(-radius, radius));
}

DiskGeometry::DiskGeometry(double radius, std::vector<double> boundaries)
    : radius_(radius), boundaries_(std::move(boundaries)) {
    if (boundaries_.size() < 3) {
        throw std::invalid_argument("geometry needs at least two regions");
    }
    for (std::size_t i = 1; i < boundaries_.size(); ++i) {
        if (!(boundaries_[i] > boundaries_[i - 1])) {
            throw std::invalid_argument("region boundaries must be strictly increasing");
        }
    }
}

int DiskGeometry::region_of(double x) const {
    const auto it = std::upper_bound(boundaries_.begin() + 1, boundaries_.end() - 1, x);
    return static_cast<int>(it - (boundaries_.begin() + 1));
}

double DiskGeometry::strip_area(int region) const {
    return area_left_of(boundaries_[region + 1], radius_) -
           area_left_of(boundaries_[region], radius_);
}

double DiskGeometry::coverage_fraction(int region, double center_x, double distance) const {
    const double r = radius_;
    if (distance <= 0.0) {
        return 0.0;
    }
    if (distance >= 2.0 * r) {
        return 1.0;
    }
    // Work in the source frame; the destination case is the mirror image.
    double lo = boundaries_[region];
    double hi = boundaries_[region + 1];
    if (center_x > 0.0) {
        std::tie(lo, hi) = std::pair{-hi, -lo};
    }
    // For x below the boundary crossing the disk edge is the lower curve,
    // above it the coverage circle is.
    const double crossing = distance * distance / (2.0 * r) - r;
    const double reach = -r + distance;
    const double area =
        2.0 * (integrate_half_chord(std::max(lo, -r), std::min(hi, crossing), r, 0.0) +
               integrate_half_chord(std::max(lo, crossing), std::min(hi, reach), distance, -r));
    return std::clamp(area / strip_area(region), 0.0, 1.0);
}

DiskGeometry build_geometry(double radius, int regions, double tolerance) {
    if (!(radius > 0.0) || regions < 2) {
        throw std::invalid_argument("geometry needs R > 0 and M >= 2");
    }
    const double total = std::numbers::pi * radius * radius;
    std::vector<double> bounds(static_cast<std::size_t>(regions) + 1);
    bounds.front() = -radius;
    bounds.back() = radius;
    // Boundaries are symmetric about the centre; solve the left half only.
    for (int i = 1; 2 * i <= regions; ++i) {
        if (2 * i == regions) {
            bounds[i] = 0.0;
            continue;
        }
        const double target = total * i / regions;
        double lo = -radius;
        double hi = 0.0;
        bool converged = false;
        for (int iter = 0; iter < 200; ++iter) {
            const double mid = 0.5 * (lo + hi);
            const double residual = area_left_of(mid, radius) - target;
            if (std::abs(residual) <= tolerance * total) {
                bounds[i] = mid;
                converged = true;
                break;
            }
            (residual < 0.0 ? lo : hi) = mid;
        }
        if (!converged) {
            throw GeometryError("equal-area bisection did not converge in 200 iterations");
        }
        bounds[regions - i] = -bounds[i];
    }
    return DiskGeometry(radius, std::move(bounds));
}

int step_region(int current, int regions, double q, RandomStream& rng) {
    const double u = rng.uniform();
    const bool first = current == 0;
    const bool last = current == regions - 1;
    if (first) {
        return u < q ? current + 1 : current;
    }
    if (last) {
        return u < q ? current - 1 : current;
    }
    if (u < q) {
        return current - 1;
    }
    if (u < 2.0 * q) {
        return current + 1;
    }
    return current;
}

RelayPosition sample_position_in_region(const DiskGeometry& geometry, int region,
                                        RandomStream& rng) {
    const double r = geometry.radius();
    const double lo = geometry.boundaries()[region];
    const double hi = geometry.boundaries()[region + 1];
    const double nearest = (lo <= 0.0 && hi >= 0.0) ? 0.0 : std::min(std::abs(lo), std::abs(hi));
    const double half_height = std::sqrt(std::max(0.0, r * r - nearest * nearest));
    while (true) {
        const double x = lo + (hi - lo) * rng.uniform();
        const double y = half_height * (2.0 * rng.uniform() - 1.0);
        if (x * x + y * y <= r * r) {
            return RelayPosition{region, Point{x, y}};
        }
    }
}

std::vector<RelayPosition> init_relays(const DiskGeometry& geometry, std::size_t relays,
                                       RandomStream& rng) {
    const double r = geometry.radius();
    std::vector<RelayPosition> out;
    out.reserve(relays);
    while (out.size() < relays) {
        const double x = r * (2.0 * rng.uniform() - 1.0);
        const double y = r * (2.0 * rng.uniform() - 1.0);
        if (x * x + y * y <= r * r) {
            out.push_back(RelayPosition{geometry.region_of(x), Point{x, y}});
        }
    }
    return out;
}

double distance_to_source(const DiskGeometry& geometry, Point p) {
    return std::hypot(p.x + geometry.radius(), p.y);
}

double distance_to_destination(const DiskGeometry& geometry, Point p) {
    return std::hypot(p.x - geometry.radius(), p.y);
}

RegionWalk::RegionWalk(int regions, std::span<const int> initial_regions)
    : region_(initial_regions.begin(), initial_regions.end()),
      members_(static_cast<std::size_t>(regions)),
      slot_(initial_regions.size()) {
    for (std::size_t k = 0; k < region_.size(); ++k) {
        const int reg = region_[k];
        if (reg < 0 || reg >= regions) {
            throw std::out_of_range("initial region out of range");
        }
        slot_[k] = static_cast<std::uint32_t>(members_[reg].size());
        members_[reg].push_back(static_cast<RelayId>(k));
    }
}

void RegionWalk::step(double q, RandomStream& rng) {
    const int m = regions();
    pending_.clear();
    for (int i = 0; i < m; ++i) {
        const bool edge = i == 0 || i == m - 1;
        const double move_probability = edge ? q : 2.0 * q;
        const auto& list = members_[i];
        std::size_t idx = rng.geometric_skip(move_probability);
        while (idx < list.size()) {
            int to = 0;
            if (i == 0) {
                to = 1;
            } else if (i == m - 1) {
                to = m - 2;
            } else {
                to = rng.uniform() < 0.5 ? i - 1 : i + 1;
            }
            pending_.emplace_back(list[idx], to);
            const std::size_t gap = rng.geometric_skip(move_probability);
            if (gap >= list.size()) {
                break;
            }
            idx += gap + 1;
        }
    }
    for (const auto& [relay, to] : pending_) {
        move(relay, to);
    }
}

void RegionWalk::move(RelayId relay, int to) {
    auto& from_list = members_[region_[relay]];
    const std::uint32_t at = slot_[relay];
    const RelayId last = from_list.back();
    from_list[at] = last;
    slot_[last] = at;
    from_list.pop_back();
    region_[relay] = to;
    slot_[relay] = static_cast<std::uint32_t>(members_[to].size());
    members_[to].push_back(relay);
}

}  // namespace odwf::mobility
