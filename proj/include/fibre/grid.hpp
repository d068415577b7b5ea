#pragma once

#include "fibre/model_maps.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fibre {

enum class DomainKind {
    solid_torus,  // (u, x, y): S^1 x D^2
    T2xD2,        // (xi1, xi2, x, y)
    box,          // [-w, w]^n, used for fold charts
};

std::string_view to_string(DomainKind kind);
DomainKind parse_domain(std::string_view name);

struct Axis {
    double lo = 0.0;
    double hi = 1.0;
    bool periodic = false;
    int cells = 8;

    double step() const { return (hi - lo) / cells; }
    int vertex_count() const { return periodic ? cells : cells + 1; }
    double vertex(int i) const { return lo + i * step(); }
    double center(int i) const { return lo + (i + 0.5) * step(); }
};

/// Row-major multi-index arithmetic over a product of axes, with optional
/// wraparound per axis.
class Lattice {
public:
    Lattice(std::vector<int> extents, std::vector<bool> periodic);

    int dimension() const { return static_cast<int>(extents_.size()); }
    std::int64_t size() const { return size_; }
    const std::vector<int>& extents() const { return extents_; }

    std::int64_t linear(const std::vector<int>& index) const;
    std::vector<int> unravel(std::int64_t linear) const;
    /// Neighbour one step along `axis` in direction `dir` (+1/-1), if any.
    std::optional<std::int64_t> neighbor(std::int64_t linear, int axis, int dir) const;

private:
    std::vector<int> extents_;
    std::vector<bool> periodic_;
    std::vector<std::int64_t> strides_;
    std::int64_t size_ = 0;
};

struct GridSpec {
    DomainKind domain = DomainKind::solid_torus;
    std::vector<int> resolution;  // cells per axis, each >= 8
    double delta = 0.0;           // preimage thickness; 0 selects the per-cell first-order bound
    double half_width = 1.0;      // box domains only

    int dimension() const;
    std::vector<Axis> axes() const;
    Lattice cells() const;
    Lattice vertices() const;
    /// Axis index of the disk's x coordinate, or -1 for boxes.
    int disk_axis() const;
    /// True if the cell meets the closed unit disk (always true for boxes).
    bool cell_in_domain(const std::vector<int>& cell) const;
    /// Half the Euclidean diagonal of one cell.
    double cell_radius() const;
    /// Euclidean diameter of the coordinate box.
    double diameter() const;

    void validate() const;
};

DomainKind domain_for(const MapId& map);
/// Throws InvalidArgument unless the grid matches the map's domain.
void check_compatible(const MapId& map, const GridSpec& grid);
/// 1e-8 times the grid's diameter.
double default_rank_tolerance(const GridSpec& grid);

} // namespace fibre
