#include "fibre/grid.hpp"

#include "fibre/error.hpp"

#include <cmath>
#include <numbers>

namespace fibre {

std::string_view to_string(DomainKind kind) {
    switch (kind) {
    case DomainKind::solid_torus: return "solid_torus";
    case DomainKind::T2xD2: return "T2xD2";
    case DomainKind::box: return "box";
    }
    return "unknown";
}

DomainKind parse_domain(std::string_view name) {
    if (name == "solid_torus") return DomainKind::solid_torus;
    if (name == "T2xD2") return DomainKind::T2xD2;
    if (name == "box") return DomainKind::box;
    throw FibreError(ErrorCode::InvalidArgument, "unknown domain '" + std::string(name) + "'");
}

Lattice::Lattice(std::vector<int> extents, std::vector<bool> periodic)
    : extents_(std::move(extents)), periodic_(std::move(periodic)), strides_(extents_.size()) {
    std::int64_t stride = 1;
    for (int a = dimension() - 1; a >= 0; --a) {
        strides_[a] = stride;
        stride *= extents_[a];
    }
    size_ = stride;
}

std::int64_t Lattice::linear(const std::vector<int>& index) const {
    std::int64_t out = 0;
    for (int a = 0; a < dimension(); ++a) out += strides_[a] * index[a];
    return out;
}

std::vector<int> Lattice::unravel(std::int64_t linear) const {
    std::vector<int> index(extents_.size());
    for (int a = 0; a < dimension(); ++a) {
        index[a] = static_cast<int>(linear / strides_[a]);
        linear %= strides_[a];
    }
    return index;
}

std::optional<std::int64_t> Lattice::neighbor(std::int64_t linear, int axis, int dir) const {
    const int i = static_cast<int>((linear / strides_[axis]) % extents_[axis]);
    int j = i + dir;
    if (j < 0 || j >= extents_[axis]) {
        if (!periodic_[axis] || extents_[axis] < 2) return std::nullopt;
        j = (j + extents_[axis]) % extents_[axis];
    }
    return linear + static_cast<std::int64_t>(j - i) * strides_[axis];
}

int GridSpec::dimension() const {
    switch (domain) {
    case DomainKind::solid_torus: return 3;
    case DomainKind::T2xD2: return 4;
    case DomainKind::box: return static_cast<int>(resolution.size());
    }
    return 0;
}

std::vector<Axis> GridSpec::axes() const {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    std::vector<Axis> out;
    const int angles = domain == DomainKind::solid_torus ? 1 : domain == DomainKind::T2xD2 ? 2 : 0;
    for (int a = 0; a < static_cast<int>(resolution.size()); ++a) {
        if (a < angles)
            out.push_back({0.0, two_pi, true, resolution[a]});
        else if (domain == DomainKind::box)
            out.push_back({-half_width, half_width, false, resolution[a]});
        else
            out.push_back({-1.0, 1.0, false, resolution[a]});
    }
    return out;
}

Lattice GridSpec::cells() const {
    std::vector<int> ext;
    std::vector<bool> per;
    for (const Axis& ax : axes()) {
        ext.push_back(ax.cells);
        per.push_back(ax.periodic);
    }
    return {ext, per};
}

Lattice GridSpec::vertices() const {
    std::vector<int> ext;
    std::vector<bool> per;
    for (const Axis& ax : axes()) {
        ext.push_back(ax.vertex_count());
        per.push_back(ax.periodic);
    }
    return {ext, per};
}

int GridSpec::disk_axis() const {
    switch (domain) {
    case DomainKind::solid_torus: return 1;
    case DomainKind::T2xD2: return 2;
    case DomainKind::box: return -1;
    }
    return -1;
}

bool GridSpec::cell_in_domain(const std::vector<int>& cell) const {
    const int d = disk_axis();
    if (d < 0) return true;
    const auto ax = axes();
    auto nearest = [&](int axis) {
        const double lo = ax[axis].vertex(cell[axis]);
        const double hi = lo + ax[axis].step();
        if (lo > 0.0) return lo;
        if (hi < 0.0) return hi;
        return 0.0;
    };
    return std::hypot(nearest(d), nearest(d + 1)) <= 1.0;
}

double GridSpec::cell_radius() const {
    double s = 0.0;
    for (const Axis& ax : axes()) s += ax.step() * ax.step();
    return 0.5 * std::sqrt(s);
}

double GridSpec::diameter() const {
    double s = 0.0;
    for (const Axis& ax : axes()) s += (ax.hi - ax.lo) * (ax.hi - ax.lo);
    return std::sqrt(s);
}

void GridSpec::validate() const {
    if (domain != DomainKind::box && static_cast<int>(resolution.size()) != dimension())
        throw FibreError(ErrorCode::DimensionMismatch,
                         std::string(to_string(domain)) + " grids need " + std::to_string(dimension()) +
                             " resolutions");
    if (resolution.empty()) throw FibreError(ErrorCode::InvalidArgument, "grid has no axes");
    for (int r : resolution)
        if (r < 8) throw FibreError(ErrorCode::InvalidArgument, "grid resolution must be >= 8 per axis");
    if (delta < 0.0) throw FibreError(ErrorCode::InvalidArgument, "delta must be >= 0");
    if (!(half_width > 0.0)) throw FibreError(ErrorCode::InvalidArgument, "box half-width must be positive");
}

DomainKind domain_for(const MapId& map) {
    if (std::holds_alternative<MultipleFiberMap>(map)) return DomainKind::T2xD2;
    if (std::holds_alternative<SeifertMap>(map)) return DomainKind::solid_torus;
    if (std::holds_alternative<FoldChartMap>(map)) return DomainKind::box;
    throw FibreError(ErrorCode::InvalidArgument, "psi maps the boundary 3-torus to itself; it has no grid domain");
}

void check_compatible(const MapId& map, const GridSpec& grid) {
    grid.validate();
    if (domain_for(map) != grid.domain)
        throw FibreError(ErrorCode::InvalidArgument, map_name(map) + " is not defined on a " +
                                                         std::string(to_string(grid.domain)) + " grid");
    if (grid.dimension() != domain_dimension(map))
        throw FibreError(ErrorCode::DimensionMismatch, "grid dimension " + std::to_string(grid.dimension()) +
                                                           " != map dimension " +
                                                           std::to_string(domain_dimension(map)));
}

double default_rank_tolerance(const GridSpec& grid) { return 1e-8 * grid.diameter(); }

} // namespace fibre
