#include "fibre/fiber_tracer.hpp"

#include "fibre/error.hpp"
#include "fibre/parallel.hpp"
#include "fibre/singularities.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace fibre {

namespace {

constexpr double first_order_margin = 1.25;

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t a) {
        while (parent_[a] != a) {
            parent_[a] = parent_[parent_[a]];
            a = parent_[a];
        }
        return a;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a < b) std::swap(a, b);
        parent_[a] = b;  // smaller index is the root
    }

private:
    std::vector<std::size_t> parent_;
};

std::optional<std::size_t> position(const std::vector<std::int64_t>& sorted, std::int64_t value) {
    const auto it = std::lower_bound(sorted.begin(), sorted.end(), value);
    if (it == sorted.end() || *it != value) return std::nullopt;
    return static_cast<std::size_t>(it - sorted.begin());
}

// Labels connected pieces of `subset` (positions into fiber.cells) using face
// adjacency restricted to `axes`. Labels are ordered by first member.
std::vector<int> label_clusters(const FiberApproximation& fiber, const Lattice& lattice,
                                const std::vector<std::size_t>& subset, const std::vector<int>& axes, int& count) {
    std::vector<std::int64_t> keys;
    keys.reserve(subset.size());
    for (std::size_t s : subset) keys.push_back(fiber.cells[s]);
    UnionFind uf(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i)
        for (int a : axes)
            if (const auto nb = lattice.neighbor(keys[i], a, +1))
                if (const auto j = position(keys, *nb)) uf.unite(i, *j);
    std::vector<int> labels(keys.size());
    std::map<std::size_t, int> ids;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        const auto [it, inserted] = ids.try_emplace(uf.find(i), static_cast<int>(ids.size()));
        labels[i] = it->second;
    }
    count = static_cast<int>(ids.size());
    return labels;
}

std::vector<int> periodic_axes(const GridSpec& grid) {
    std::vector<int> out;
    const auto axes = grid.axes();
    for (int a = 0; a < static_cast<int>(axes.size()); ++a)
        if (axes[a].periodic) out.push_back(a);
    return out;
}

std::vector<int> flat_axes(const GridSpec& grid) {
    std::vector<int> out;
    const auto axes = grid.axes();
    for (int a = 0; a < static_cast<int>(axes.size()); ++a)
        if (!axes[a].periodic) out.push_back(a);
    return out;
}

int angle_cell(const Axis& axis, double angle) {
    const int i = static_cast<int>(std::floor(reduce_angle(angle) / axis.step()));
    return std::clamp(i, 0, axis.cells - 1);
}

Complex as_complex(const Eigen::VectorXd& v) { return {v[0], v[1]}; }

} // namespace

std::int64_t FiberApproximation::singular_cells() const {
    return std::count(singular.begin(), singular.end(), 1);
}

FiberApproximation trace_fiber(const MapId& map, Complex w, const GridSpec& grid, const TraceOptions& options) {
    check_compatible(map, grid);
    if (disk_offset(map) >= 0 && std::abs(w) >= 1.0)
        throw FibreError(ErrorCode::InvalidArgument, "target must lie in the open unit disk");
    const auto axes = grid.axes();
    const Lattice lattice = grid.cells();
    const int dim = grid.dimension();
    std::vector<double> half_steps;
    for (const Axis& ax : axes) half_steps.push_back(0.5 * ax.step());
    const double tau = options.rank_tolerance > 0.0 ? options.rank_tolerance : default_rank_tolerance(grid);

    const unsigned workers = worker_count(options.threads);
    const std::int64_t chunks = std::min<std::int64_t>(std::max(1u, workers) * 4, lattice.size());
    std::vector<std::vector<std::int64_t>> hits(chunks);
    std::vector<std::vector<char>> flags(chunks);
    parallel_chunks(chunks, workers, [&](std::int64_t cb, std::int64_t ce) {
        Eigen::VectorXd x(dim);
        for (std::int64_t c = cb; c < ce; ++c) {
            const std::int64_t begin = lattice.size() * c / chunks;
            const std::int64_t end = lattice.size() * (c + 1) / chunks;
            for (std::int64_t cell = begin; cell < end; ++cell) {
                const std::vector<int> idx = lattice.unravel(cell);
                if (!grid.cell_in_domain(idx)) continue;
                for (int a = 0; a < dim; ++a) x[a] = axes[a].center(idx[a]);
                const double miss = std::abs(as_complex(evaluate(map, x)) - w);
                double threshold = grid.delta;
                if (threshold == 0.0) threshold = first_order_margin * first_order_variation(map, x, half_steps);
                if (!(miss < threshold)) continue;
                // Singular if the center or any corner fails the rank test.
                bool singular = classify_point(map, x, tau).cls != PointClass::regular;
                for (int mask = 0; mask < (1 << dim) && !singular; ++mask) {
                    for (int a = 0; a < dim; ++a) x[a] = axes[a].vertex(idx[a] + ((mask >> a) & 1));
                    singular = classify_point(map, x, tau).cls != PointClass::regular;
                }
                hits[c].push_back(cell);
                flags[c].push_back(singular ? 1 : 0);
            }
        }
    });

    FiberApproximation fiber{map, grid, w, tau, {}, {}, {}, 0};
    for (std::int64_t c = 0; c < chunks; ++c) {
        fiber.cells.insert(fiber.cells.end(), hits[c].begin(), hits[c].end());
        fiber.singular.insert(fiber.singular.end(), flags[c].begin(), flags[c].end());
    }
    if (fiber.cells.empty()) throw FibreError(ErrorCode::EmptyFiber, "no cell maps near the target");
    if (!options.allow_singular && fiber.singular_cells() > 0)
        throw FibreError(ErrorCode::ToleranceTooCoarse,
                         std::to_string(fiber.singular_cells()) + " preimage cells touch the singular set");

    std::vector<std::size_t> all(fiber.cells.size());
    std::iota(all.begin(), all.end(), 0);
    std::vector<int> every_axis(dim);
    std::iota(every_axis.begin(), every_axis.end(), 0);
    fiber.component = label_clusters(fiber, lattice, all, every_axis, fiber.component_count);
    return fiber;
}

namespace {

std::vector<std::size_t> slice_members(const FiberApproximation& fiber, const std::vector<int>& fixed_axes,
                                       const std::vector<int>& fixed_cells) {
    const Lattice lattice = fiber.grid.cells();
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < fiber.cells.size(); ++i) {
        const std::vector<int> idx = lattice.unravel(fiber.cells[i]);
        bool inside = true;
        for (std::size_t a = 0; a < fixed_axes.size() && inside; ++a)
            inside = idx[fixed_axes[a]] == fixed_cells[a];
        if (inside) out.push_back(i);
    }
    return out;
}

std::vector<int> slice_cells_for(const FiberApproximation& fiber, const std::vector<double>& angles) {
    const std::vector<int> per = periodic_axes(fiber.grid);
    if (angles.size() != per.size())
        throw FibreError(ErrorCode::DimensionMismatch, "slice needs one angle per periodic axis (" +
                                                           std::to_string(per.size()) + ")");
    const auto axes = fiber.grid.axes();
    std::vector<int> out;
    for (std::size_t a = 0; a < per.size(); ++a) out.push_back(angle_cell(axes[per[a]], angles[a]));
    return out;
}

} // namespace

std::vector<int> slice_multiplicity_by_component(const FiberApproximation& fiber, const std::vector<double>& angles) {
    const std::vector<int> per = periodic_axes(fiber.grid);
    const std::vector<std::size_t> members = slice_members(fiber, per, slice_cells_for(fiber, angles));
    for (std::size_t m : members)
        if (fiber.singular[m])
            throw FibreError(ErrorCode::NonTransverseSlice, "slice meets a singular cell");
    int count = 0;
    const std::vector<int> labels = label_clusters(fiber, fiber.grid.cells(), members, flat_axes(fiber.grid), count);
    std::vector<int> out(fiber.component_count, 0);
    std::vector<char> seen(count, 0);
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (seen[labels[i]]) continue;
        seen[labels[i]] = 1;
        ++out[fiber.component[members[i]]];
    }
    return out;
}

int slice_multiplicity(const FiberApproximation& fiber, const std::vector<double>& angles) {
    const std::vector<int> per = slice_multiplicity_by_component(fiber, angles);
    return std::accumulate(per.begin(), per.end(), 0);
}

int core_winding(const FiberApproximation& fiber, int axis) {
    if (fiber.component_count > 1)
        throw FibreError(ErrorCode::MultiComponent,
                         "fiber has " + std::to_string(fiber.component_count) + " components");
    const std::vector<int> per = periodic_axes(fiber.grid);
    if (per.empty()) throw FibreError(ErrorCode::InvalidArgument, "grid has no circle direction");
    if (axis < 0) axis = per.back();
    if (std::find(per.begin(), per.end(), axis) == per.end())
        throw FibreError(ErrorCode::InvalidArgument, "winding axis must be periodic");

    const Lattice lattice = fiber.grid.cells();
    const int steps = fiber.grid.axes()[axis].cells;
    const std::vector<int> flat = flat_axes(fiber.grid);

    // Clusters of every slice along `axis`, other periodic axes at cell 0.
    struct Slice {
        std::vector<std::size_t> members;
        std::vector<int> labels;
        int count = 0;
    };
    std::vector<Slice> slices(steps);
    for (int s = 0; s < steps; ++s) {
        std::vector<int> fixed_cells;
        for (int a : per) fixed_cells.push_back(a == axis ? s : 0);
        slices[s].members = slice_members(fiber, per, fixed_cells);
        slices[s].labels = label_clusters(fiber, lattice, slices[s].members, flat, slices[s].count);
        if (slices[s].count == 0)
            throw FibreError(ErrorCode::ToleranceTooCoarse, "fiber misses a slice; refine the grid");
    }

    // Cluster of slice s+1 reached from cluster `label` of slice s.
    auto advance = [&](int s, int label) {
        const Slice& from = slices[s];
        const Slice& to = slices[(s + 1) % steps];
        std::vector<std::int64_t> to_keys;
        for (std::size_t m : to.members) to_keys.push_back(fiber.cells[m]);
        int target = -1;
        for (std::size_t i = 0; i < from.members.size(); ++i) {
            if (from.labels[i] != label) continue;
            const auto nb = lattice.neighbor(fiber.cells[from.members[i]], axis, +1);
            if (!nb) continue;
            const auto j = position(to_keys, *nb);
            if (!j) continue;
            if (target >= 0 && to.labels[*j] != target)
                throw FibreError(ErrorCode::ToleranceTooCoarse, "root clusters merge between slices");
            target = to.labels[*j];
        }
        if (target < 0) throw FibreError(ErrorCode::ToleranceTooCoarse, "root cluster lost between slices");
        return target;
    };

    int label = 0;
    for (int turns = 1; turns <= slices[0].count; ++turns) {
        for (int s = 0; s < steps; ++s) label = advance(s, label);
        if (label == 0) return turns;
    }
    throw FibreError(ErrorCode::ToleranceTooCoarse, "cluster tracking did not close up");
}

FiberStats fiber_stats(const FiberApproximation& fiber, const std::vector<double>& slice_angles) {
    FiberStats stats;
    stats.component_count = fiber.component_count;
    stats.slice_multiplicity = slice_multiplicity_by_component(fiber, slice_angles);
    stats.cell_count = static_cast<std::int64_t>(fiber.cells.size());
    if (fiber.component_count == 1 && !periodic_axes(fiber.grid).empty()) stats.core_winding = core_winding(fiber);
    return stats;
}

void write_component_csv(const FiberApproximation& fiber, std::ostream& out) {
    const Lattice lattice = fiber.grid.cells();
    const auto axes = fiber.grid.axes();
    out << "component";
    for (std::size_t a = 0; a < axes.size(); ++a) out << ",c" << a;
    out << '\n';
    char buf[32];
    for (std::size_t i = 0; i < fiber.cells.size(); ++i) {
        const std::vector<int> idx = lattice.unravel(fiber.cells[i]);
        out << fiber.component[i];
        for (std::size_t a = 0; a < axes.size(); ++a) {
            std::snprintf(buf, sizeof buf, "%.17g", axes[a].center(idx[a]));
            out << ',' << buf;
        }
        out << '\n';
    }
}

} // namespace fibre
