#pragma once

#include "fibre/grid.hpp"
#include "fibre/model_maps.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

namespace fibre {

struct TraceOptions {
    double rank_tolerance = 0.0;  // 0 selects default_rank_tolerance(grid)
    bool allow_singular = false;
    unsigned threads = 0;
};

/// Thickened preimage of one target value on a cell grid.
///
/// A cell belongs to the preimage when |f(center) - w| < delta. With
/// grid.delta == 0 the threshold is per cell: 1.25 times first_order_variation
/// at the center with half-cell steps, i.e. how far f can move inside the cell
/// to first order.
struct FiberApproximation {
    MapId map;
    GridSpec grid;
    Complex target;
    double rank_tolerance = 0.0;
    std::vector<std::int64_t> cells;  // sorted linear cell indices
    std::vector<int> component;       // per cell; ids ordered by first cell
    std::vector<char> singular;       // per cell; some corner or the center is non-regular
    int component_count = 0;

    std::int64_t singular_cells() const;
};

/// Target encoding: disk-valued maps use w directly; fold charts read w as
/// (Re w, Im w) = (t, value).
FiberApproximation trace_fiber(const MapId& map, Complex w, const GridSpec& grid, const TraceOptions& options = {});

/// Root clusters of the fiber in the slice through the given angles, one angle
/// per periodic axis. Clusters are connected within the slice only.
int slice_multiplicity(const FiberApproximation& fiber, const std::vector<double>& angles);
/// Same, split by component id.
std::vector<int> slice_multiplicity_by_component(const FiberApproximation& fiber, const std::vector<double>& angles);

/// Number of turns of the slice angle along `axis` (default: last periodic
/// axis) needed to carry a root cluster back to itself. Other periodic axes
/// stay at their first cell.
int core_winding(const FiberApproximation& fiber, int axis = -1);

struct FiberStats {
    int component_count = 0;
    std::vector<int> slice_multiplicity;  // per component
    std::optional<int> core_winding;      // only for connected fibers
    std::int64_t cell_count = 0;
};

FiberStats fiber_stats(const FiberApproximation& fiber, const std::vector<double>& slice_angles);

/// component,c0,c1,... rows of cell centers.
void write_component_csv(const FiberApproximation& fiber, std::ostream& out);

} // namespace fibre
