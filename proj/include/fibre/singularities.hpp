#pragma once

#include "fibre/grid.hpp"
#include "fibre/model_maps.hpp"

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

namespace fibre {

/// Ordered by severity; a cell takes the most severe class among its corners.
enum class PointClass : std::uint8_t {
    regular,
    fold_definite,
    fold_indefinite,
    fold_degenerate,  // rank 1, but the restricted second derivative is singular
    degenerate_rank0,
};

inline constexpr int point_class_count = 5;

std::string_view to_string(PointClass cls);

struct PointClassification {
    double sigma1 = 0.0;
    double sigma2 = 0.0;
    int rank = 2;
    PointClass cls = PointClass::regular;
};

/// Rank from the singular values of the Jacobian at tolerance tau. Rank-1
/// points are typed by the second derivative of (unit normal to the image
/// line) . f restricted to ker df.
PointClassification classify_point(const MapId& map, const Eigen::VectorXd& x, double tau);

struct SingularSample {
    std::vector<int> vertex;
    std::vector<double> point;
    double sigma1 = 0.0;
    double sigma2 = 0.0;
    int rank = 0;
    PointClass cls = PointClass::regular;
};

struct FlaggedCell {
    std::vector<int> cell;
    PointClass cls = PointClass::regular;
};

struct ScanOptions {
    double tolerance = 0.0;  // 0 selects default_rank_tolerance(grid)
    unsigned threads = 0;
};

struct SingularityReport {
    double tolerance = 0.0;
    std::vector<SingularSample> samples;  // non-regular grid vertices, by vertex index
    std::vector<FlaggedCell> cells;       // non-regular domain cells, by cell index
    std::int64_t domain_cells = 0;
    std::array<std::int64_t, point_class_count> cell_counts{};

    std::int64_t count(PointClass cls) const { return cell_counts[static_cast<int>(cls)]; }
};

SingularityReport scan_singularities(const MapId& map, const GridSpec& grid, const ScanOptions& options = {});

} // namespace fibre
