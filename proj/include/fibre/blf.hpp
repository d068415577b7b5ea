#pragma once

#include "fibre/handle_complex.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace fibre {

struct EllipticSurfaceSpec {
    int n = 1;
    int p = 1;
    int q = 1;
    std::optional<int> lefschetz_count;  // defaults to 12 n

    int lefschetz() const { return lefschetz_count.value_or(12 * n); }
    void validate() const;
};

struct Point2 {
    double x = 0.0;
    double y = 0.0;
    bool operator==(const Point2&) const = default;
};

/// A fold circle on the base, labelled by the fibers on either side. Labels
/// carry multiplicities relative to the group's multiple fiber.
struct BLFFoldCircle {
    PieceKind kind = PieceKind::round_1_handle;
    double radius = 1.0;
    RegionFiber outer;
    RegionFiber inner;
    bool operator==(const BLFFoldCircle&) const = default;
};

struct FoldGroup {
    std::string label;
    int multiplicity = 1;
    Point2 center;
    std::vector<BLFFoldCircle> circles;  // outermost first
    bool operator==(const FoldGroup&) const = default;
};

struct BLFRegion {
    int id = 0;
    int parent = -1;  // -1 for the outer region
    int group = -1;   // -1 for the outer region
    int depth = 0;    // number of circles enclosing the region
    RegionFiber fiber;
    bool operator==(const BLFRegion&) const = default;
};

/// Critical image of a broken Lefschetz fibration on E(n)_{p,q}, drawn in the
/// equatorial chart of the base sphere.
struct BLFDiagram {
    int n = 1;
    int p = 1;
    int q = 1;
    std::vector<Point2> lefschetz_points;
    std::array<FoldGroup, 2> fold_groups;
    std::vector<BLFRegion> regions;  // region 0 is the outer region
    bool operator==(const BLFDiagram&) const = default;
};

BLFDiagram build_blf(const EllipticSurfaceSpec& spec);
ValidationReport validate_blf(const BLFDiagram& diagram);

struct SvgLayout {
    int width = 720;
    int height = 480;
    double scale = 48.0;  // pixels per base unit
    std::string lefschetz_color = "blue";
    std::string fold_color = "red";
    double mark_size = 6.0;
    double stroke_width = 2.0;
};

std::string emit_svg(const BLFDiagram& diagram, const SvgLayout& layout = {});

} // namespace fibre
