#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fibre {

enum class PieceKind {
    boundary_collar,
    round_1_handle,
    round_2_handle,
    trivial_solid_torus,
    trivial_T2xD2,
};

std::string_view to_string(PieceKind kind);
PieceKind parse_piece_kind(std::string_view name);

struct FiberedPiece {
    PieceKind kind = PieceKind::boundary_collar;
    int dimension = 3;
    std::string label;

    /// Every piece is a circle times something (or T^2 x D^2), so this is 0;
    /// computed from the product formula rather than stored.
    int euler_characteristic() const;
    /// Number of boundary components the piece exposes for gluing.
    int boundary_count() const;

    bool operator==(const FiberedPiece&) const = default;
};

struct FiberComponent {
    std::optional<int> genus;  // present for surface fibers (4-D complexes)
    int multiplicity = 1;

    bool operator==(const FiberComponent&) const = default;
};

/// Components kept in canonical order: multiplicity descending, then genus descending.
struct RegionFiber {
    std::vector<FiberComponent> components;

    void normalize();
    int total_genus() const;
    bool operator==(const RegionFiber&) const = default;
};

struct Slope {
    int multiplicity = 1;
    std::array<int, 2> curve{1, 1};
    bool verified = false;

    bool operator==(const Slope&) const = default;
};

struct Gluing {
    int piece_a = 0;
    int boundary_a = 0;
    int piece_b = 0;
    int boundary_b = 0;
    Slope slope;

    bool operator==(const Gluing&) const = default;
};

struct FoldCircle {
    PieceKind kind = PieceKind::round_1_handle;
    int piece = 0;        // index of the round piece producing the fold
    double radius = 0.5;  // in the unit base disk; strictly decreasing inward

    bool operator==(const FoldCircle&) const = default;
};

/// Fibered pieces glued along fibered boundaries over the unit disk. Region i
/// lies between fold circles i-1 and i; region 0 touches the boundary circle.
struct PieceComplex {
    int dimension = 3;
    int multiplicity = 1;
    std::vector<FiberedPiece> pieces;
    std::vector<Gluing> gluings;
    std::vector<FoldCircle> base_diagram;
    std::vector<RegionFiber> region_fibers;

    int fold_circle_count() const { return static_cast<int>(base_diagram.size()); }
    const RegionFiber& innermost() const { return region_fibers.back(); }
    int filling_count() const;

    bool operator==(const PieceComplex&) const = default;
};

struct ValidationReport {
    bool passed = true;
    std::vector<std::string> checks;  // rules evaluated, in order
    std::optional<std::string> failure;

    /// Records a rule; the first violated rule becomes `failure`.
    void check(bool ok, std::string_view rule, const std::string& detail = {});
};

PieceComplex build_exceptional_21();
PieceComplex build_exceptional_p1(int p);
PieceComplex build_multiple_fiber(int p);

/// Inner fiber produced by crossing one fold circle of the given kind from
/// outside, or nullopt if the transition is illegal for that dimension.
std::optional<RegionFiber> apply_transition(const RegionFiber& outer, PieceKind kind, int dimension);

/// Validates the fold-circle sequence against region labels only.
ValidationReport validate_regions(const std::vector<PieceKind>& folds, const std::vector<RegionFiber>& regions,
                                  int dimension);
ValidationReport validate_complex(const PieceComplex& complex);

enum class ChartRole { G1, G2 };
std::string_view to_string(ChartRole role);

struct AngleInterval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
    /// 0 outside, 1 interior, 2 endpoint (angles taken mod 2 pi).
    int locate(double angle) const;
};

/// One of the two charts embedding a 4-D round handle of a round pair into
/// the movie S^1 x N: (phi, theta, x, t) -> (phi + theta, g(phi, x, t)).
struct MovieChart {
    int pair = 0;           // attachment order, from the outside
    ChartRole role = ChartRole::G1;
    double phi = 0.0;       // frame angle
    AngleInterval interval;
    double singular_theta = 0.0;  // handle parameter of the fold point
    double singular_phi = 0.0;    // family parameter meeting the frame there
    int frame_hits = 0;           // fold points of this chart in the frame
};

std::vector<MovieChart> movie_slices(int p, double phi);
/// True if the G1/G2 intervals of every pair cover the circle with disjoint interiors.
bool charts_partition_circle(const std::vector<MovieChart>& charts, int samples = 4096);

} // namespace fibre
