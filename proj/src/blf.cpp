#include "fibre/blf.hpp"

#include "fibre/error.hpp"
#include "fibre/surgery.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

namespace fibre {

namespace {

constexpr double group_offset = 3.0;   // group centers at (-3, 0) and (3, 0)
constexpr double group_radius = 2.4;   // scales the unit base disk of each complex
constexpr double lefschetz_rx = 6.5;   // Lefschetz points sit on this ellipse
constexpr double lefschetz_ry = 3.5;

FoldGroup make_group(std::string label, int multiplicity, Point2 center) {
    const PieceComplex c = build_multiple_fiber(multiplicity);
    FoldGroup g{std::move(label), multiplicity, center, {}};
    for (std::size_t j = 0; j < c.base_diagram.size(); ++j)
        g.circles.push_back({c.base_diagram[j].kind, group_radius * c.base_diagram[j].radius, c.region_fibers[j],
                             c.region_fibers[j + 1]});
    return g;
}

RegionFiber regular_torus() {
    RegionFiber f;
    f.components.push_back({1, 1});
    return f;
}

double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

} // namespace

void EllipticSurfaceSpec::validate() const {
    if (n < 1) throw FibreError(ErrorCode::InvalidArgument, "n must be >= 1");
    if (p < 1 || q < 1) throw FibreError(ErrorCode::InvalidMultiplicity, "multiplicities must be >= 1");
    if (gcd(p, q) != 1)
        throw FibreError(ErrorCode::NotCoprime, "gcd(" + std::to_string(p) + ", " + std::to_string(q) + ") != 1");
    if (lefschetz() < 0) throw FibreError(ErrorCode::InvalidArgument, "Lefschetz count must be >= 0");
}

BLFDiagram build_blf(const EllipticSurfaceSpec& spec) {
    spec.validate();
    BLFDiagram d;
    d.n = spec.n;
    d.p = spec.p;
    d.q = spec.q;
    const int count = spec.lefschetz();
    for (int i = 0; i < count; ++i) {
        const double a = 2.0 * std::numbers::pi * (i + 0.5) / count;
        d.lefschetz_points.push_back({lefschetz_rx * std::cos(a), lefschetz_ry * std::sin(a)});
    }
    d.fold_groups = {make_group("p", spec.p, {-group_offset, 0.0}), make_group("q", spec.q, {group_offset, 0.0})};

    d.regions.push_back({0, -1, -1, 0, regular_torus()});
    for (int g = 0; g < 2; ++g) {
        int parent = 0;
        const auto& circles = d.fold_groups[g].circles;
        for (std::size_t j = 0; j < circles.size(); ++j) {
            const int id = static_cast<int>(d.regions.size());
            d.regions.push_back({id, parent, g, static_cast<int>(j) + 1, circles[j].inner});
            parent = id;
        }
    }
    return d;
}

ValidationReport validate_blf(const BLFDiagram& d) {
    ValidationReport r;
    r.check(d.n >= 1 && d.p >= 1 && d.q >= 1 && gcd(d.p, d.q) == 1, "surface_data",
            "need n, p, q >= 1 with gcd(p, q) = 1");
    if (!r.passed) return r;

    const std::size_t expected = 2 * (d.p - 1) + 2 * (d.q - 1);
    const std::size_t total = d.fold_groups[0].circles.size() + d.fold_groups[1].circles.size();
    r.check(total == expected, "fold_circle_count",
            std::to_string(total) + " circles, expected 2(p-1) + 2(q-1) = " + std::to_string(expected));
    const std::array<int, 2> mult{d.p, d.q};
    for (int g = 0; g < 2; ++g) {
        const FoldGroup& group = d.fold_groups[g];
        const std::string name = "group " + group.label;
        r.check(group.multiplicity == mult[g] && group.circles.size() == 2u * (mult[g] - 1), "group_size",
                name + " must hold 2(m-1) circles for multiplicity " + std::to_string(mult[g]));

        bool nested = true, chained = true;
        double prev = std::numeric_limits<double>::infinity();
        std::vector<PieceKind> kinds;
        std::vector<RegionFiber> regions;
        for (std::size_t j = 0; j < group.circles.size(); ++j) {
            const BLFFoldCircle& c = group.circles[j];
            nested = nested && c.radius > 0.0 && c.radius < prev;
            prev = c.radius;
            if (j == 0) regions.push_back(c.outer);
            chained = chained && c.outer == regions.back();
            kinds.push_back(c.kind);
            regions.push_back(c.inner);
        }
        r.check(nested, "group_nesting", name + " radii must strictly decrease");
        r.check(chained, "group_labels_chain", name + " inner label of each circle is the next circle's outer label");
        if (!group.circles.empty()) {
            const ValidationReport sub = validate_regions(kinds, regions, 4);
            r.check(sub.passed, "group_transitions", name + ": " + sub.failure.value_or(""));
            const RegionFiber& in = regions.back();
            r.check(static_cast<int>(in.components.size()) == mult[g], "innermost_tori",
                    name + " innermost region must hold " + std::to_string(mult[g]) + " tori");
        }
    }

    const auto& ga = d.fold_groups[0];
    const auto& gb = d.fold_groups[1];
    const double ra = ga.circles.empty() ? 0.0 : ga.circles.front().radius;
    const double rb = gb.circles.empty() ? 0.0 : gb.circles.front().radius;
    r.check(ga.circles.empty() || gb.circles.empty() || distance(ga.center, gb.center) > ra + rb, "groups_disjoint");

    bool outside = true;
    for (const Point2& pt : d.lefschetz_points)
        for (const FoldGroup& g : d.fold_groups)
            if (!g.circles.empty()) outside = outside && distance(pt, g.center) > g.circles.front().radius;
    r.check(outside, "lefschetz_in_outer_region", "Lefschetz points must lie outside every fold circle");

    bool tree = d.regions.size() == total + 1 && !d.regions.empty() && d.regions[0].parent == -1 &&
                d.regions[0].fiber == regular_torus();
    if (tree) {
        std::size_t id = 1;
        for (int g = 0; g < 2 && tree; ++g) {
            int parent = 0;
            for (std::size_t j = 0; j < d.fold_groups[g].circles.size() && tree; ++j, ++id) {
                const BLFRegion& reg = d.regions[id];
                tree = reg.id == static_cast<int>(id) && reg.parent == parent && reg.group == g &&
                       reg.depth == static_cast<int>(j) + 1 && reg.fiber == d.fold_groups[g].circles[j].inner;
                parent = reg.id;
            }
        }
    }
    r.check(tree, "region_tree", "regions must nest the fold circles group by group under a regular torus");
    return r;
}

std::string emit_svg(const BLFDiagram& d, const SvgLayout& layout) {
    const double cx = layout.width / 2.0;
    const double cy = layout.height / 2.0;
    auto px = [&](double x) { return fmt(cx + layout.scale * x); };
    auto py = [&](double y) { return fmt(cy - layout.scale * y); };

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << layout.width << "\" height=\""
        << layout.height << "\" viewBox=\"0 0 " << layout.width << ' ' << layout.height << "\">\n"
        << "  <title>Critical image on the base sphere of E(" << d.n << ")_{" << d.p << ',' << d.q
        << "}</title>\n"
        << "  <rect x=\"0\" y=\"0\" width=\"" << layout.width << "\" height=\"" << layout.height
        << "\" fill=\"white\"/>\n";
    for (const FoldGroup& g : d.fold_groups) {
        out << "  <g id=\"fold-group-" << g.label << "\" fill=\"none\" stroke=\"" << layout.fold_color
            << "\" stroke-width=\"" << fmt(layout.stroke_width) << "\">\n";
        for (const BLFFoldCircle& c : g.circles)
            out << "    <circle class=\"fold " << to_string(c.kind) << "\" cx=\"" << px(g.center.x) << "\" cy=\""
                << py(g.center.y) << "\" r=\"" << fmt(layout.scale * c.radius) << "\"/>\n";
        out << "  </g>\n";
    }
    out << "  <g id=\"lefschetz\" stroke=\"" << layout.lefschetz_color << "\" stroke-width=\""
        << fmt(layout.stroke_width) << "\">\n";
    const double s = layout.mark_size;
    for (const Point2& pt : d.lefschetz_points) {
        const double x = cx + layout.scale * pt.x;
        const double y = cy - layout.scale * pt.y;
        out << "    <path class=\"lefschetz\" d=\"M " << fmt(x - s) << ' ' << fmt(y - s) << " L " << fmt(x + s) << ' '
            << fmt(y + s) << " M " << fmt(x - s) << ' ' << fmt(y + s) << " L " << fmt(x + s) << ' ' << fmt(y - s)
            << "\"/>\n";
    }
    out << "  </g>\n</svg>\n";
    return out.str();
}

} // namespace fibre
