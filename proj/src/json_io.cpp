#include "fibre/json_io.hpp"

#include "fibre/error.hpp"

#include <cmath>
#include <cstdio>

namespace fibre {

namespace {

std::string format_real(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s = buf;
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
}

bool is_scalar(const json& v) { return !v.is_object() && !v.is_array(); }

void dump(const json& v, int indent, std::string& out) {
    const std::string pad(indent, ' ');
    const std::string inner(indent + 2, ' ');
    switch (v.type()) {
    case json::value_t::object: {
        if (v.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (const auto& [key, item] : v.items()) {
            if (!first) out += ",\n";
            first = false;
            out += inner + json(key).dump() + ": ";
            dump(item, indent + 2, out);
        }
        out += "\n" + pad + "}";
        return;
    }
    case json::value_t::array: {
        if (v.empty()) {
            out += "[]";
            return;
        }
        const bool flat = std::all_of(v.begin(), v.end(), is_scalar);
        if (flat) {
            out += "[";
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) out += ", ";
                dump(v[i], indent, out);
            }
            out += "]";
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += ",\n";
            out += inner;
            dump(v[i], indent + 2, out);
        }
        out += "\n" + pad + "]";
        return;
    }
    case json::value_t::number_float: out += format_real(v.get<double>()); return;
    default: out += v.dump(); return;
    }
}

json point_json(Point2 p) { return json::array({p.x, p.y}); }

Point2 point_from(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

} // namespace

std::string canonical_dump(const json& value) {
    std::string out;
    dump(value, 0, out);
    out += "\n";
    return out;
}

void to_json(json& j, const SurgeryData& d) {
    j = {{"p", d.p}, {"q", d.q}, {"alpha", {d.alpha[0], d.alpha[1]}}, {"k", d.k}};
}

void to_json(json& j, const GluingMatrix& m) {
    j = json::array();
    for (const auto& row : m.entries) j.push_back({row[0], row[1], row[2]});
}

void to_json(json& j, const HomologyClass& h) { j = {h.coeffs[0], h.coeffs[1], h.coeffs[2]}; }

void to_json(json& j, const MapId& map) {
    j = {{"kind", map_name(map)}};
    if (const auto* m = std::get_if<MultipleFiberMap>(&map)) {
        j["p"] = m->p;
        j["k"] = m->k;
    } else if (const auto* s = std::get_if<SeifertMap>(&map)) {
        j["p"] = s->p;
        j["q"] = s->q;
    } else if (const auto* psi = std::get_if<PsiBoundaryMap>(&map)) {
        j["surgery"] = psi->data;
    } else if (const auto* f = std::get_if<FoldChartMap>(&map)) {
        j["signs"] = f->signs;
    }
}

void to_json(json& j, const GridSpec& grid) {
    j = {{"domain", std::string(to_string(grid.domain))}, {"resolution", grid.resolution}};
    if (grid.domain == DomainKind::box) j["half_width"] = grid.half_width;
    if (grid.delta > 0.0)
        j["delta"] = grid.delta;
    else
        j["delta"] = "adaptive";
}

void to_json(json& j, const SingularityReport& report) {
    json counts = json::object();
    for (int c = 0; c < point_class_count; ++c)
        counts[std::string(to_string(static_cast<PointClass>(c)))] = report.cell_counts[c];
    json samples = json::array();
    for (const auto& s : report.samples)
        samples.push_back({{"vertex", s.vertex},
                           {"point", s.point},
                           {"sigma", {s.sigma1, s.sigma2}},
                           {"rank", s.rank},
                           {"class", std::string(to_string(s.cls))}});
    json cells = json::array();
    for (const auto& c : report.cells) cells.push_back({{"cell", c.cell}, {"class", std::string(to_string(c.cls))}});
    j = {{"tolerance", report.tolerance},
         {"domain_cells", report.domain_cells},
         {"cell_counts", counts},
         {"samples", samples},
         {"flagged_cells", cells}};
}

void to_json(json& j, const FiberStats& stats) {
    j = {{"component_count", stats.component_count},
         {"slice_multiplicity", stats.slice_multiplicity},
         {"cell_count", stats.cell_count}};
    j["core_winding"] = stats.core_winding ? json(*stats.core_winding) : json(nullptr);
}

void to_json(json& j, const ValidationReport& report) {
    j = {{"passed", report.passed}, {"checks", report.checks}};
    j["failure"] = report.failure ? json(*report.failure) : json(nullptr);
}

void to_json(json& j, const MovieChart& chart) {
    j = {{"pair", chart.pair},
         {"role", std::string(to_string(chart.role))},
         {"phi", chart.phi},
         {"interval", {chart.interval.lo, chart.interval.hi}},
         {"singular_theta", chart.singular_theta},
         {"singular_phi", chart.singular_phi},
         {"frame_hits", chart.frame_hits}};
}

void to_json(json& j, const FiberComponent& c) {
    j = {{"multiplicity", c.multiplicity}};
    if (c.genus) j["genus"] = *c.genus;
}

void from_json(const json& j, FiberComponent& c) {
    c.multiplicity = j.at("multiplicity").get<int>();
    c.genus = j.contains("genus") ? std::optional<int>(j.at("genus").get<int>()) : std::nullopt;
}

void to_json(json& j, const RegionFiber& f) { j = {{"components", f.components}}; }

void from_json(const json& j, RegionFiber& f) { f.components = j.at("components").get<std::vector<FiberComponent>>(); }

void to_json(json& j, const PieceComplex& c) {
    json pieces = json::array();
    for (const auto& p : c.pieces)
        pieces.push_back({{"kind", std::string(to_string(p.kind))}, {"dimension", p.dimension}, {"label", p.label}});
    json gluings = json::array();
    for (const auto& g : c.gluings)
        gluings.push_back({{"a", {g.piece_a, g.boundary_a}},
                           {"b", {g.piece_b, g.boundary_b}},
                           {"multiplicity", g.slope.multiplicity},
                           {"curve", g.slope.curve},
                           {"verified", g.slope.verified}});
    json circles = json::array();
    for (const auto& fc : c.base_diagram)
        circles.push_back({{"kind", std::string(to_string(fc.kind))}, {"piece", fc.piece}, {"radius", fc.radius}});
    j = {{"dimension", c.dimension},
         {"multiplicity", c.multiplicity},
         {"pieces", pieces},
         {"gluings", gluings},
         {"fold_circles", circles},
         {"region_fibers", c.region_fibers}};
}

void from_json(const json& j, PieceComplex& c) {
    c.dimension = j.at("dimension").get<int>();
    c.multiplicity = j.at("multiplicity").get<int>();
    c.pieces.clear();
    for (const auto& p : j.at("pieces"))
        c.pieces.push_back({parse_piece_kind(p.at("kind").get<std::string>()), p.at("dimension").get<int>(),
                            p.at("label").get<std::string>()});
    c.gluings.clear();
    for (const auto& g : j.at("gluings"))
        c.gluings.push_back({g.at("a").at(0).get<int>(), g.at("a").at(1).get<int>(), g.at("b").at(0).get<int>(),
                             g.at("b").at(1).get<int>(),
                             {g.at("multiplicity").get<int>(), g.at("curve").get<std::array<int, 2>>(),
                              g.at("verified").get<bool>()}});
    c.base_diagram.clear();
    for (const auto& fc : j.at("fold_circles"))
        c.base_diagram.push_back({parse_piece_kind(fc.at("kind").get<std::string>()), fc.at("piece").get<int>(),
                                  fc.at("radius").get<double>()});
    c.region_fibers = j.at("region_fibers").get<std::vector<RegionFiber>>();
}

void to_json(json& j, const BLFDiagram& d) {
    json points = json::array();
    for (const auto& p : d.lefschetz_points) points.push_back(point_json(p));
    json groups = json::array();
    for (const auto& g : d.fold_groups) {
        json circles = json::array();
        for (const auto& c : g.circles)
            circles.push_back({{"kind", std::string(to_string(c.kind))},
                               {"radius", c.radius},
                               {"outer", c.outer},
                               {"inner", c.inner}});
        groups.push_back({{"label", g.label},
                          {"multiplicity", g.multiplicity},
                          {"center", point_json(g.center)},
                          {"fold_circles", circles}});
    }
    json regions = json::array();
    for (const auto& r : d.regions)
        regions.push_back(
            {{"id", r.id}, {"parent", r.parent}, {"group", r.group}, {"depth", r.depth}, {"fiber", r.fiber}});
    j = {{"n", d.n},
         {"p", d.p},
         {"q", d.q},
         {"lefschetz_points", points},
         {"fold_groups", groups},
         {"regions", regions}};
}

void from_json(const json& j, BLFDiagram& d) {
    d.n = j.at("n").get<int>();
    d.p = j.at("p").get<int>();
    d.q = j.at("q").get<int>();
    d.lefschetz_points.clear();
    for (const auto& p : j.at("lefschetz_points")) d.lefschetz_points.push_back(point_from(p));
    const auto& groups = j.at("fold_groups");
    if (groups.size() != 2) throw FibreError(ErrorCode::InvalidArgument, "a diagram has exactly two fold groups");
    for (int g = 0; g < 2; ++g) {
        const auto& src = groups.at(g);
        FoldGroup& dst = d.fold_groups[g];
        dst.label = src.at("label").get<std::string>();
        dst.multiplicity = src.at("multiplicity").get<int>();
        dst.center = point_from(src.at("center"));
        dst.circles.clear();
        for (const auto& c : src.at("fold_circles"))
            dst.circles.push_back({parse_piece_kind(c.at("kind").get<std::string>()), c.at("radius").get<double>(),
                                   c.at("outer").get<RegionFiber>(), c.at("inner").get<RegionFiber>()});
    }
    d.regions.clear();
    for (const auto& r : j.at("regions"))
        d.regions.push_back({r.at("id").get<int>(), r.at("parent").get<int>(), r.at("group").get<int>(),
                             r.at("depth").get<int>(), r.at("fiber").get<RegionFiber>()});
}

std::string emit_json(const BLFDiagram& diagram) { return canonical_dump(json(diagram)); }

BLFDiagram parse_blf_json(std::string_view text) {
    try {
        return json::parse(text).get<BLFDiagram>();
    } catch (const json::exception& e) {
        throw FibreError(ErrorCode::InvalidArgument, std::string("malformed diagram JSON: ") + e.what());
    }
}

} // namespace fibre
