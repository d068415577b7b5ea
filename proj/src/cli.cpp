#include "fibre/cli.hpp"

#include "fibre/blf.hpp"
#include "fibre/error.hpp"
#include "fibre/fiber_tracer.hpp"
#include "fibre/handle_complex.hpp"
#include "fibre/json_io.hpp"
#include "fibre/parallel.hpp"
#include "fibre/singularities.hpp"
#include "fibre/surgery.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace fibre::cli {

namespace {

constexpr const char* default_config_path = "fibretool.conf";
constexpr const char* schema_id = "fibretool/envelope/v1";

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

double parse_real(const std::string& s) {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters in '" + s + "'");
    return v;
}

long parse_integer(const std::string& s) {
    std::size_t used = 0;
    const long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters in '" + s + "'");
    return v;
}

std::vector<int> parse_ints(const std::string& s) {
    std::vector<int> out;
    for (const auto& item : split(s, ',')) out.push_back(static_cast<int>(parse_integer(item)));
    return out;
}

std::vector<double> parse_reals(const std::string& s) {
    std::vector<double> out;
    for (const auto& item : split(s, ',')) out.push_back(parse_real(item));
    return out;
}

std::vector<int> parse_signs(const std::string& s) {
    std::vector<int> out;
    for (char c : s) {
        if (c == '+') out.push_back(1);
        else if (c == '-') out.push_back(-1);
        else if (c != ',' && c != ' ')
            throw FibreError(ErrorCode::InvalidArgument, "signs are written as a string of '+' and '-'");
    }
    return out;
}

std::string usage_error(const std::exception& e) { return e.what(); }

// Options shared by scan and fiber.
struct MapOptions {
    std::string kind;
    long p = 1;
    std::optional<long> k;
    long q = 1;
    std::string signs = "+-";

    MapId make() const {
        if (kind == "multiple-fiber") return multiple_fiber(p, k ? *k : solve_k(p, q));
        if (kind == "seifert") return seifert(p, q);
        if (kind == "fold-chart") return fold_chart(parse_signs(signs));
        throw FibreError(ErrorCode::InvalidArgument, "unknown map '" + kind + "'");
    }
};

void add_map_options(CLI::App* cmd, MapOptions& m) {
    cmd->add_option("--map", m.kind, "multiple-fiber | seifert | fold-chart")->required();
    cmd->add_option("--p", m.p, "multiplicity");
    cmd->add_option("--k", m.k, "residue for multiple-fiber (default: solved from --q)");
    cmd->add_option("--q", m.q, "auxiliary multiplicity");
    cmd->add_option("--signs", m.signs, "fold chart signs, e.g. +- or ++-");
}

GridSpec grid_for(const MapId& map, const std::string& grid_flag, const Config& cfg, double half_width) {
    GridSpec g;
    g.domain = domain_for(map);
    if (!grid_flag.empty())
        g.resolution = parse_ints(grid_flag);
    else if (g.domain == DomainKind::solid_torus)
        g.resolution = cfg.resolution_3d;
    else if (g.domain == DomainKind::T2xD2)
        g.resolution = cfg.resolution_4d;
    else
        g.resolution = std::vector<int>(domain_dimension(map), cfg.resolution_box.empty() ? 32 : cfg.resolution_box[0]);
    if (g.domain == DomainKind::box && !grid_flag.empty() && g.resolution.size() == 1)
        g.resolution.assign(domain_dimension(map), g.resolution[0]);
    g.half_width = half_width;
    g.delta = cfg.delta;
    return g;
}

json envelope(const std::string& name, json args, json result, const ValidationReport& validation) {
    return {{"tool", "fibretool"},
            {"version", FIBRETOOL_VERSION},
            {"schema", schema_id},
            {"command", {{"name", name}, {"args", std::move(args)}}},
            {"result", std::move(result)},
            {"validation", validation}};
}

} // namespace

Config load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FibreError(ErrorCode::ConfigParse, path.string() + ": cannot open");
    Config cfg;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string where = path.string() + ":" + std::to_string(number);
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw FibreError(ErrorCode::ConfigParse, where + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "delta")
                cfg.delta = parse_real(value);
            else if (key == "tolerance")
                cfg.tolerance = parse_real(value);
            else if (key == "threads")
                cfg.threads = static_cast<unsigned>(parse_integer(value));
            else if (key == "resolution_3d")
                cfg.resolution_3d = parse_ints(value);
            else if (key == "resolution_4d")
                cfg.resolution_4d = parse_ints(value);
            else if (key == "resolution_box")
                cfg.resolution_box = parse_ints(value);
            else
                throw FibreError(ErrorCode::ConfigParse, where + ": unknown key '" + key + "'");
        } catch (const FibreError&) {
            throw;
        } catch (const std::exception&) {
            throw FibreError(ErrorCode::ConfigParse, where + ": bad value '" + value + "' for " + key);
        }
        if (cfg.delta < 0.0 || cfg.tolerance < 0.0)
            throw FibreError(ErrorCode::ConfigParse, where + ": " + key + " must be >= 0");
    }
    return cfg;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw FibreError(ErrorCode::InvalidArgument, "cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw FibreError(ErrorCode::InvalidArgument, "write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw FibreError(ErrorCode::InvalidArgument, "cannot rename onto " + path.string() + ": " + ec.message());
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Constructs and checks singular fibrations around torus-surgery multiple fibers", "fibretool"};
    app.require_subcommand(1);

    std::string config_path;
    unsigned threads = 0;
    bool timing = false;
    app.add_option("--config", config_path, "key = value defaults file (default: ./fibretool.conf if present)");
    app.add_option("--threads", threads, "worker threads (default: FIBRETOOL_THREADS or hardware)");
    app.add_flag("--timing", timing, "add wall_time_s to the envelope");

    // surgery
    auto* surgery = app.add_subcommand("surgery", "gluing matrix, solved k and surgery class");
    long sp = 0, sq = 0;
    std::string alpha_flag = "0,1";
    surgery->add_option("--p", sp, "multiplicity")->required();
    surgery->add_option("--q", sq, "auxiliary multiplicity")->required();
    surgery->add_option("--alpha", alpha_flag, "direction as a,b");

    // scan
    auto* scan = app.add_subcommand("scan", "classify the singular set of a model map on a grid");
    MapOptions scan_map;
    std::string scan_grid;
    double scan_tol = 0.0, scan_half = 1.0;
    add_map_options(scan, scan_map);
    scan->add_option("--grid", scan_grid, "resolutions, comma separated (default from config)");
    scan->add_option("--tolerance", scan_tol, "rank tolerance");
    scan->add_option("--half-width", scan_half, "fold chart box half-width");

    // fiber
    auto* fiber = app.add_subcommand("fiber", "trace one preimage and count components and multiplicities");
    MapOptions fiber_map;
    std::string fiber_grid, target_flag, slice_flag, csv_path;
    double fiber_delta = -1.0, fiber_half = 1.0;
    bool allow_singular = false;
    add_map_options(fiber, fiber_map);
    fiber->add_option("--target", target_flag, "target value re[,im]")->required();
    fiber->add_option("--grid", fiber_grid, "resolutions, comma separated (default from config)");
    fiber->add_option("--delta", fiber_delta, "preimage thickness (0 = adaptive)");
    fiber->add_option("--slice", slice_flag, "slice angles, one per circle coordinate (default 0)");
    fiber->add_option("--half-width", fiber_half, "fold chart box half-width");
    fiber->add_option("--csv", csv_path, "write component cell centers as CSV");
    fiber->add_flag("--allow-singular", allow_singular, "trace even if the preimage meets the singular set");

    // construct
    auto* construct = app.add_subcommand("construct", "build and validate a round-handle piece complex");
    std::string kind;
    int cp = 2;
    double phi = 0.0;
    construct->add_option("--kind", kind, "exceptional | multiple-fiber")->required();
    construct->add_option("--p", cp, "multiplicity")->required();
    construct->add_option("--phi", phi, "movie frame angle for multiple-fiber charts");

    // blf
    auto* blf = app.add_subcommand("blf", "critical image of a broken Lefschetz fibration on E(n)_{p,q}");
    int bn = 1, bp = 1, bq = 1;
    std::optional<int> lefschetz;
    std::string svg_path, json_path;
    blf->add_option("--n", bn, "elliptic surface index")->required();
    blf->add_option("--p", bp, "first multiplicity")->required();
    blf->add_option("--q", bq, "second multiplicity")->required();
    blf->add_option("--lefschetz", lefschetz, "Lefschetz point count (default 12n)");
    blf->add_option("--svg", svg_path, "write the SVG drawing here");
    blf->add_option("--json", json_path, "write the canonical diagram JSON here");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "fibretool: " << e.what() << "\n";
        return 1;
    }

    const auto started = std::chrono::steady_clock::now();
    try {
        Config cfg;
        if (!config_path.empty())
            cfg = load_config(config_path);
        else if (std::filesystem::exists(default_config_path))
            cfg = load_config(default_config_path);
        const unsigned workers = worker_count(threads > 0 ? threads : cfg.threads);

        json doc;
        ValidationReport validation;
        if (*surgery) {
            const Vec2i alpha = [&] {
                const auto v = parse_ints(alpha_flag);
                if (v.size() != 2) throw FibreError(ErrorCode::InvalidArgument, "--alpha takes a,b");
                return Vec2i{v[0], v[1]};
            }();
            const SurgeryData data = SurgeryData::make(sp, sq, alpha);
            const GluingMatrix m = gluing_matrix(data);
            const HomologyClass gamma = surgery_class(data);
            const HomologyClass normalized = normalized_surgery_class(data);
            const Mat2i normalizer = direction_normalizer(alpha);
            const Mat3i winding = induced_homology(data);
            validation.check(data.p == 0 ? std::llabs(m.determinant()) == 1 : m.determinant() == 1, "unimodular",
                             "det = " + std::to_string(m.determinant()));
            validation.check(gamma.is_primitive(), "gamma_primitive");
            validation.check(m.apply({0, 0, 1}) == normalized.coeffs, "meridian_image_is_gamma");
            validation.check(winding == m.entries, "psi_winding_matches_matrix");
            json result = {{"surgery", data},
                           {"matrix", m},
                           {"determinant", m.determinant()},
                           {"gamma", gamma},
                           {"gamma_normalized", normalized},
                           {"normalizer", {{normalizer[0][0], normalizer[0][1]}, {normalizer[1][0], normalizer[1][1]}}},
                           {"integral", is_integral(data)},
                           {"psi_winding", json::array()}};
            for (const auto& row : winding) result["psi_winding"].push_back({row[0], row[1], row[2]});
            doc = envelope("surgery", {{"p", sp}, {"q", sq}, {"alpha", {alpha[0], alpha[1]}}}, result, validation);
        } else if (*scan) {
            const MapId map = scan_map.make();
            const GridSpec grid = grid_for(map, scan_grid, cfg, scan_half);
            ScanOptions opts;
            opts.tolerance = scan_tol > 0.0 ? scan_tol : cfg.tolerance;
            opts.threads = workers;
            const SingularityReport report = scan_singularities(map, grid, opts);
            bool consistent = true;
            for (const auto& s : report.samples)
                consistent = consistent && s.sigma2 <= report.tolerance &&
                             (s.cls == PointClass::degenerate_rank0) == (s.sigma1 <= report.tolerance);
            validation.check(consistent, "samples_match_tolerance");
            doc = envelope("scan", {{"map", map}, {"grid", grid}, {"tolerance", report.tolerance}},
                           {{"map", map}, {"grid", grid}, {"report", report}}, validation);
        } else if (*fiber) {
            const MapId map = fiber_map.make();
            GridSpec grid = grid_for(map, fiber_grid, cfg, fiber_half);
            if (fiber_delta >= 0.0) grid.delta = fiber_delta;
            const auto tv = parse_reals(target_flag);
            if (tv.empty() || tv.size() > 2) throw FibreError(ErrorCode::InvalidArgument, "--target takes re[,im]");
            const Complex w{tv[0], tv.size() > 1 ? tv[1] : 0.0};
            std::vector<double> slice = slice_flag.empty() ? std::vector<double>() : parse_reals(slice_flag);
            const auto periodic = periodic_coordinates(map);
            if (slice_flag.empty()) slice.assign(std::count(periodic.begin(), periodic.end(), true), 0.0);
            TraceOptions opts;
            opts.rank_tolerance = cfg.tolerance;
            opts.allow_singular = allow_singular;
            opts.threads = workers;
            const FiberApproximation approx = trace_fiber(map, w, grid, opts);
            const FiberStats stats = fiber_stats(approx, slice);
            if (!csv_path.empty()) {
                std::ostringstream csv;
                write_component_csv(approx, csv);
                write_atomic(csv_path, csv.str());
            }
            std::int64_t model_p = 0;
            if (const auto* m = std::get_if<MultipleFiberMap>(&map)) model_p = m->p;
            if (const auto* s = std::get_if<SeifertMap>(&map)) model_p = s->p;
            if (model_p > 0) {
                int sum = 0;
                for (int v : stats.slice_multiplicity) sum += v;
                validation.check(sum == model_p, "slice_multiplicity_is_p",
                                 "slice meets " + std::to_string(sum) + " clusters, expected " +
                                     std::to_string(model_p));
            }
            json args = {{"map", map}, {"grid", grid}, {"target", {w.real(), w.imag()}}, {"slice", slice}};
            args["delta"] = grid.delta > 0.0 ? json(grid.delta) : json("adaptive");
            doc = envelope("fiber", args,
                           {{"map", map}, {"grid", grid}, {"target", {w.real(), w.imag()}}, {"stats", stats}},
                           validation);
        } else if (*construct) {
            PieceComplex c;
            if (kind == "exceptional")
                c = build_exceptional_p1(cp);
            else if (kind == "multiple-fiber")
                c = build_multiple_fiber(cp);
            else
                throw FibreError(ErrorCode::InvalidArgument, "--kind must be exceptional or multiple-fiber");
            validation = validate_complex(c);
            json result = {{"complex", c},
                           {"fold_circle_count", c.fold_circle_count()},
                           {"innermost", c.innermost()},
                           {"filling_count", c.filling_count()}};
            if (kind == "multiple-fiber" && cp >= 2) {
                const auto charts = movie_slices(cp, phi);
                validation.check(charts_partition_circle(charts), "movie_charts_partition_circle");
                result["movie"] = charts;
            }
            doc = envelope("construct", {{"kind", kind}, {"p", cp}, {"phi", phi}}, result, validation);
        } else if (*blf) {
            EllipticSurfaceSpec spec{bn, bp, bq, lefschetz};
            const BLFDiagram d = build_blf(spec);
            validation = validate_blf(d);
            std::size_t circles = 0;
            for (const auto& g : d.fold_groups) circles += g.circles.size();
            json args = {{"n", bn}, {"p", bp}, {"q", bq}, {"lefschetz", spec.lefschetz()}};
            if (!svg_path.empty()) args["svg"] = svg_path;
            if (!json_path.empty()) args["json"] = json_path;
            doc = envelope("blf", args,
                           {{"diagram", d},
                            {"lefschetz_count", d.lefschetz_points.size()},
                            {"fold_circle_count", circles},
                            {"group_sizes", {d.fold_groups[0].circles.size(), d.fold_groups[1].circles.size()}}},
                           validation);
            if (!svg_path.empty()) write_atomic(svg_path, emit_svg(d));
            if (!json_path.empty()) write_atomic(json_path, emit_json(d));
        }

        if (timing)
            doc["wall_time_s"] =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        out << canonical_dump(doc);
        return validation.passed ? 0 : 2;
    } catch (const FibreError& e) {
        err << "fibretool: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "fibretool: " << usage_error(e) << "\n";
        return 1;
    }
}

} // namespace fibre::cli
