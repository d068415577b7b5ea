#include "fibre/singularities.hpp"

#include "fibre/error.hpp"
#include "fibre/parallel.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <optional>

namespace fibre {

std::string_view to_string(PointClass cls) {
    switch (cls) {
    case PointClass::regular: return "regular";
    case PointClass::fold_definite: return "fold_definite";
    case PointClass::fold_indefinite: return "fold_indefinite";
    case PointClass::fold_degenerate: return "fold_degenerate";
    case PointClass::degenerate_rank0: return "degenerate_rank0";
    }
    return "unknown";
}

namespace {

// For f = e^{i c theta} z^p the Jacobian is [i c f | f' | i f'], so
// J J^T = (c f)(c f)^T + |f'|^2 I and the singular values are
// sqrt(|f'|^2 + c^2 |f|^2) and |f'|.
std::optional<std::pair<double, double>> power_map_singular_values(const MapId& map, const Eigen::VectorXd& x) {
    std::int64_t p = 0;
    double c = 0.0;
    int disk = 0;
    if (const auto* m = std::get_if<MultipleFiberMap>(&map)) {
        p = m->p, c = static_cast<double>(m->k), disk = 2;
    } else if (const auto* s = std::get_if<SeifertMap>(&map)) {
        p = s->p, c = -static_cast<double>(s->q), disk = 1;
    } else {
        return std::nullopt;
    }
    const double r = std::hypot(x[disk], x[disk + 1]);
    const double value = std::pow(r, static_cast<double>(p));
    const double deriv = static_cast<double>(p) * (p == 1 ? 1.0 : std::pow(r, static_cast<double>(p - 1)));
    return std::pair{std::hypot(deriv, c * value), deriv};
}

} // namespace

PointClassification classify_point(const MapId& map, const Eigen::VectorXd& x, double tau) {
    if (codomain_dimension(map) != 2)
        throw FibreError(ErrorCode::InvalidArgument, "singularity classification needs a map to a surface");
    if (const auto sv = power_map_singular_values(map, x)) {
        // Rank-1 points cannot occur here: f' = 0 forces z = 0 and f = 0.
        if (sv->second > tau) return {sv->first, sv->second, 2, PointClass::regular};
        if (sv->first <= tau) return {sv->first, sv->second, 0, PointClass::degenerate_rank0};
    }
    const Eigen::MatrixXd j = jacobian_exact(map, x);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(j, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd sv = svd.singularValues();
    PointClassification out;
    out.sigma1 = sv[0];
    out.sigma2 = sv.size() > 1 ? sv[1] : 0.0;
    if (out.sigma2 > tau) return out;
    if (out.sigma1 <= tau) {
        out.rank = 0;
        out.cls = PointClass::degenerate_rank0;
        return out;
    }
    out.rank = 1;
    const Eigen::Vector2d normal = svd.matrixU().col(1);
    const std::vector<Eigen::MatrixXd> hess = hessian_exact(map, x);
    const Eigen::MatrixXd h = normal[0] * hess[0] + normal[1] * hess[1];
    const Eigen::MatrixXd kernel = svd.matrixV().rightCols(x.size() - 1);
    const Eigen::MatrixXd restricted = kernel.transpose() * h * kernel;
    const Eigen::VectorXd eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(restricted).eigenvalues();
    int positive = 0, negative = 0;
    for (Eigen::Index i = 0; i < eig.size(); ++i) {
        if (eig[i] > tau)
            ++positive;
        else if (eig[i] < -tau)
            ++negative;
        else {
            out.cls = PointClass::fold_degenerate;
            return out;
        }
    }
    out.cls = positive > 0 && negative > 0 ? PointClass::fold_indefinite : PointClass::fold_definite;
    return out;
}

SingularityReport scan_singularities(const MapId& map, const GridSpec& grid, const ScanOptions& options) {
    check_compatible(map, grid);
    const double tau = options.tolerance > 0.0 ? options.tolerance : default_rank_tolerance(grid);
    const auto axes = grid.axes();
    const Lattice verts = grid.vertices();
    const Lattice cells = grid.cells();
    const int dim = grid.dimension();

    std::vector<PointClass> vertex_class(verts.size(), PointClass::regular);
    const unsigned workers = worker_count(options.threads);
    const std::int64_t chunks = std::min<std::int64_t>(workers, verts.size());
    std::vector<std::vector<SingularSample>> found(chunks);
    parallel_chunks(chunks, workers, [&](std::int64_t cb, std::int64_t ce) {
        for (std::int64_t c = cb; c < ce; ++c) {
            const std::int64_t begin = verts.size() * c / chunks;
            const std::int64_t end = verts.size() * (c + 1) / chunks;
            Eigen::VectorXd x(dim);
            for (std::int64_t v = begin; v < end; ++v) {
                const std::vector<int> idx = verts.unravel(v);
                for (int a = 0; a < dim; ++a) x[a] = axes[a].vertex(idx[a]);
                const PointClassification pc = classify_point(map, x, tau);
                vertex_class[v] = pc.cls;
                if (pc.cls != PointClass::regular)
                    found[c].push_back({idx, std::vector<double>(x.data(), x.data() + dim), pc.sigma1, pc.sigma2,
                                        pc.rank, pc.cls});
            }
        }
    });

    SingularityReport report;
    report.tolerance = tau;
    std::vector<char> used(verts.size(), 0);
    std::vector<int> corner(dim);
    for (std::int64_t c = 0; c < cells.size(); ++c) {
        const std::vector<int> idx = cells.unravel(c);
        if (!grid.cell_in_domain(idx)) continue;
        ++report.domain_cells;
        PointClass worst = PointClass::regular;
        for (int mask = 0; mask < (1 << dim); ++mask) {
            for (int a = 0; a < dim; ++a) {
                corner[a] = idx[a] + ((mask >> a) & 1);
                if (axes[a].periodic) corner[a] %= axes[a].cells;
            }
            const std::int64_t v = verts.linear(corner);
            used[v] = 1;
            worst = std::max(worst, vertex_class[v]);
        }
        ++report.cell_counts[static_cast<int>(worst)];
        if (worst != PointClass::regular) report.cells.push_back({idx, worst});
    }
    for (auto& chunk : found)
        for (auto& s : chunk)
            if (used[verts.linear(s.vertex)]) report.samples.push_back(std::move(s));
    return report;
}

} // namespace fibre
