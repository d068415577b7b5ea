#include "fibre/model_maps.hpp"

#include "fibre/error.hpp"

#include <cmath>
#include <numbers>

namespace fibre {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr Complex I{0.0, 1.0};

Complex ipow(Complex z, std::int64_t n) {
    Complex out{1.0, 0.0};
    for (std::int64_t i = 0; i < n; ++i) out *= z;
    return out;
}

Complex unit(double angle) { return std::polar(1.0, angle); }

void require_coprime(std::int64_t p, std::int64_t q) {
    if (p < 1) throw FibreError(ErrorCode::InvalidArgument, "p must be >= 1");
    if (gcd(p, q) != 1)
        throw FibreError(ErrorCode::NotCoprime,
                         "gcd(" + std::to_string(p) + ", " + std::to_string(q) + ") != 1");
}

// f = e^{i c theta} z^p with theta at coordinate `angle` and z = x + iy at
// coordinates (disk, disk + 1). Covers both the multiple-fiber map (c = k)
// and the Seifert model (c = -q).
struct AngleTimesPower {
    std::int64_t p;
    double c;
    int angle;
    int disk;
    int dim;

    Complex value(const Eigen::VectorXd& x) const {
        return unit(c * x[angle]) * ipow({x[disk], x[disk + 1]}, p);
    }

    Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const {
        const Complex e = unit(c * x[angle]);
        const Complex z{x[disk], x[disk + 1]};
        const Complex f = e * ipow(z, p);
        const Complex dz = static_cast<double>(p) * e * ipow(z, p - 1);
        Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2, dim);
        auto put = [&](int col, Complex v) {
            j(0, col) = v.real();
            j(1, col) = v.imag();
        };
        put(angle, I * c * f);
        put(disk, dz);
        put(disk + 1, I * dz);
        return j;
    }

    std::vector<Eigen::MatrixXd> hessian(const Eigen::VectorXd& x) const {
        const Complex e = unit(c * x[angle]);
        const Complex z{x[disk], x[disk + 1]};
        const Complex f = e * ipow(z, p);
        const Complex dz = static_cast<double>(p) * e * ipow(z, p - 1);
        const Complex dzz = p >= 2 ? static_cast<double>(p * (p - 1)) * e * ipow(z, p - 2) : Complex{};
        std::vector<Eigen::MatrixXd> h(2, Eigen::MatrixXd::Zero(dim, dim));
        auto put = [&](int a, int b, Complex v) {
            h[0](a, b) = h[0](b, a) = v.real();
            h[1](a, b) = h[1](b, a) = v.imag();
        };
        put(angle, angle, -c * c * f);
        put(angle, disk, I * c * dz);
        put(angle, disk + 1, I * c * I * dz);
        put(disk, disk, dzz);
        put(disk, disk + 1, I * dzz);
        put(disk + 1, disk + 1, -dzz);
        return h;
    }
};

AngleTimesPower as_power_map(const MultipleFiberMap& m) {
    return {m.p, static_cast<double>(m.k), 1, 2, 4};
}

AngleTimesPower as_power_map(const SeifertMap& m) {
    return {m.p, -static_cast<double>(m.q), 0, 1, 3};
}

Eigen::Matrix3d gluing_as_real(const SurgeryData& data) {
    const GluingMatrix g = gluing_matrix(data);
    Eigen::Matrix3d m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = static_cast<double>(g.entries[i][j]);
    return m;
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

} // namespace

MapId multiple_fiber(std::int64_t p, std::int64_t k) {
    if (p < 1) throw FibreError(ErrorCode::InvalidArgument, "p must be >= 1");
    return MultipleFiberMap{p, k};
}

MapId seifert(std::int64_t p, std::int64_t q) {
    require_coprime(p, q);
    return SeifertMap{p, q};
}

MapId psi_boundary(const SurgeryData& data) { return PsiBoundaryMap{data}; }

MapId fold_chart(std::vector<int> signs) {
    if (signs.empty()) throw FibreError(ErrorCode::InvalidArgument, "fold chart needs at least one sign");
    for (int s : signs)
        if (s != 1 && s != -1) throw FibreError(ErrorCode::InvalidArgument, "fold chart signs must be +-1");
    return FoldChartMap{std::move(signs)};
}

std::string map_name(const MapId& map) {
    return std::visit(overloaded{
                          [](const MultipleFiberMap&) { return std::string("multiple-fiber"); },
                          [](const SeifertMap&) { return std::string("seifert"); },
                          [](const PsiBoundaryMap&) { return std::string("psi"); },
                          [](const FoldChartMap&) { return std::string("fold-chart"); },
                      },
                      map);
}

double reduce_angle(double a) {
    double r = std::fmod(a, two_pi);
    if (r < 0) r += two_pi;
    if (r >= two_pi) r -= two_pi;
    return r;
}

double wrapped_difference(double a, double b) {
    double d = std::remainder(b - a, two_pi);
    if (d <= -std::numbers::pi) d += two_pi;
    return d;
}

Complex eval_multiple_fiber(std::int64_t p, std::int64_t k, const TorusSolidPoint& pt) {
    return unit(static_cast<double>(k) * pt.xi2) * ipow(pt.z, p);
}

Complex eval_seifert(std::int64_t p, std::int64_t q, const SolidTorusPoint& pt) {
    require_coprime(p, q);
    return unit(-static_cast<double>(q) * pt.u) * ipow(pt.z, p);
}

TorusSolidPoint eval_psi(const SurgeryData& data, const TorusSolidPoint& pt) {
    if (std::abs(std::abs(pt.z) - 1.0) > 1e-9)
        throw FibreError(ErrorCode::NotOnBoundary, "psi is defined on |z| = 1");
    const GluingMatrix g = gluing_matrix(data);
    const Complex xi2 = unit(pt.xi2);
    const Complex z = pt.z / std::abs(pt.z);
    // Integer exponents may be negative; powers of unit complex numbers via angles.
    auto power = [](Complex c, std::int64_t n) { return unit(static_cast<double>(n) * std::arg(c)); };
    const Complex second = power(xi2, g.entries[1][1]) * power(z, g.entries[1][2]);
    const Complex third = power(xi2, g.entries[2][1]) * power(z, g.entries[2][2]);
    return {reduce_angle(pt.xi1), reduce_angle(std::arg(second)), third};
}

std::pair<double, double> eval_fold_chart(const std::vector<int>& signs, const FoldChartPoint& pt) {
    if (signs.size() != pt.x.size())
        throw FibreError(ErrorCode::DimensionMismatch,
                         std::to_string(signs.size()) + " signs for " + std::to_string(pt.x.size()) +
                             " coordinates");
    double sum = 0.0;
    for (std::size_t i = 0; i < signs.size(); ++i) sum += signs[i] * pt.x[i] * pt.x[i];
    return {pt.t, sum};
}

int domain_dimension(const MapId& map) {
    return std::visit(overloaded{
                          [](const MultipleFiberMap&) { return 4; },
                          [](const SeifertMap&) { return 3; },
                          [](const PsiBoundaryMap&) { return 3; },
                          [](const FoldChartMap& m) { return 1 + static_cast<int>(m.signs.size()); },
                      },
                      map);
}

int codomain_dimension(const MapId& map) {
    return std::holds_alternative<PsiBoundaryMap>(map) ? 3 : 2;
}

std::vector<bool> periodic_coordinates(const MapId& map) {
    return std::visit(overloaded{
                          [](const MultipleFiberMap&) { return std::vector<bool>{true, true, false, false}; },
                          [](const SeifertMap&) { return std::vector<bool>{true, false, false}; },
                          [](const PsiBoundaryMap&) { return std::vector<bool>{true, true, true}; },
                          [](const FoldChartMap& m) { return std::vector<bool>(m.signs.size() + 1, false); },
                      },
                      map);
}

int disk_offset(const MapId& map) {
    if (std::holds_alternative<MultipleFiberMap>(map)) return 2;
    if (std::holds_alternative<SeifertMap>(map)) return 1;
    return -1;
}

Eigen::VectorXd evaluate(const MapId& map, const Eigen::VectorXd& x) {
    if (x.size() != domain_dimension(map))
        throw FibreError(ErrorCode::DimensionMismatch, "point has wrong dimension for " + map_name(map));
    return std::visit(overloaded{
                          [&](const PsiBoundaryMap& m) -> Eigen::VectorXd {
                              const TorusSolidPoint out = eval_psi(m.data, {x[0], x[1], unit(x[2])});
                              return Eigen::Vector3d(out.xi1, out.xi2, reduce_angle(std::arg(out.z)));
                          },
                          [&](const FoldChartMap& m) -> Eigen::VectorXd {
                              FoldChartPoint pt{x[0], std::vector<double>(x.data() + 1, x.data() + x.size())};
                              const auto [a, b] = eval_fold_chart(m.signs, pt);
                              return Eigen::Vector2d(a, b);
                          },
                          [&](const auto& m) -> Eigen::VectorXd {
                              const Complex f = as_power_map(m).value(x);
                              return Eigen::Vector2d(f.real(), f.imag());
                          },
                      },
                      map);
}

Eigen::MatrixXd jacobian_exact(const MapId& map, const Eigen::VectorXd& x) {
    if (x.size() != domain_dimension(map))
        throw FibreError(ErrorCode::DimensionMismatch, "point has wrong dimension for " + map_name(map));
    return std::visit(overloaded{
                          [&](const PsiBoundaryMap& m) -> Eigen::MatrixXd { return gluing_as_real(m.data); },
                          [&](const FoldChartMap& m) -> Eigen::MatrixXd {
                              Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2, x.size());
                              j(0, 0) = 1.0;
                              for (std::size_t i = 0; i < m.signs.size(); ++i)
                                  j(1, i + 1) = 2.0 * m.signs[i] * x[i + 1];
                              return j;
                          },
                          [&](const auto& m) -> Eigen::MatrixXd { return as_power_map(m).jacobian(x); },
                      },
                      map);
}

std::vector<Eigen::MatrixXd> hessian_exact(const MapId& map, const Eigen::VectorXd& x) {
    if (x.size() != domain_dimension(map))
        throw FibreError(ErrorCode::DimensionMismatch, "point has wrong dimension for " + map_name(map));
    const auto n = x.size();
    return std::visit(overloaded{
                          [&](const PsiBoundaryMap&) {
                              return std::vector<Eigen::MatrixXd>(3, Eigen::MatrixXd::Zero(n, n));
                          },
                          [&](const FoldChartMap& m) {
                              std::vector<Eigen::MatrixXd> h(2, Eigen::MatrixXd::Zero(n, n));
                              for (std::size_t i = 0; i < m.signs.size(); ++i)
                                  h[1](i + 1, i + 1) = 2.0 * m.signs[i];
                              return h;
                          },
                          [&](const auto& m) { return as_power_map(m).hessian(x); },
                      },
                      map);
}

double first_order_variation(const MapId& map, const Eigen::VectorXd& x, const std::vector<double>& half_steps) {
    if (static_cast<Eigen::Index>(half_steps.size()) != x.size())
        throw FibreError(ErrorCode::DimensionMismatch, "one half-step per coordinate");
    auto power_bound = [&](const AngleTimesPower& m) {
        // The disk block of df is |f'| times a rotation.
        const Complex z{x[m.disk], x[m.disk + 1]};
        const double modulus = std::abs(z);
        double value = 1.0, deriv = 1.0;
        for (std::int64_t i = 0; i < m.p; ++i) value *= modulus;
        for (std::int64_t i = 0; i + 1 < m.p; ++i) deriv *= modulus;
        deriv *= static_cast<double>(m.p);
        return std::abs(m.c) * value * half_steps[m.angle] +
               deriv * std::hypot(half_steps[m.disk], half_steps[m.disk + 1]);
    };
    if (const auto* m = std::get_if<MultipleFiberMap>(&map)) return power_bound(as_power_map(*m));
    if (const auto* s = std::get_if<SeifertMap>(&map)) return power_bound(as_power_map(*s));
    const Eigen::MatrixXd j = jacobian_exact(map, x);
    const std::vector<bool> periodic = periodic_coordinates(map);
    std::vector<Eigen::Index> flat;
    double bound = 0.0, flat_sq = 0.0;
    for (Eigen::Index a = 0; a < x.size(); ++a) {
        if (periodic[a]) {
            bound += j.col(a).norm() * half_steps[a];
        } else {
            flat.push_back(a);
            flat_sq += half_steps[a] * half_steps[a];
        }
    }
    if (!flat.empty()) {
        Eigen::MatrixXd block(j.rows(), static_cast<Eigen::Index>(flat.size()));
        for (std::size_t i = 0; i < flat.size(); ++i) block.col(static_cast<Eigen::Index>(i)) = j.col(flat[i]);
        bound += block.operatorNorm() * std::sqrt(flat_sq);
    }
    return bound;
}

Eigen::MatrixXd jacobian_fd(const MapId& map, const Eigen::VectorXd& x, double h) {
    if (!(h > 0.0)) throw FibreError(ErrorCode::InvalidArgument, "finite-difference step must be positive");
    if (const int d = disk_offset(map); d >= 0 && std::hypot(x[d], x[d + 1]) > 1.0 - h)
        throw FibreError(ErrorCode::StepTooLarge, "point lies within h of the disk boundary");
    const bool angular_output = std::holds_alternative<PsiBoundaryMap>(map);
    Eigen::MatrixXd j(codomain_dimension(map), x.size());
    for (Eigen::Index c = 0; c < x.size(); ++c) {
        Eigen::VectorXd fwd = x, back = x;
        fwd[c] += h;
        back[c] -= h;
        const Eigen::VectorXd a = evaluate(map, back);
        const Eigen::VectorXd b = evaluate(map, fwd);
        for (Eigen::Index r = 0; r < j.rows(); ++r) {
            const double diff = angular_output ? wrapped_difference(a[r], b[r]) : b[r] - a[r];
            j(r, c) = diff / (2.0 * h);
        }
    }
    return j;
}

Mat3i induced_homology(const SurgeryData& data, int samples) {
    if (samples < 8) throw FibreError(ErrorCode::InvalidArgument, "need at least 8 samples per circle");
    Mat3i degrees{};
    for (int circle = 0; circle < 3; ++circle) {
        std::array<double, 3> total{};
        auto image = [&](int step) {
            std::array<double, 3> coords{0.0, 0.0, 0.0};
            coords[circle] = two_pi * step / samples;
            const TorusSolidPoint out = eval_psi(data, {coords[0], coords[1], unit(coords[2])});
            return std::array<double, 3>{out.xi1, out.xi2, std::arg(out.z)};
        };
        std::array<double, 3> prev = image(0);
        for (int step = 1; step <= samples; ++step) {
            const std::array<double, 3> cur = image(step);
            for (int i = 0; i < 3; ++i) total[i] += wrapped_difference(prev[i], cur[i]);
            prev = cur;
        }
        for (int i = 0; i < 3; ++i) {
            const double turns = total[i] / two_pi;
            const double rounded = std::round(turns);
            if (std::abs(turns - rounded) > 1e-6)
                throw FibreError(ErrorCode::InvalidArgument, "non-integral winding; increase samples");
            degrees[i][circle] = static_cast<std::int64_t>(rounded);
        }
    }
    return degrees;
}

} // namespace fibre
