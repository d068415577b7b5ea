#pragma once

#include "fibre/surgery.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace fibre {

using Complex = std::complex<double>;

/// (xi1, xi2, z) on T^2 x D^2. Angles in radians.
struct TorusSolidPoint {
    double xi1 = 0.0;
    double xi2 = 0.0;
    Complex z{};
};

/// (u, z) on the solid torus S^1 x D^2.
struct SolidTorusPoint {
    double u = 0.0;
    Complex z{};
};

struct FoldChartPoint {
    double t = 0.0;
    std::vector<double> x;
};

struct MultipleFiberMap {
    std::int64_t p = 1;
    std::int64_t k = 0;
    bool operator==(const MultipleFiberMap&) const = default;
};

struct SeifertMap {
    std::int64_t p = 1;
    std::int64_t q = 0;
    bool operator==(const SeifertMap&) const = default;
};

struct PsiBoundaryMap {
    SurgeryData data;
    bool operator==(const PsiBoundaryMap&) const = default;
};

struct FoldChartMap {
    std::vector<int> signs;
    bool operator==(const FoldChartMap&) const = default;
};

using MapId = std::variant<MultipleFiberMap, SeifertMap, PsiBoundaryMap, FoldChartMap>;

MapId multiple_fiber(std::int64_t p, std::int64_t k);
MapId seifert(std::int64_t p, std::int64_t q);
MapId psi_boundary(const SurgeryData& data);
MapId fold_chart(std::vector<int> signs);

std::string map_name(const MapId& map);

double reduce_angle(double a);           // into [0, 2*pi)
double wrapped_difference(double a, double b);  // b - a in (-pi, pi]

Complex eval_multiple_fiber(std::int64_t p, std::int64_t k, const TorusSolidPoint& pt);
Complex eval_seifert(std::int64_t p, std::int64_t q, const SolidTorusPoint& pt);
TorusSolidPoint eval_psi(const SurgeryData& data, const TorusSolidPoint& pt);
std::pair<double, double> eval_fold_chart(const std::vector<int>& signs, const FoldChartPoint& pt);

// Real-coordinate view of every map:
//   multiple_fiber  (xi1, xi2, x, y)    -> (Re f, Im f)
//   seifert         (u, x, y)           -> (Re f, Im f)
//   psi_boundary    (xi1, xi2, theta)   -> three angles, z = e^{i theta}
//   fold_chart      (t, x_1, ..., x_n)  -> (t, sum s_i x_i^2)
int domain_dimension(const MapId& map);
int codomain_dimension(const MapId& map);
/// Flags the coordinates that are angles (periodic).
std::vector<bool> periodic_coordinates(const MapId& map);
/// Index of the first disk coordinate, or -1 for maps without a disk factor.
int disk_offset(const MapId& map);

Eigen::VectorXd evaluate(const MapId& map, const Eigen::VectorXd& x);
Eigen::MatrixXd jacobian_exact(const MapId& map, const Eigen::VectorXd& x);
/// Second derivatives, one symmetric matrix per output component.
std::vector<Eigen::MatrixXd> hessian_exact(const MapId& map, const Eigen::VectorXd& x);
/// First-order bound on |f(x + v) - f(x)| for |v_a| <= half_steps[a]. Each
/// angle coordinate contributes its column norm times its half-step; the
/// remaining coordinates contribute the operator norm of their block times
/// their joint half-diagonal.
double first_order_variation(const MapId& map, const Eigen::VectorXd& x, const std::vector<double>& half_steps);

/// Central differences with step h. Angle-valued outputs are differenced on the circle.
Eigen::MatrixXd jacobian_fd(const MapId& map, const Eigen::VectorXd& x, double h);

/// Winding numbers of eval_psi's output angles along the three coordinate
/// circles of the boundary 3-torus: entry (i, j) is the degree of output i
/// along input circle j.
Mat3i induced_homology(const SurgeryData& data, int samples = 4096);

} // namespace fibre
