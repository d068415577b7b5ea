#pragma once

#include <array>
#include <cstdint>

/**
 * Integer data of a torus surgery on T^2 x D^2.
 *
 * Homology of the boundary 3-torus is written in the ordered basis
 * (first circle factor, second circle factor = normalized direction,
 * meridian m = [{pt} x dD^2]). Matrices act on column vectors.
 */
namespace fibre {

using Vec2i = std::array<std::int64_t, 2>;
using Vec3i = std::array<std::int64_t, 3>;
using Mat2i = std::array<std::array<std::int64_t, 2>, 2>;
using Mat3i = std::array<std::array<std::int64_t, 3>, 3>;

std::int64_t gcd(std::int64_t a, std::int64_t b);

struct SurgeryData {
    std::int64_t p = 1;      // multiplicity
    std::int64_t q = 0;      // auxiliary multiplicity
    Vec2i alpha{0, 1};       // direction in H_1(T^2), primitive
    std::int64_t k = 0;      // least non-negative solution of qk + 1 = 0 mod p

    /// Validates (p, q, alpha) and solves for k.
    static SurgeryData make(std::int64_t p, std::int64_t q, Vec2i alpha = {0, 1});

    bool operator==(const SurgeryData&) const = default;
};

struct GluingMatrix {
    Mat3i entries{};

    std::int64_t determinant() const;
    Vec3i apply(const Vec3i& v) const;
    Vec3i column(int j) const;

    bool operator==(const GluingMatrix&) const = default;
};

struct HomologyClass {
    Vec3i coeffs{};

    bool is_primitive() const;
    bool operator==(const HomologyClass&) const = default;
};

std::int64_t solve_k(std::int64_t p, std::int64_t q);

/// [[1,0,0],[0,(qk+1)/p,q],[0,k,p]]; the center entry is 0 when p = 0.
GluingMatrix gluing_matrix(const SurgeryData& data);

/// gamma = q*alpha + p*m in un-normalized coordinates.
HomologyClass surgery_class(const SurgeryData& data);

/// gamma after re-identifying alpha with the second circle factor: (0, q, p).
HomologyClass normalized_surgery_class(const SurgeryData& data);

/// Unimodular M with M * alpha = (0, 1). Among the valid choices the top-left
/// entry is the smallest non-negative one, and the bottom-left entry is
/// reduced into [0, |alpha.1|).
Mat2i direction_normalizer(Vec2i alpha);

std::int64_t determinant(const Mat2i& m);

inline bool is_integral(const SurgeryData& data) { return data.q == 1 || data.q == -1; }

} // namespace fibre
