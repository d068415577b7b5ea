#include "fibre/surgery.hpp"

#include "fibre/error.hpp"

#include <cstdlib>
#include <numeric>
#include <string>

namespace fibre {

namespace {

struct Bezout {
    std::int64_t g, x, y;  // g = a*x + b*y
};

Bezout extended_gcd(std::int64_t a, std::int64_t b) {
    std::int64_t old_r = a, r = b;
    std::int64_t old_s = 1, s = 0;
    std::int64_t old_t = 0, t = 1;
    while (r != 0) {
        const std::int64_t quot = old_r / r;
        std::int64_t tmp = r;
        r = old_r - quot * r;
        old_r = tmp;
        tmp = s;
        s = old_s - quot * s;
        old_s = tmp;
        tmp = t;
        t = old_t - quot * t;
        old_t = tmp;
    }
    if (old_r < 0) return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

} // namespace

std::int64_t gcd(std::int64_t a, std::int64_t b) {
    return std::gcd(std::llabs(a), std::llabs(b));
}

std::int64_t solve_k(std::int64_t p, std::int64_t q) {
    if (p < 0) throw FibreError(ErrorCode::InvalidArgument, "multiplicity p must be >= 0");
    if (p == 0) {
        if (q != 1 && q != -1)
            throw FibreError(ErrorCode::DegenerateSurgery,
                             "p = 0 requires q = +-1, got q = " + std::to_string(q));
        return -q;
    }
    if (gcd(p, q) != 1)
        throw FibreError(ErrorCode::NotCoprime,
                         "gcd(" + std::to_string(p) + ", " + std::to_string(q) + ") != 1");
    if (p == 1) return 0;
    // q * inv = 1 (mod p), so k = -inv.
    const Bezout b = extended_gcd(mod_floor(q, p), p);
    return mod_floor(-b.x, p);
}

SurgeryData SurgeryData::make(std::int64_t p, std::int64_t q, Vec2i alpha) {
    if (gcd(alpha[0], alpha[1]) != 1)
        throw FibreError(ErrorCode::NotPrimitive, "direction alpha must be primitive");
    SurgeryData d;
    d.p = p;
    d.q = q;
    d.alpha = alpha;
    d.k = solve_k(p, q);
    return d;
}

std::int64_t GluingMatrix::determinant() const {
    const auto& m = entries;
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
         - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
         + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Vec3i GluingMatrix::apply(const Vec3i& v) const {
    Vec3i out{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out[i] += entries[i][j] * v[j];
    return out;
}

Vec3i GluingMatrix::column(int j) const {
    return {entries[0][j], entries[1][j], entries[2][j]};
}

bool HomologyClass::is_primitive() const {
    return gcd(gcd(coeffs[0], coeffs[1]), coeffs[2]) == 1;
}

GluingMatrix gluing_matrix(const SurgeryData& data) {
    const std::int64_t k = solve_k(data.p, data.q);
    const std::int64_t center = data.p == 0 ? 0 : (data.q * k + 1) / data.p;
    GluingMatrix g;
    g.entries = {{{1, 0, 0}, {0, center, data.q}, {0, k, data.p}}};
    return g;
}

HomologyClass surgery_class(const SurgeryData& data) {
    return {{data.q * data.alpha[0], data.q * data.alpha[1], data.p}};
}

HomologyClass normalized_surgery_class(const SurgeryData& data) {
    const HomologyClass raw = surgery_class(data);
    const Mat2i m = direction_normalizer(data.alpha);
    return {{m[0][0] * raw.coeffs[0] + m[0][1] * raw.coeffs[1],
             m[1][0] * raw.coeffs[0] + m[1][1] * raw.coeffs[1], raw.coeffs[2]}};
}

std::int64_t determinant(const Mat2i& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

Mat2i direction_normalizer(Vec2i alpha) {
    const auto [a, b] = alpha;
    if (gcd(a, b) != 1)
        throw FibreError(ErrorCode::NotPrimitive,
                         "(" + std::to_string(a) + ", " + std::to_string(b) + ") is not primitive");
    // Row 1 is orthogonal to alpha, row 2 pairs with alpha to 1.
    if (b == 0) return {{{0, -a}, {a, 0}}};
    const std::int64_t s = b > 0 ? 1 : -1;
    const std::int64_t modulus = std::llabs(b);
    const Bezout bz = extended_gcd(mod_floor(a, modulus), modulus);
    const std::int64_t x = modulus == 1 ? 0 : mod_floor(bz.x, modulus);
    const std::int64_t y = (1 - a * x) / b;
    return {{{modulus, -s * a}, {x, y}}};
}

} // namespace fibre
