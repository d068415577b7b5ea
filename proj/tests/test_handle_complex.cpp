#include "fibre/error.hpp"
#include "fibre/handle_complex.hpp"
#include "fibre/model_maps.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <complex>
#include <numbers>

using namespace fibre;

namespace {

constexpr double pi = std::numbers::pi;

using Key = std::vector<std::pair<int, int>>;  // (multiplicity, genus or -1), sorted

Key key_of(const RegionFiber& f) {
    Key k;
    for (const auto& c : f.components) k.emplace_back(c.multiplicity, c.genus.value_or(-1));
    std::sort(k.begin(), k.end());
    return k;
}

Key key_of(const std::vector<oracle::Component>& f) {
    Key k;
    for (const auto& c : f) k.emplace_back(c.multiplicity, c.genus.value_or(-1));
    std::sort(k.begin(), k.end());
    return k;
}

RegionFiber fiber(std::initializer_list<FiberComponent> cs) {
    RegionFiber f{cs};
    f.normalize();
    return f;
}

int count_kind(const PieceComplex& c, PieceKind kind) {
    return static_cast<int>(std::count_if(c.pieces.begin(), c.pieces.end(), [&](auto& p) { return p.kind == kind; }));
}

} // namespace

TEST(Exceptional21, Counts) {
    const PieceComplex c = build_exceptional_21();
    EXPECT_EQ(c.dimension, 3);
    EXPECT_EQ(c.fold_circle_count(), 1);
    EXPECT_EQ(c.innermost().components.size(), 2u);
    for (const auto& comp : c.innermost().components) {
        EXPECT_EQ(comp.multiplicity, 1);
        EXPECT_FALSE(comp.genus.has_value());
    }
    ASSERT_EQ(c.region_fibers.size(), 2u);
    EXPECT_EQ(c.region_fibers[0], fiber({{std::nullopt, 2}}));
    EXPECT_EQ(count_kind(c, PieceKind::boundary_collar), 1);
    EXPECT_EQ(count_kind(c, PieceKind::round_1_handle), 1);
    EXPECT_EQ(count_kind(c, PieceKind::trivial_solid_torus), 2);
    EXPECT_TRUE(validate_complex(c).passed) << validate_complex(c).failure.value_or("");
}

TEST(ExceptionalP1, Examples) {
    EXPECT_EQ(build_exceptional_p1(2).region_fibers, build_exceptional_21().region_fibers);
    EXPECT_EQ(build_exceptional_p1(2), build_exceptional_21());

    const PieceComplex c5 = build_exceptional_p1(5);
    EXPECT_EQ(c5.fold_circle_count(), 4);
    EXPECT_EQ(c5.innermost().components.size(), 5u);

    const PieceComplex c1 = build_exceptional_p1(1);
    EXPECT_EQ(c1.fold_circle_count(), 0);
    ASSERT_EQ(c1.region_fibers.size(), 1u);
    EXPECT_EQ(c1.region_fibers[0], fiber({{std::nullopt, 1}}));
    EXPECT_TRUE(validate_complex(c1).passed);

    EXPECT_THROW(build_exceptional_p1(0), FibreError);
    try {
        build_exceptional_p1(-2);
    } catch (const FibreError& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidMultiplicity);
    }
}

TEST(ExceptionalP1, InvariantsUpTo50) {
    for (int p = 1; p <= 50; ++p) {
        SCOPED_TRACE(p);
        const PieceComplex c = build_exceptional_p1(p);
        ASSERT_EQ(c.fold_circle_count(), p - 1);
        ASSERT_EQ(c.innermost().components.size(), static_cast<std::size_t>(p));
        ASSERT_EQ(c.filling_count(), p);
        ASSERT_EQ(static_cast<int>(c.region_fibers.size()), p);
        // region i: i circles of multiplicity 1 and one of multiplicity p - i
        for (int i = 0; i < p; ++i) {
            Key expected(i, {1, -1});
            expected.emplace_back(p - i, -1);
            std::sort(expected.begin(), expected.end());
            ASSERT_EQ(key_of(c.region_fibers[i]), expected);
            if (i > 0) ASSERT_EQ(c.region_fibers[i].components.size(), c.region_fibers[i - 1].components.size() + 1);
        }
        int chi = 0;
        for (const auto& piece : c.pieces) chi += piece.euler_characteristic();
        ASSERT_EQ(chi, 0);
        const auto oracle_regions = oracle::replay_regions(p, 3);
        ASSERT_EQ(oracle_regions.size(), c.region_fibers.size());
        for (std::size_t i = 0; i < oracle_regions.size(); ++i)
            ASSERT_EQ(key_of(c.region_fibers[i]), key_of(oracle_regions[i]));
        const ValidationReport r = validate_complex(c);
        ASSERT_TRUE(r.passed) << r.failure.value_or("");
    }
}

TEST(MultipleFiber, Examples) {
    const PieceComplex c2 = build_multiple_fiber(2);
    EXPECT_EQ(c2.dimension, 4);
    EXPECT_EQ(c2.fold_circle_count(), 2);
    ASSERT_EQ(c2.region_fibers.size(), 3u);
    EXPECT_EQ(c2.region_fibers[0], fiber({{1, 2}}));
    EXPECT_EQ(c2.region_fibers[1], fiber({{2, 2}}));
    EXPECT_EQ(c2.region_fibers[2], fiber({{1, 1}, {1, 1}}));

    const PieceComplex c3 = build_multiple_fiber(3);
    EXPECT_EQ(c3.fold_circle_count(), 4);
    EXPECT_EQ(c3.innermost(), fiber({{1, 1}, {1, 1}, {1, 1}}));

    const PieceComplex c1 = build_multiple_fiber(1);
    EXPECT_EQ(c1.fold_circle_count(), 0);
    ASSERT_EQ(c1.region_fibers.size(), 1u);
    EXPECT_EQ(c1.region_fibers[0], fiber({{1, 1}}));
    EXPECT_THROW(build_multiple_fiber(0), FibreError);
}

TEST(MultipleFiber, InvariantsUpTo50) {
    for (int p = 1; p <= 50; ++p) {
        SCOPED_TRACE(p);
        const PieceComplex c = build_multiple_fiber(p);
        ASSERT_EQ(c.fold_circle_count(), 2 * (p - 1));
        for (int j = 0; j < c.fold_circle_count(); ++j) {
            ASSERT_EQ(c.base_diagram[j].kind, j % 2 == 0 ? PieceKind::round_1_handle : PieceKind::round_2_handle);
            if (j > 0) ASSERT_LT(c.base_diagram[j].radius, c.base_diagram[j - 1].radius);
        }
        ASSERT_EQ(c.innermost().components.size(), static_cast<std::size_t>(p));
        for (const auto& comp : c.innermost().components) {
            ASSERT_EQ(comp.genus, 1);
            ASSERT_EQ(comp.multiplicity, 1);
        }
        ASSERT_EQ(count_kind(c, PieceKind::trivial_T2xD2), p);
        int chi = 0;
        for (const auto& piece : c.pieces) chi += piece.euler_characteristic();
        ASSERT_EQ(chi, 0);
        // the separating 2-handle keeps total genus and adds a component; over a
        // whole pair sum(g - 1) is unchanged
        for (int pair = 0; pair + 1 < p; ++pair) {
            const RegionFiber& before = c.region_fibers[2 * pair];
            const RegionFiber& middle = c.region_fibers[2 * pair + 1];
            const RegionFiber& after = c.region_fibers[2 * pair + 2];
            ASSERT_EQ(middle.total_genus(), before.total_genus() + 1);
            ASSERT_EQ(middle.components.size(), before.components.size());
            ASSERT_EQ(after.total_genus(), middle.total_genus());
            ASSERT_EQ(after.components.size(), middle.components.size() + 1);
            const auto reduced = [](const RegionFiber& f) {
                return f.total_genus() - static_cast<int>(f.components.size());
            };
            ASSERT_EQ(reduced(after), reduced(before));
        }
        const auto oracle_regions = oracle::replay_regions(p, 4);
        ASSERT_EQ(oracle_regions.size(), c.region_fibers.size());
        for (std::size_t i = 0; i < oracle_regions.size(); ++i)
            ASSERT_EQ(key_of(c.region_fibers[i]), key_of(oracle_regions[i]));
        const ValidationReport r = validate_complex(c);
        ASSERT_TRUE(r.passed) << r.failure.value_or("");
    }
}

TEST(Transitions, Rules) {
    const RegionFiber circle2 = fiber({{std::nullopt, 3}});
    EXPECT_EQ(apply_transition(circle2, PieceKind::round_1_handle, 3), fiber({{std::nullopt, 1}, {std::nullopt, 2}}));
    EXPECT_EQ(apply_transition(circle2, PieceKind::round_2_handle, 3), std::nullopt);

    const RegionFiber torus = fiber({{1, 3}});
    EXPECT_EQ(apply_transition(torus, PieceKind::round_1_handle, 4), fiber({{2, 3}}));
    EXPECT_EQ(apply_transition(torus, PieceKind::round_2_handle, 4), std::nullopt);
    EXPECT_EQ(apply_transition(fiber({{2, 3}}), PieceKind::round_2_handle, 4), fiber({{1, 1}, {1, 2}}));
    // a multiplicity-1 fiber has nothing left to split
    EXPECT_EQ(apply_transition(fiber({{std::nullopt, 1}}), PieceKind::round_1_handle, 3), std::nullopt);
}

TEST(Validate, TwoConsecutiveRoundTwoHandlesFail) {
    const std::vector<PieceKind> folds{PieceKind::round_2_handle, PieceKind::round_2_handle};
    const std::vector<RegionFiber> regions{fiber({{1, 2}}), fiber({{1, 1}, {1, 1}}), fiber({{1, 1}, {1, 1}})};
    const ValidationReport r = validate_regions(folds, regions, 4);
    EXPECT_FALSE(r.passed);
    ASSERT_TRUE(r.failure.has_value());

    PieceComplex c = build_multiple_fiber(3);
    c.pieces[c.base_diagram[0].piece].kind = PieceKind::round_2_handle;
    c.base_diagram[0].kind = PieceKind::round_2_handle;
    EXPECT_FALSE(validate_complex(c).passed);
}

TEST(Validate, InnermostMultiplicityTwoFails) {
    PieceComplex c = build_exceptional_p1(3);
    c.region_fibers.back() = fiber({{std::nullopt, 2}, {std::nullopt, 1}});
    const ValidationReport r = validate_complex(c);
    EXPECT_FALSE(r.passed);

    const ValidationReport direct =
        validate_regions({PieceKind::round_1_handle}, {fiber({{std::nullopt, 3}}), fiber({{std::nullopt, 2}, {std::nullopt, 1}})}, 3);
    EXPECT_FALSE(direct.passed);
    EXPECT_NE(direct.failure->find("innermost_trivial"), std::string::npos);
}

TEST(Validate, StructuralFailures) {
    {
        PieceComplex c = build_multiple_fiber(3);
        c.base_diagram.pop_back();
        EXPECT_FALSE(validate_complex(c).passed);
    }
    {
        PieceComplex c = build_multiple_fiber(3);
        c.gluings.pop_back();
        EXPECT_FALSE(validate_complex(c).passed);
    }
    {
        PieceComplex c = build_exceptional_p1(4);
        std::swap(c.base_diagram[0].radius, c.base_diagram[1].radius);
        EXPECT_FALSE(validate_complex(c).passed);
    }
    {
        PieceComplex c = build_exceptional_p1(4);
        c.gluings[1].slope.multiplicity = 2;  // breaks the {1, m-1} ledger
        EXPECT_FALSE(validate_complex(c).passed);
    }
    {
        PieceComplex c = build_exceptional_p1(3);
        c.pieces.back().kind = PieceKind::trivial_T2xD2;
        EXPECT_FALSE(validate_complex(c).passed);
    }
}

TEST(Pieces, EulerAndBoundaries) {
    for (auto kind : {PieceKind::boundary_collar, PieceKind::round_1_handle, PieceKind::round_2_handle,
                      PieceKind::trivial_solid_torus, PieceKind::trivial_T2xD2}) {
        EXPECT_EQ((FiberedPiece{kind, 3, ""}).euler_characteristic(), 0);
        EXPECT_EQ(parse_piece_kind(to_string(kind)), kind);
    }
    EXPECT_THROW(parse_piece_kind("round_3_handle"), FibreError);
}

TEST(Movie, PhiZero) {
    const auto charts = movie_slices(2, 0.0);
    ASSERT_EQ(charts.size(), 2u);
    EXPECT_EQ(charts[0].role, ChartRole::G1);
    EXPECT_DOUBLE_EQ(charts[0].interval.lo, -pi / 4);
    EXPECT_DOUBLE_EQ(charts[0].interval.hi, pi / 4);
    EXPECT_EQ(charts[1].role, ChartRole::G2);
    EXPECT_DOUBLE_EQ(charts[1].interval.lo, pi / 4);
    EXPECT_DOUBLE_EQ(charts[1].interval.hi, 7 * pi / 4);
    EXPECT_NEAR(charts[0].interval.length() + charts[1].interval.length(), 2 * pi, 1e-15);
    EXPECT_TRUE(charts_partition_circle(charts));
    EXPECT_EQ(charts[0].singular_theta, 0.0);
}

TEST(Movie, OneFoldPointPerChartPerFrame) {
    for (double phi : {0.0, 0.3, 1.0, pi, 5.5, 6.2}) {
        for (int p = 2; p <= 6; ++p) {
            const auto charts = movie_slices(p, phi);
            ASSERT_EQ(charts.size(), static_cast<std::size_t>(2 * (p - 1)));
            for (const auto& c : charts) {
                EXPECT_EQ(c.frame_hits, 1);
                EXPECT_EQ(c.interval.locate(c.singular_theta), 1);
                EXPECT_NEAR(std::abs(std::polar(1.0, c.singular_phi + c.singular_theta) - std::polar(1.0, phi)), 0.0, 1e-12);
            }
            EXPECT_TRUE(charts_partition_circle(charts));
        }
    }
}

TEST(Movie, PairsInAttachmentOrder) {
    const auto charts = movie_slices(3, 0.0);
    ASSERT_EQ(charts.size(), 4u);
    EXPECT_EQ(charts[0].pair, 0);
    EXPECT_EQ(charts[1].pair, 0);
    EXPECT_EQ(charts[2].pair, 1);
    EXPECT_EQ(charts[3].pair, 1);
    EXPECT_THROW(movie_slices(1, 0.0), FibreError);
}

TEST(Movie, OverlappingChartsDoNotPartition) {
    auto charts = movie_slices(2, 0.0);
    charts[1].interval = {-pi / 4, 7 * pi / 4 - pi / 2};
    EXPECT_FALSE(charts_partition_circle(charts));
}
