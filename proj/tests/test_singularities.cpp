#include "fibre/grid.hpp"
#include "fibre/model_maps.hpp"
#include "fibre/singularities.hpp"

#include <gtest/gtest.h>

#include <set>
#include <vector>

using namespace fibre;

namespace {

/// True if the closed cell along the given axes contains the origin of those axes.
bool cell_meets_origin(const GridSpec& grid, const std::vector<int>& cell, const std::vector<int>& axes) {
    const auto ax = grid.axes();
    for (int a : axes) {
        const double lo = ax[a].vertex(cell[a]);
        const double hi = lo + ax[a].step();
        if (lo > 0.0 || hi < 0.0) return false;
    }
    return true;
}

void expect_exact_set(const MapId& map, const GridSpec& grid, const std::vector<int>& zero_axes, PointClass expected,
                      double tau) {
    const SingularityReport report = scan_singularities(map, grid, {tau, 0});
    const Lattice cells = grid.cells();
    std::set<std::int64_t> flagged;
    for (const FlaggedCell& c : report.cells) {
        EXPECT_EQ(c.cls, expected);
        flagged.insert(cells.linear(c.cell));
    }
    std::int64_t false_pos = 0, false_neg = 0, domain = 0;
    for (std::int64_t i = 0; i < cells.size(); ++i) {
        const auto idx = cells.unravel(i);
        if (!grid.cell_in_domain(idx)) continue;
        ++domain;
        const bool should = cell_meets_origin(grid, idx, zero_axes);
        const bool is = flagged.count(i) > 0;
        false_pos += is && !should;
        false_neg += should && !is;
    }
    EXPECT_EQ(false_pos, 0);
    EXPECT_EQ(false_neg, 0);
    EXPECT_EQ(report.domain_cells, domain);
    EXPECT_EQ(report.count(expected), static_cast<std::int64_t>(flagged.size()));
}

} // namespace

TEST(Scan, MultipleFiberRankZeroExactlyOnCore) {
    const GridSpec grid{DomainKind::T2xD2, {16, 16, 16, 16}};
    for (int p : {2, 3, 5}) {
        SCOPED_TRACE(p);
        expect_exact_set(multiple_fiber(p, 1), grid, {2, 3}, PointClass::degenerate_rank0, 1e-8);
    }
}

TEST(Scan, MultipleFiberCoreCellCount) {
    const GridSpec grid{DomainKind::T2xD2, {16, 16, 16, 16}};
    const SingularityReport r = scan_singularities(multiple_fiber(2, 1), grid, {1e-8, 0});
    // 2 x 2 disk cells touch the origin, times 16 x 16 angle cells.
    EXPECT_EQ(r.count(PointClass::degenerate_rank0), 1024);
    EXPECT_EQ(r.count(PointClass::regular), r.domain_cells - 1024);
}

TEST(Scan, TrivialMultiplicityHasNoSingularities) {
    const GridSpec grid{DomainKind::T2xD2, {16, 16, 16, 16}};
    const SingularityReport r = scan_singularities(multiple_fiber(1, 0), grid, {1e-8, 0});
    EXPECT_TRUE(r.cells.empty());
    EXPECT_TRUE(r.samples.empty());
    EXPECT_EQ(r.count(PointClass::regular), r.domain_cells);
}

TEST(Scan, SeifertCore) {
    const GridSpec grid{DomainKind::solid_torus, {16, 16, 16}};
    expect_exact_set(seifert(3, 2), grid, {1, 2}, PointClass::degenerate_rank0, 1e-8);
}

TEST(Scan, FoldChartIndefinite) {
    const GridSpec grid{DomainKind::box, {32, 32, 32}};
    expect_exact_set(fold_chart({1, -1}), grid, {1, 2}, PointClass::fold_indefinite, default_rank_tolerance(grid));
}

TEST(Scan, FoldChartDefinite) {
    const GridSpec grid{DomainKind::box, {32, 32, 32}};
    expect_exact_set(fold_chart({1, 1}), grid, {1, 2}, PointClass::fold_definite, default_rank_tolerance(grid));
    expect_exact_set(fold_chart({-1, -1}), grid, {1, 2}, PointClass::fold_definite, default_rank_tolerance(grid));
}

TEST(Scan, FoldChartFourDimensional) {
    const GridSpec grid{DomainKind::box, {8, 8, 8, 8}};
    expect_exact_set(fold_chart({1, 1, -1}), grid, {1, 2, 3}, PointClass::fold_indefinite, 1e-8);
    expect_exact_set(fold_chart({1, 1, 1}), grid, {1, 2, 3}, PointClass::fold_definite, 1e-8);
}

TEST(Scan, ThreadCountDoesNotChangeReport) {
    const GridSpec grid{DomainKind::T2xD2, {12, 12, 12, 12}};
    const SingularityReport a = scan_singularities(multiple_fiber(3, 1), grid, {1e-8, 1});
    const SingularityReport b = scan_singularities(multiple_fiber(3, 1), grid, {1e-8, 8});
    ASSERT_EQ(a.cells.size(), b.cells.size());
    for (std::size_t i = 0; i < a.cells.size(); ++i) EXPECT_EQ(a.cells[i].cell, b.cells[i].cell);
    ASSERT_EQ(a.samples.size(), b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) EXPECT_EQ(a.samples[i].point, b.samples[i].point);
    EXPECT_EQ(a.cell_counts, b.cell_counts);
}

TEST(ClassifyPoint, RanksAndTypes) {
    Eigen::VectorXd x(3);
    x << 0.2, 0.0, 0.0;
    EXPECT_EQ(classify_point(fold_chart({1, -1}), x, 1e-8).cls, PointClass::fold_indefinite);
    EXPECT_EQ(classify_point(fold_chart({1, -1}), x, 1e-8).rank, 1);
    EXPECT_EQ(classify_point(fold_chart({1, 1}), x, 1e-8).cls, PointClass::fold_definite);
    x << 0.2, 0.3, 0.0;
    EXPECT_EQ(classify_point(fold_chart({1, -1}), x, 1e-8).cls, PointClass::regular);

    Eigen::VectorXd y(3);
    y << 1.0, 0.0, 0.0;
    const PointClassification c = classify_point(seifert(2, 1), y, 1e-8);
    EXPECT_EQ(c.cls, PointClass::degenerate_rank0);
    EXPECT_EQ(c.rank, 0);
    // p = 1 is a submersion even at the core
    EXPECT_EQ(classify_point(seifert(1, 0), y, 1e-8).cls, PointClass::regular);
}

TEST(Grid, ValidationAndCompatibility) {
    EXPECT_THROW((GridSpec{DomainKind::box, {4, 8, 8}}.validate()), std::exception);
    EXPECT_THROW(check_compatible(seifert(2, 1), GridSpec{DomainKind::T2xD2, {8, 8, 8, 8}}), std::exception);
    EXPECT_THROW(check_compatible(fold_chart({1, -1}), GridSpec{DomainKind::box, {8, 8, 8, 8}}), std::exception);
    EXPECT_THROW(domain_for(psi_boundary(SurgeryData::make(2, 1))), std::exception);
    EXPECT_NO_THROW(check_compatible(multiple_fiber(2, 1), GridSpec{DomainKind::T2xD2, {8, 8, 8, 8}}));
}

TEST(Grid, LatticeWrapsPeriodicAxes) {
    const Lattice l({4, 5}, {true, false});
    EXPECT_EQ(l.size(), 20);
    EXPECT_EQ(l.neighbor(l.linear({0, 2}), 0, -1), l.linear({3, 2}));
    EXPECT_EQ(l.neighbor(l.linear({1, 4}), 1, +1), std::nullopt);
    EXPECT_EQ(l.unravel(l.linear({3, 1})), (std::vector<int>{3, 1}));
}
