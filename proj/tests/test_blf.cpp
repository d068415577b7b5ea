#include "fibre/blf.hpp"
#include "fibre/error.hpp"
#include "fibre/json_io.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <string>

using namespace fibre;

namespace {

std::size_t occurrences(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t at = text.find(needle); at != std::string::npos; at = text.find(needle, at + needle.size())) ++n;
    return n;
}

/// Text between the opening tag of the group with the given id and its closing tag.
std::string group_body(const std::string& svg, const std::string& id) {
    const std::size_t start = svg.find("id=\"" + id + "\"");
    if (start == std::string::npos) return {};
    return svg.substr(start, svg.find("</g>", start) - start);
}

BLFDiagram e1_23() { return build_blf({1, 2, 3, std::nullopt}); }

} // namespace

TEST(BuildBlf, E1_23) {
    const BLFDiagram d = e1_23();
    EXPECT_EQ(d.lefschetz_points.size(), 12u);
    EXPECT_EQ(d.fold_groups[0].circles.size(), 2u);
    EXPECT_EQ(d.fold_groups[1].circles.size(), 4u);
    EXPECT_EQ(d.fold_groups[0].label, "p");
    EXPECT_EQ(d.fold_groups[1].label, "q");
    EXPECT_EQ(d.regions.size(), 7u);
    EXPECT_EQ(d.regions[0].fiber.components.size(), 1u);
    EXPECT_EQ(d.regions[0].fiber.components[0].genus, 1);
    const ValidationReport r = validate_blf(d);
    EXPECT_TRUE(r.passed) << r.failure.value_or("");
}

TEST(BuildBlf, E1_11) {
    const BLFDiagram d = build_blf({1, 1, 1, std::nullopt});
    EXPECT_EQ(d.lefschetz_points.size(), 12u);
    EXPECT_TRUE(d.fold_groups[0].circles.empty());
    EXPECT_TRUE(d.fold_groups[1].circles.empty());
    EXPECT_TRUE(validate_blf(d).passed);
}

TEST(BuildBlf, E2_23WithExplicitCount) {
    const BLFDiagram d = build_blf({2, 2, 3, 24});
    EXPECT_EQ(d.lefschetz_points.size(), 24u);
    EXPECT_EQ(d.fold_groups[0].circles.size() + d.fold_groups[1].circles.size(), 6u);
    EXPECT_TRUE(validate_blf(d).passed);
    EXPECT_EQ(build_blf({2, 2, 3, std::nullopt}).lefschetz_points.size(), 24u);
}

TEST(BuildBlf, Errors) {
    auto code = [](EllipticSurfaceSpec s) {
        try {
            build_blf(s);
        } catch (const FibreError& e) {
            return e.code();
        }
        return ErrorCode::InvalidArgument;
    };
    EXPECT_EQ(code({1, 2, 4, std::nullopt}), ErrorCode::NotCoprime);
    EXPECT_EQ(code({1, 6, 3, std::nullopt}), ErrorCode::NotCoprime);
    EXPECT_EQ(code({1, 0, 3, std::nullopt}), ErrorCode::InvalidMultiplicity);
    EXPECT_THROW(build_blf({0, 2, 3, std::nullopt}), FibreError);
    EXPECT_THROW(build_blf({1, 2, 3, -1}), FibreError);
}

TEST(BuildBlf, InvariantsOverSmallSurfaces) {
    for (int p = 1; p <= 20; ++p)
        for (int q = 1; q <= 20; ++q) {
            if (std::gcd(p, q) != 1) continue;
            const BLFDiagram d = build_blf({1, p, q, std::nullopt});
            const std::size_t total = d.fold_groups[0].circles.size() + d.fold_groups[1].circles.size();
            ASSERT_EQ(total, static_cast<std::size_t>(2 * (p - 1) + 2 * (q - 1)));
            const int mult[2] = {p, q};
            for (int g = 0; g < 2; ++g) {
                const FoldGroup& group = d.fold_groups[g];
                const RegionFiber& in = group.circles.empty() ? d.regions[0].fiber : group.circles.back().inner;
                ASSERT_EQ(static_cast<int>(in.components.size()), mult[g]);
                for (const auto& c : in.components) {
                    ASSERT_EQ(c.genus, 1);
                    ASSERT_EQ(c.multiplicity, 1);
                }
                for (std::size_t j = 0; j < group.circles.size(); ++j) {
                    const auto& circle = group.circles[j];
                    ASSERT_EQ(apply_transition(circle.outer, circle.kind, 4), circle.inner);
                    if (j > 0) ASSERT_EQ(group.circles[j - 1].inner, circle.outer);
                }
            }
            const ValidationReport r = validate_blf(d);
            ASSERT_TRUE(r.passed) << p << "," << q << ": " << r.failure.value_or("");
        }
}

TEST(ValidateBlf, LefschetzPointInsideGroupFails) {
    BLFDiagram d = e1_23();
    d.lefschetz_points[0] = d.fold_groups[1].center;
    const ValidationReport r = validate_blf(d);
    EXPECT_FALSE(r.passed);
    EXPECT_NE(r.failure->find("lefschetz_in_outer_region"), std::string::npos);
}

TEST(ValidateBlf, FiveCirclesFail) {
    BLFDiagram d = e1_23();
    d.fold_groups[1].circles.pop_back();
    const ValidationReport r = validate_blf(d);
    EXPECT_FALSE(r.passed);
    EXPECT_NE(r.failure->find("fold_circle_count"), std::string::npos);
}

TEST(ValidateBlf, OtherViolations) {
    {
        BLFDiagram d = e1_23();
        d.fold_groups[1].center = d.fold_groups[0].center;
        EXPECT_FALSE(validate_blf(d).passed);
    }
    {
        BLFDiagram d = e1_23();
        std::swap(d.fold_groups[1].circles[1].kind, d.fold_groups[1].circles[2].kind);
        EXPECT_FALSE(validate_blf(d).passed);
    }
    {
        BLFDiagram d = e1_23();
        d.regions[0].fiber.components[0].genus = 2;
        EXPECT_FALSE(validate_blf(d).passed);
    }
    {
        BLFDiagram d = e1_23();
        d.q = 4;
        EXPECT_FALSE(validate_blf(d).passed);
    }
}

TEST(EmitSvg, E1_23) {
    const std::string svg = emit_svg(e1_23());
    EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
    EXPECT_EQ(occurrences(svg, "class=\"lefschetz\""), 12u);
    EXPECT_EQ(occurrences(svg, "<circle class=\"fold"), 6u);
    EXPECT_EQ(occurrences(group_body(svg, "fold-group-p"), "<circle"), 2u);
    EXPECT_EQ(occurrences(group_body(svg, "fold-group-q"), "<circle"), 4u);
    EXPECT_NE(svg.find("blue"), std::string::npos);
    EXPECT_NE(svg.find("red"), std::string::npos);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(EmitSvg, EmptyDiagram) {
    const std::string svg = emit_svg(BLFDiagram{});
    EXPECT_EQ(occurrences(svg, "class=\"lefschetz\""), 0u);
    EXPECT_EQ(occurrences(svg, "<circle"), 0u);
    EXPECT_NE(svg.find("<svg"), std::string::npos);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(EmitSvg, DeterministicAndLayoutAware) {
    EXPECT_EQ(emit_svg(e1_23()), emit_svg(e1_23()));
    SvgLayout layout;
    layout.fold_color = "#aa0000";
    const std::string svg = emit_svg(e1_23(), layout);
    EXPECT_NE(svg.find("#aa0000"), std::string::npos);
    EXPECT_NE(svg, emit_svg(e1_23()));
}

TEST(EmitJson, RoundTrip) {
    int generated = 0;
    for (int n = 1; n <= 3 && generated < 20; ++n)
        for (int p = 1; p <= 5 && generated < 20; ++p)
            for (int q = 1; q <= 5 && generated < 20; ++q) {
                if (std::gcd(p, q) != 1) continue;
                const BLFDiagram d = build_blf({n, p, q, (p + q) % 2 ? std::optional<int>(5 * p + q) : std::nullopt});
                const std::string text = emit_json(d);
                const BLFDiagram back = parse_blf_json(text);
                ASSERT_EQ(back, d) << n << " " << p << " " << q;
                ASSERT_EQ(emit_json(back), text);
                ++generated;
            }
    EXPECT_EQ(generated, 20);
}

TEST(EmitJson, EmptyGroupsAndStability) {
    const std::string text = emit_json(build_blf({1, 1, 1, std::nullopt}));
    EXPECT_EQ(occurrences(text, "\"fold_circles\": []"), 2u);
    EXPECT_EQ(text, emit_json(build_blf({1, 1, 1, std::nullopt})));
    EXPECT_THROW(parse_blf_json("{not json"), std::exception);
}

TEST(CanonicalDump, Formatting) {
    const json j = {{"b", 1}, {"a", 0.5}, {"c", {1, 2, 3}}, {"d", 2.0}, {"e", json::array()}};
    EXPECT_EQ(canonical_dump(j), "{\n  \"a\": 0.5,\n  \"b\": 1,\n  \"c\": [1, 2, 3],\n  \"d\": 2.0,\n  \"e\": []\n}\n");
    EXPECT_EQ(canonical_dump(json(0.1)), "0.10000000000000001\n");
}
