#pragma once

#include "fibre/blf.hpp"
#include "fibre/fiber_tracer.hpp"
#include "fibre/grid.hpp"
#include "fibre/handle_complex.hpp"
#include "fibre/model_maps.hpp"
#include "fibre/singularities.hpp"
#include "fibre/surgery.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace fibre {

using json = nlohmann::json;

/// Sorted keys, two-space indent, scalar arrays on one line, reals with 17
/// significant digits (always carrying a decimal point or exponent).
std::string canonical_dump(const json& value);

void to_json(json& j, const SurgeryData& d);
void to_json(json& j, const GluingMatrix& m);
void to_json(json& j, const HomologyClass& h);
void to_json(json& j, const MapId& map);
void to_json(json& j, const GridSpec& grid);
void to_json(json& j, const SingularityReport& report);
void to_json(json& j, const FiberStats& stats);
void to_json(json& j, const ValidationReport& report);
void to_json(json& j, const MovieChart& chart);

void to_json(json& j, const FiberComponent& c);
void from_json(const json& j, FiberComponent& c);
void to_json(json& j, const RegionFiber& f);
void from_json(const json& j, RegionFiber& f);
void to_json(json& j, const PieceComplex& c);
void from_json(const json& j, PieceComplex& c);
void to_json(json& j, const BLFDiagram& d);
void from_json(const json& j, BLFDiagram& d);

std::string emit_json(const BLFDiagram& diagram);
BLFDiagram parse_blf_json(std::string_view text);

} // namespace fibre
