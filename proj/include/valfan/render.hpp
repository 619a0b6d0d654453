#pragma once

#include <string>

#include "valfan/polyhedra.hpp"

namespace valfan {

/// Deterministic SVG of the height-one restriction of a fan: edges of the
/// polyhedral complex, labeled vertices (symbolic expressions), unbounded
/// directions clipped at the frame. Placement uses the sign oracle's
/// enclosures at the given refinement depth; coordinates beyond the plane
/// are projected (n = 3 wireframe), higher n throws DimensionTooLarge.
std::string render_svg(const Fan& fan, int depth);

} // namespace valfan
