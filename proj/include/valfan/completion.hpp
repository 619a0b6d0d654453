#pragma once

#include <cstdint>
#include <string>

#include "valfan/polyhedra.hpp"

namespace valfan {

enum class Strategy { StarJoin, ContactFill, SliverFill };

struct EngineConfig {
    std::vector<Strategy> order{Strategy::StarJoin, Strategy::ContactFill, Strategy::SliverFill};
    std::size_t cap = 10000;      // >= 1
    bool use_ray_pool = true;     // try existing rays before synthesizing one
    std::uint64_t seed = 0x5EED;  // sampling seed for facet selection
};

/// One committed engine step; a trace replays to the same fan.
struct CompletionStep {
    std::string strategy; // "purify", "star-join", "contact-fill", "sliver-fill"
    IntVec ray;           // primitive ray added (star-join: the center)
    std::vector<RationalCone> added;
};

struct CompletionReport {
    RationalFan fan;
    std::vector<CompletionStep> trace;
    bool complete = false;
};

/// A codimension-one face belonging to exactly one maximal cone, with its
/// owner and the outward primitive normal.
struct FreeFacet {
    RationalCone facet;
    std::size_t owner = 0;
    IntVec normal;
};

/// Grow every maximal cone to full dimension, one rank at a time: pick a
/// direction off the span, push it past the separators of the other maximal
/// cones, and re-verify the fan axiom. The input is a subfan of the output.
RationalFan purify(const RationalFan& fan, std::vector<CompletionStep>* trace = nullptr);

/// All free facets of a pure full-dimensional fan. Throws NotPure.
std::vector<FreeFacet> free_facets(const RationalFan& fan);

/// One filling move at a free facet: a cone over the facet and a new ray,
/// chosen from the existing-ray pool when possible, otherwise r = p + eps*nu
/// with exact per-cone contact thresholds (contact first, then the halved
/// sliver, which is always valid).
RationalCone fill_step(const RationalFan& fan, const FreeFacet& facet, const EngineConfig& cfg,
                       std::string* strategy_used = nullptr);

/// Cones over all free facets visible from the center ray, accepted only if
/// the whole batch keeps the fan axiom. Throws NotStarShaped.
std::vector<RationalCone> star_join(const RationalFan& fan, const RatVec& center);

/// Completion engine: purify, then star-join attempts and greedy filling
/// until no free facet remains or the cap is hit. Any returned complete fan
/// has passed verify_completion; on exhaustion the partial fan and trace are
/// attached to the thrown CompletionEngineExhausted via the report output.
CompletionReport complete_rational(const RationalFan& fan, const EngineConfig& cfg = {});

/// Re-commit a trace on the input fan, verifying the fan axiom per step.
RationalFan replay(const RationalFan& fan, const std::vector<CompletionStep>& trace);

struct CompletionVerdict {
    bool ok = false;
    std::string detail;
};

/// Fan axiom on `full`, subfan containment of `sub`, and completeness.
CompletionVerdict verify_completion(const RationalFan& sub, const RationalFan& full);
CompletionVerdict verify_completion(const Fan& sub, const Fan& full);

/// A maximal cone of a fan in the plane over the scalar field: the sector
/// swept counterclockwise from ray `a` to ray `b` (angle < pi), a single ray
/// (b empty), or the zero cone (both empty). Comparisons use exact cross
/// products, so coordinates must be multipliable in the scalar field.
struct PlaneSector {
    ScalarVec a;
    ScalarVec b;
};

/// Angular-gap completion in the plane: circular sort of the boundary rays,
/// one filler sector per uncovered gap, gaps of angle >= pi split by an
/// intermediate rational ray. Output covers the plane; rational input gives
/// rational fillers.
std::vector<PlaneSector> complete_2d(const std::vector<PlaneSector>& sectors);

} // namespace valfan
