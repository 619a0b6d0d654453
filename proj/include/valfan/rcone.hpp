#pragma once

#include <vector>

#include "valfan/linalg.hpp"

namespace valfan {

/// Polyhedral cone over Q with both descriptions populated:
///   {x : e.x = 0 for e in equations, f.x >= 0 for f in facets}
///   = lin(lines) + cone(rays).
/// Rays and facet normals are primitive integer vectors, sorted; lines and
/// equations are canonicalized by Hermite normal form, so equal cones have
/// identical representations.
struct RationalCone {
    std::size_t ambient = 0;
    std::vector<IntVec> rays;
    std::vector<IntVec> lines;
    std::vector<IntVec> facets;
    std::vector<IntVec> equations;

    std::size_t dim() const { return rays.empty() && lines.empty() ? 0 : ambient - equations.size(); }
    std::size_t lineality_dim() const { return lines.size(); }
    bool is_pointed() const { return lines.empty(); }
    bool is_zero() const { return rays.empty() && lines.empty(); }

    bool contains(const RatVec& x) const;
    bool contains(const RationalCone& other) const;
    bool operator==(const RationalCone& o) const {
        return rays == o.rays && lines == o.lines;
    }

    /// Sum of the extreme rays: a relative interior point (zero for {0}).
    RatVec relint_point() const;
};

RationalCone cone_from_rays(std::size_t ambient, const std::vector<RatVec>& rays,
                            const std::vector<RatVec>& lines = {});
RationalCone cone_from_inequalities(std::size_t ambient, const std::vector<RatVec>& ineqs,
                                    const std::vector<RatVec>& eqs = {});

RationalCone intersect(const RationalCone& a, const RationalCone& b);

/// Polar dual {y : y.x >= 0 for all x in c}.
RationalCone dual(const RationalCone& c);

/// The face of `c` on which the supporting functional y vanishes; requires
/// y.x >= 0 on c.
RationalCone face_at(const RationalCone& c, const RatVec& y);

/// f is a face of c: f = c cap y_perp for a functional nonnegative on c.
bool is_face_of(const RationalCone& f, const RationalCone& c);

/// a cap b is a face of both.
bool common_face(const RationalCone& a, const RationalCone& b);

/// Extreme rays and lineality basis of {x : ineq.x >= 0, eq.x = 0}.
/// Incremental double description with rank-based adjacency.
struct DDResult {
    std::vector<RatVec> rays;
    std::vector<RatVec> lines;
};
DDResult double_description(std::size_t ambient, const std::vector<RatVec>& ineqs,
                            const std::vector<RatVec>& eqs);

} // namespace valfan
