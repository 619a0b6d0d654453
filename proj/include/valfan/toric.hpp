#pragma once

#include "valfan/gamma.hpp"

namespace valfan {

/// Minimal generating set of the monoid sigma cap Z^n for a pointed
/// rational cone: lattice points of the zonotope spanned by the extreme
/// rays, reduced to the irreducible elements. Ambient dimension is capped
/// at four (throws DimensionTooLarge); throws NotValid on a non-pointed
/// input.
std::vector<IntVec> hilbert_basis(const RationalCone& sigma);

/// Generating set of D cap Z^n for an arbitrary rational cone D: a lattice
/// basis of the lineality (with both signs) plus the Hilbert basis of the
/// pointed quotient, pulled back along a unimodular change of coordinates.
std::vector<IntVec> lattice_monoid_generators(const RationalCone& d);

/// One algebra generator lambda * chi^u with v(lambda) = valuation.
struct AlgebraGenerator {
    IntVec u;
    Scalar valuation;
};

/// Presentation of the coordinate algebra of the affine piece of a cone:
/// generators grouped by vertex of the height-one slice, with the required
/// valuations -<u, w_i>. Cones at height zero get the plain monoid algebra
/// generators instead (valuation zero).
struct AlgebraPresentation {
    std::vector<ScalarVec> vertices; // of P_sigma, parallel to per_vertex
    std::vector<std::vector<AlgebraGenerator>> per_vertex;
    std::vector<AlgebraGenerator> height_zero; // only when vertices is empty
};

/// The presentation from the local cones of the slice at its vertices.
/// Requires the vertices to lie in N_Gamma (throws NotFiniteType with the
/// offending vertex in the message).
AlgebraPresentation algebra_presentation(const Cone& sigma, const ValueGroup& g);

/// A bounded face of the height-one restriction of a fan.
struct DualFace {
    std::size_t dim = 0;
    std::vector<ScalarVec> vertices; // of the slice polyhedron
    std::vector<std::size_t> subfaces; // indices of proper faces below it
};

/// The poset of bounded faces of the restriction of the fan to height one,
/// ordered by dimension then vertex list.
struct DualComplexData {
    std::vector<DualFace> faces;
};

DualComplexData dual_complex(const Fan& fan, const ValueGroup& g);

/// A maximal cone recognized as segment x torus: the affine piece is the
/// model x0*x1 - pi with v(pi) the lattice length of the segment, times a
/// split torus.
struct SegmentModel {
    Scalar length; // in Gamma
    std::size_t torus_rank = 0;
};

/// Recognize P_sigma as a Gamma-rational segment with endpoints in N_Gamma
/// (times the complementary torus factor). Absent means unknown, not a
/// negative verdict: only the segment shape is in scope.
std::optional<SegmentModel> recognize_segment_model(const Cone& sigma, const ValueGroup& g);

/// The necessary condition for semistability plus the per-maximal-cone
/// model recognition. "fails-necessary" is conclusive; "passes-necessary
/// (inconclusive)" is not a semistability proof.
struct SemistabilityReport {
    bool necessary_ok = false;
    std::string verdict; // "fails-necessary" or "passes-necessary (inconclusive)"
    std::optional<std::size_t> witness; // index of the first non-simplex face
    DualComplexData complex;
    std::vector<std::optional<SegmentModel>> models; // per maximal cone
};

SemistabilityReport semistable_necessary(const Fan& fan, const ValueGroup& g);

/// The fan of the normalization of the projective orbit-closure example:
/// one cone above all hyperplanes w_j = (gamma/r) t, and two families
/// indexed by the coordinates. Requires gamma in Gamma but outside r*Gamma
/// (throws GammaDivisible).
Fan bad_normalization_fan(std::size_t n, unsigned long r, const Scalar& gamma_elt,
                          const ValueGroup& g);

} // namespace valfan
