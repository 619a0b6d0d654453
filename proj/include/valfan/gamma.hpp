#pragma once

#include "valfan/polyhedra.hpp"

namespace valfan {

/// A finitely generated value group Gamma <= (ground field, +), presented by
/// a Z-basis gamma_1..gamma_k of Q-linearly independent positive-rank scalars.
class ValueGroup {
  public:
    /// Validates Q-linear independence of the basis; throws TrivialGamma on
    /// an empty or dependent basis.
    static ValueGroup make(ScalarVec basis);

    const ScalarVec& basis() const { return basis_; }
    std::size_t rank() const { return basis_.size(); }
    /// Rank-one value groups are discrete up to scaling.
    bool is_discrete() const { return basis_.size() == 1; }

  private:
    ScalarVec basis_;
};

/// Integer coordinates n with s = sum n_i gamma_i, or nullopt when s is
/// outside Gamma (including the case s in QGamma \ Gamma).
std::optional<IntVec> gamma_membership(const Scalar& s, const ValueGroup& g);

/// One entry per defining functional of a cone: the gamma-coordinates of its
/// offset when the offset lies in QGamma.
struct FunctionalEvidence {
    HomFunctional f;
    std::optional<RatVec> offset_coords; // over g.basis(); nullopt = failure
    bool exempt = false;                 // the ambient t >= 0 facet
};

struct AdmissibilityReport {
    bool verdict = false;
    bool pointed = false;
    bool in_half_space = true; // by construction of Cone
    std::vector<FunctionalEvidence> evidence;
    std::string detail;
};

/// A cone is Gamma-admissible when it is strongly convex and cut out by
/// functionals in M x Gamma: rational u-parts (built in) and offsets in
/// QGamma. Cones inside N x {0} are admissible iff rational; irrational
/// offsets on their height functionals still fail, since those cannot be
/// scaled into M x Gamma. Throws WrongAmbient on a symbol-basis mismatch
/// between the cone data and the value group.
AdmissibilityReport is_admissible_cone(const Cone& c, const ValueGroup& g);

/// Conjunction over every cone of the fan.
AdmissibilityReport is_admissible_fan(const Fan& fan, const ValueGroup& g);

struct FiniteTypeReport {
    bool verdict = false;
    std::vector<ScalarVec> witnesses; // vertices with a coordinate outside N_Gamma
};

/// For non-discrete Gamma: every vertex of every slice P_sigma must lie in
/// N_Gamma. Discrete value groups always give finite type (Gordan).
FiniteTypeReport finite_type(const Fan& fan, const ValueGroup& g);

struct ExtensionResult {
    ValueGroup group; // Gamma' = Gamma + Z{vertex coordinates}
    Int index;        // [Gamma' : Gamma]
};

/// The minimal extension of Gamma over which every vertex of the fan lands
/// in N_Gamma'; computed as a lattice saturation by Hermite normal form,
/// with the index as a determinant ratio. Requires all vertex coordinates
/// in QGamma (throws NotInQGamma).
ExtensionResult minimal_extension(const Fan& fan, const ValueGroup& g);

} // namespace valfan
