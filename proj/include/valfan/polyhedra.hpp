#pragma once

#include <optional>
#include <vector>

#include "valfan/rcone.hpp"

namespace valfan {

/// The condition <u,w> + c*t >= 0 on points (w,t) of N x R; equivalently
/// <u,w> >= -c on the slice t = 1. u is rational, c lives in the scalar
/// field, matching functionals (u,gamma) in M x QGamma.
struct HomFunctional {
    RatVec u;
    Scalar c;
    Scalar eval(const ScalarVec& w, const Rat& t) const { return dot(u, w) + Rat(t) * c; }
    Scalar eval_height0(const RatVec& w) const { return Scalar(dot(u, w)); }
    bool operator==(const HomFunctional& o) const { return u == o.u && c == o.c; }
};

bool scalar_vec_less(const ScalarVec& a, const ScalarVec& b);

/// A cone in N_R x R>=0 cut out by functionals with rational u-part. Both
/// descriptions are kept: the facet/equation H-form and the V-form given by
/// the vertices of P = cone cap (N x {1}) together with the rational cone
/// at height zero (the recession fan of P when the cone meets height one).
class Cone {
  public:
    Cone() = default;
    static Cone from_hrep(std::size_t n, std::vector<HomFunctional> ineqs);
    /// Embed a rational cone of N_R at height zero.
    static Cone at_height0(const RationalCone& base);
    /// Cone over P x {1}: conv(vertices) + the given recession cone.
    static Cone from_vertices(std::size_t n, std::vector<ScalarVec> vertices,
                              const RationalCone& recession);

    std::size_t n() const { return n_; }          // ambient is n+1
    const std::vector<HomFunctional>& facets() const { return facets_; }
    const std::vector<HomFunctional>& equations() const { return equations_; }
    const std::vector<ScalarVec>& vertices() const { return vertices_; }
    const RationalCone& height0() const { return height0_; }

    bool meets_height1() const { return !vertices_.empty(); }
    bool is_zero() const { return vertices_.empty() && height0_.is_zero(); }
    std::size_t dim() const { return dim_; }
    bool pointed() const { return pointed_; }

    bool contains(const ScalarVec& w, const Rat& t) const;
    bool contains(const Cone& other) const;
    bool operator==(const Cone& o) const;
    bool operator!=(const Cone& o) const { return !(*this == o); }

  private:
    std::size_t n_ = 0;
    std::vector<HomFunctional> facets_;    // irredundant, facet-defining
    std::vector<HomFunctional> equations_; // tight on the whole cone
    std::vector<ScalarVec> vertices_;      // sorted; reps mod lineality
    RationalCone height0_;
    std::size_t dim_ = 0;
    bool pointed_ = true;
};

Cone intersect(const Cone& a, const Cone& b);

/// f = c cap y_perp for a functional y nonnegative on c. is_face({0}, c)
/// reduces to pointedness of c.
bool is_face(const Cone& f, const Cone& c);

/// intersect(a,b) is a face of both.
bool common_face_test(const Cone& a, const Cone& b);

/// Codimension-one faces of c, deduplicated.
std::vector<Cone> proper_facets(const Cone& c);

/// Full face closure of c, including c itself and the minimal face.
std::vector<Cone> face_closure(const Cone& c);

/// Fan in N_R x R>=0: maximal cones pairwise intersecting in common faces,
/// stored with the full face closure.
class Fan {
  public:
    Fan() = default;
    /// Checks the fan axiom pairwise; throws NotPairwiseFaces.
    static Fan from_max(std::size_t n, std::vector<Cone> max_cones);

    std::size_t n() const { return n_; }
    const std::vector<Cone>& max_cones() const { return max_; }
    const std::vector<Cone>& cones() const { return all_; }

    /// A maximal cone containing (w,t), if any.
    const Cone* locate(const ScalarVec& w, const Rat& t) const;

  private:
    std::size_t n_ = 0;
    std::vector<Cone> max_;
    std::vector<Cone> all_;
};

/// Rational fan in R^ambient (the lifted world of the noetherian reduction).
struct RationalFan {
    std::size_t ambient = 0;
    std::vector<RationalCone> max;
    std::vector<RationalCone> all; // face closure

    const RationalCone* locate(const RatVec& x) const;
};
RationalFan rational_fan_from_max(std::size_t ambient, std::vector<RationalCone> max_cones);
std::vector<RationalCone> rational_face_closure(const RationalCone& c);
std::vector<RationalCone> rational_proper_facets(const RationalCone& c);

struct CompletenessReport {
    bool complete = false;
    std::string detail; // free facet or uncovered direction on failure
};
/// Wall test and seeded sampling test, both required.
CompletenessReport is_complete(const Fan& fan);
CompletenessReport is_complete(const RationalFan& fan);

/// Affine inequality <u,x> >= b.
struct AffIneq {
    RatVec u;
    Scalar b;
};

/// Polyhedron in N_R, carried as its homogenization.
class Polyhedron {
  public:
    Polyhedron() = default;
    static Polyhedron from_hrep(std::size_t n, const std::vector<AffIneq>& ineqs);
    static Polyhedron slice_of(const Cone& hom); // cone cap (N x {1})

    std::size_t n() const { return hom_.n(); }
    bool is_empty() const { return empty_; }
    const Cone& homogenization() const { return hom_; }
    const std::vector<ScalarVec>& vertices() const { return hom_.vertices(); }
    const RationalCone& recession() const { return hom_.height0(); }
    std::size_t dim() const;
    bool contains(const ScalarVec& x) const { return hom_.contains(x, Rat(1)); }
    bool is_bounded() const { return recession().is_zero(); }

  private:
    Cone hom_;
    bool empty_ = true;
};

/// The unique edge of a two-dimensional polyhedron through a boundary point.
/// Throws NotOnBoundary / NonUnique (the point is a vertex). Returned as the
/// pair of homogenized edge generators: endpoints (v,1) or rays (r,0).
struct Edge {
    std::optional<ScalarVec> a; // vertex endpoints at height 1
    std::optional<ScalarVec> b;
    std::vector<IntVec> rays;   // unbounded directions
};
Edge boundary_edge_through(const Polyhedron& p, const ScalarVec& x);

struct FarkasCertificate {
    ScalarVec multipliers; // rational entries for the rational variant
    RatVec combined_u;
    Scalar combined_a;
};

/// NotValid carrying a point of P violating the queried inequality.
struct NotValidError : NotValid {
    ScalarVec witness;
    explicit NotValidError(ScalarVec w) : NotValid("inequality not valid on P"), witness(std::move(w)) {}
};

/// Multipliers c_i >= 0 with sum c_i u_i = u0 and sum c_i a_i >= a0, proving
/// <u0,x> >= a0 on P = {x : <u_i,x> >= a_i}. Direct LP-duality route; the
/// u_i must have rational entries (scalar u-parts never reach this in the
/// pipeline and would need scalar products).
FarkasCertificate farkas_classical(const std::vector<AffIneq>& constraints, const RatVec& u0,
                                   const Scalar& a0);

/// Same statement, but the multipliers are produced rational: minimize u0
/// over P, take the active set at the optimum, then solve the pure-rational
/// conic feasibility problem on the active u_i.
FarkasCertificate farkas_rational(const std::vector<AffIneq>& constraints, const RatVec& u0,
                                  const Scalar& a0);

/// A point of P with coordinates in the span of the defining data: rational
/// constraints give a rational point. Throws EmptyPolyhedron.
ScalarVec rational_point(const std::vector<AffIneq>& constraints, std::size_t n);

/// A rational cone sigma with w in sigma, sigma inside {u >= 0}, and
/// sigma cap u_perp = {0}; built from a rational interval box around w/<u,w>
/// in a basis extending u. Throws NotInteriorSide when <u,w> <= 0.
RationalCone thin_rational_cone(const IntVec& u, const ScalarVec& w);

/// Rational coordinates of s over a Q-linearly independent scalar basis, or
/// nullopt when s is outside the Q-span.
std::optional<RatVec> qgamma_coords(const Scalar& s, const ScalarVec& basis);

/// Separating functional of Lemma 2.7 type: y with sigma in y^wedge, tau in
/// (-y)^wedge and sigma cap y_perp = sigma cap tau = tau cap y_perp. The
/// gamma basis supplies the value-group elements used in the mixed case.
HomFunctional separate(const Cone& sigma, const Cone& tau, const ScalarVec& gamma_basis);

/// Pullback of a rational fan in N x R^k along t -> t*gamma_bar, plus the
/// height-zero slices; certified to be a fan.
Fan pullback(const RationalFan& fan, const ScalarVec& gamma_bar);

/// Cones meeting height one yield their slices; pure height-zero cones are
/// reported separately.
struct Dehomogenized {
    std::vector<Polyhedron> max_polyhedra;
    std::vector<RationalCone> height0_max;
};
Dehomogenized dehomogenize(const Fan& fan);
Cone homogenize(const Polyhedron& p);

} // namespace valfan
