#include "doctest.h"

#include <map>

#include "valfan/fixtures.hpp"
#include "valfan/reduction.hpp"
#include "valfan/toric.hpp"

using namespace valfan;

namespace {

RatVec rv(std::vector<int> xs) {
    RatVec out;
    for (int x : xs) out.emplace_back(x);
    return out;
}

IntVec iv(std::vector<int> xs) {
    IntVec out;
    for (int x : xs) out.emplace_back(x);
    return out;
}

/// Brute-force oracle: all nonnegative integer combinations of gens whose
/// partial sums stay inside the working box, by fixed-point closure.
std::map<IntVec, bool> reachable(const std::vector<IntVec>& gens, int work_bound) {
    std::map<IntVec, bool> seen;
    if (gens.empty()) return seen;
    std::size_t n = gens[0].size();
    std::vector<IntVec> frontier{IntVec(n, 0)};
    seen[frontier[0]] = true;
    while (!frontier.empty()) {
        IntVec x = frontier.back();
        frontier.pop_back();
        for (const auto& g : gens) {
            IntVec next(n);
            bool inside = true;
            for (std::size_t j = 0; j < n; ++j) {
                next[j] = x[j] + g[j];
                if (next[j] > work_bound || next[j] < -work_bound) inside = false;
            }
            if (inside && !seen.count(next)) {
                seen[next] = true;
                frontier.push_back(next);
            }
        }
    }
    return seen;
}

bool generated_by(const std::vector<IntVec>& gens, const IntVec& x, int work_bound) {
    return reachable(gens, work_bound).count(x) > 0;
}

/// Every lattice point of sigma in the box [-bound, bound]^n is generated.
bool basis_generates(const RationalCone& sigma, const std::vector<IntVec>& gens, int bound) {
    std::size_t n = sigma.ambient;
    auto seen = reachable(gens, 4 * bound);
    std::vector<Int> idx(n, -bound);
    for (;;) {
        IntVec x(idx.begin(), idx.end());
        if (sigma.contains(to_rat(x)) && !seen.count(x)) return false;
        std::size_t j = 0;
        while (j < n && idx[j] == bound) idx[j++] = -bound;
        if (j == n) return true;
        ++idx[j];
    }
}

} // namespace

TEST_CASE("hilbert basis") {
    auto hb2 = hilbert_basis(cone_from_rays(2, {rv({1, 0}), rv({0, 1})}));
    CHECK(hb2 == std::vector<IntVec>{iv({0, 1}), iv({1, 0})});

    auto slanted = hilbert_basis(cone_from_rays(2, {rv({1, 0}), rv({1, 2})}));
    CHECK(slanted == std::vector<IntVec>{iv({1, 0}), iv({1, 1}), iv({1, 2})});

    for (int k = 1; k <= 5; ++k) {
        auto c = cone_from_rays(2, {rv({1, 0}), rv({1, k})});
        auto hb = hilbert_basis(c);
        CHECK(hb.size() == static_cast<std::size_t>(k) + 1);
        CHECK(basis_generates(c, hb, 6));
        // minimality: no element is generated by the others
        for (std::size_t i = 0; i < hb.size(); ++i) {
            std::vector<IntVec> rest = hb;
            rest.erase(rest.begin() + static_cast<long>(i));
            CHECK_FALSE(generated_by(rest, hb[i], 24));
        }
    }

    auto deep = hilbert_basis(cone_from_rays(3, {rv({1, 0, 0}), rv({1, 2, 0}), rv({1, 1, 3})}));
    CHECK(basis_generates(cone_from_rays(3, {rv({1, 0, 0}), rv({1, 2, 0}), rv({1, 1, 3})}), deep, 4));

    CHECK_THROWS_AS(
        hilbert_basis(cone_from_rays(5, {rv({1, 0, 0, 0, 0})})), DimensionTooLarge);
    CHECK_THROWS_AS(
        hilbert_basis(cone_from_rays(2, {rv({1, 0})}, {rv({0, 1})})), NotValid);
}

TEST_CASE("monoid generators with lineality") {
    // dual of a ray: a half-plane
    auto half = dual(cone_from_rays(2, {rv({-1, 0})}));
    auto gens = lattice_monoid_generators(half);
    CHECK(gens.size() == 3);
    CHECK(basis_generates(half, gens, 4));
}

TEST_CASE("algebra presentation of the model interval") {
    auto d = fixtures::dart();
    auto g1 = ValueGroup::make({d.alpha});
    Cone model = fixtures::model_cone(1, 1, d.alpha);
    auto p = algebra_presentation(model, g1);
    REQUIRE(p.vertices.size() == 2);
    // chi^1 with valuation 0 at the origin, chi^-1 with valuation alpha at
    // the far endpoint
    for (std::size_t i = 0; i < 2; ++i) {
        REQUIRE(p.per_vertex[i].size() == 1);
        const auto& gen = p.per_vertex[i][0];
        if (sign(p.vertices[i][0]) == 0) {
            CHECK(gen.u == iv({1}));
            CHECK(gen.valuation == Scalar(0));
        } else {
            CHECK(gen.u == iv({-1}));
            CHECK(gen.valuation == d.alpha);
        }
    }
}

TEST_CASE("algebra presentation edge cases") {
    auto d = fixtures::dart();
    auto g1 = ValueGroup::make({d.alpha});

    // homogenized half-line: single generator chi^1, valuation 0
    Cone half = Cone::from_hrep(1, {{rv({1}), Scalar(0)}});
    auto p = algebra_presentation(half, g1);
    REQUIRE(p.vertices.size() == 1);
    REQUIRE(p.per_vertex[0].size() == 1);
    CHECK(p.per_vertex[0][0].u == iv({1}));
    CHECK(p.per_vertex[0][0].valuation == Scalar(0));

    // pure height-zero cone: plain monoid algebra
    Cone h0 = Cone::at_height0(cone_from_rays(1, {rv({1})}));
    auto p0 = algebra_presentation(h0, g1);
    CHECK(p0.vertices.empty());
    REQUIRE(p0.height_zero.size() == 1);
    CHECK(p0.height_zero[0].u == iv({1}));

    // a vertex outside N_Gamma is rejected
    auto bn = fixtures::badnorm(1, 2);
    CHECK_THROWS_AS(algebra_presentation(bn.fan.max_cones()[0], bn.gamma), NotFiniteType);
}

TEST_CASE("segment cones present as the two-variable model times a torus") {
    auto d = fixtures::dart();
    for (const auto& sigma : d.fan.max_cones()) {
        auto p = algebra_presentation(sigma, d.gamma);
        REQUIRE(p.vertices.size() == 2);
        // x0, x1 and the unit x2^{+-1}: three generators per vertex
        for (const auto& gens : p.per_vertex) CHECK(gens.size() == 3);
        // soundness: <u,w> + t*val >= 0 on the cone generators
        for (std::size_t i = 0; i < p.vertices.size(); ++i)
            for (const auto& gen : p.per_vertex[i]) {
                for (const auto& w : sigma.vertices())
                    CHECK(sign(dot(to_rat(gen.u), w) + gen.valuation) >= 0);
                for (const auto& r : sigma.height0().rays)
                    CHECK(dot(to_rat(gen.u), to_rat(r)) >= 0);
            }
    }
}

TEST_CASE("dual complex") {
    auto d = fixtures::dart();
    auto dc = dual_complex(d.fan, d.gamma);
    std::size_t edges = 0, verts = 0;
    for (const auto& f : dc.faces) {
        if (f.dim == 1) ++edges;
        if (f.dim == 0) ++verts;
        if (f.dim == 1) CHECK(f.subfaces.size() == 2);
    }
    CHECK(edges == 4);
    CHECK(verts == 4);
    CHECK(dc.faces.size() == 8);

    auto g1 = ValueGroup::make({d.alpha});
    Fan model = Fan::from_max(1, {fixtures::model_cone(1, 1, d.alpha)});
    auto mc = dual_complex(model, g1);
    std::size_t segs = 0;
    for (const auto& f : mc.faces)
        if (f.dim == 1) ++segs;
    CHECK(segs == 1);

    Fan flat = Fan::from_max(1, {Cone::at_height0(cone_from_rays(1, {rv({1})}))});
    CHECK(dual_complex(flat, g1).faces.empty());
}

TEST_CASE("segment model recognition") {
    auto d = fixtures::dart();
    // all four dart cones are segments with endpoints in N_Gamma
    std::vector<Scalar> expected = {Rat(3) * d.alpha, Rat(3) * d.beta,
                                    d.alpha + Rat(2) * d.beta, Rat(2) * d.alpha + d.beta};
    for (std::size_t i = 0; i < 4; ++i) {
        auto m = recognize_segment_model(d.fan.max_cones()[i], d.gamma);
        REQUIRE(m.has_value());
        CHECK(m->torus_rank == 1);
        bool matches = false;
        for (const auto& len : expected)
            if (m->length == len) matches = true;
        CHECK(matches);
    }

    // 1D model cone: length gamma, no torus factor
    auto g1 = ValueGroup::make({d.alpha});
    auto m1 = recognize_segment_model(fixtures::model_cone(1, 1, d.alpha), g1);
    REQUIRE(m1.has_value());
    CHECK(m1->length == d.alpha);
    CHECK(m1->torus_rank == 0);

    // a triangle slice is not in scope
    Cone tri = Cone::from_hrep(2, {{rv({1, 0}), Scalar(0)},
                                   {rv({0, 1}), Scalar(0)},
                                   {rv({-1, -1}), d.alpha}});
    CHECK_FALSE(recognize_segment_model(tri, d.gamma).has_value());
}

TEST_CASE("semistability necessary condition") {
    auto d = fixtures::dart();
    auto rep = semistable_necessary(d.fan, d.gamma);
    CHECK(rep.necessary_ok);
    CHECK(rep.verdict == "passes-necessary (inconclusive)");
    for (const auto& m : rep.models) CHECK(m.has_value());

    // the explicit completion has quadrilateral bounded faces
    auto full = semistable_necessary(fixtures::dart_completion(d), d.gamma);
    CHECK_FALSE(full.necessary_ok);
    CHECK(full.verdict == "fails-necessary");
    REQUIRE(full.witness.has_value());
    const auto& quad = full.complex.faces[*full.witness];
    CHECK(quad.vertices.size() > quad.dim + 1);
}

TEST_CASE("every engine completion of the dart has a non-simplicial cone") {
    auto d = fixtures::dart();
    Fan done = complete_admissible(d.fan, d.gamma);
    auto rep = semistable_necessary(done, d.gamma);
    CHECK_FALSE(rep.necessary_ok);
    bool nonsimplicial = false;
    for (const auto& c : done.cones()) {
        std::size_t gens = c.vertices().size() + c.height0().rays.size();
        if (c.pointed() && gens > c.dim()) nonsimplicial = true;
    }
    CHECK(nonsimplicial);
}

TEST_CASE("bad normalization fan") {
    auto bn = fixtures::badnorm(1, 2);
    Fan f1 = bad_normalization_fan(1, 2, bn.gamma_elt, bn.gamma);
    CHECK(f1.max_cones().size() == 3);
    auto ft = finite_type(f1, bn.gamma);
    CHECK_FALSE(ft.verdict);
    REQUIRE(!ft.witnesses.empty());
    bool found_half = false;
    for (const auto& w : ft.witnesses)
        for (const auto& c : w)
            if (c == Rat(1, 2) * Scalar(1)) found_half = true;
    CHECK(found_half);

    Fan f2 = bad_normalization_fan(2, 2, bn.gamma_elt, bn.gamma);
    CHECK(f2.max_cones().size() == 5);
    CHECK_FALSE(finite_type(f2, bn.gamma).verdict);

    CHECK_THROWS_AS(bad_normalization_fan(1, 2, Scalar(2), bn.gamma), GammaDivisible);
}
