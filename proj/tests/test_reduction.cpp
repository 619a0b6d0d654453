#include "doctest.h"

#include <random>

#include "valfan/fixtures.hpp"
#include "valfan/reduction.hpp"

using namespace valfan;

namespace {

RatVec rv(std::vector<int> xs) {
    RatVec out;
    for (int x : xs) out.emplace_back(x);
    return out;
}

bool height0_only(const RationalCone& c, std::size_t n) {
    for (const auto& r : c.rays)
        for (std::size_t j = n; j < c.ambient; ++j)
            if (r[j] != 0) return false;
    for (const auto& l : c.lines)
        for (std::size_t j = n; j < c.ambient; ++j)
            if (l[j] != 0) return false;
    return true;
}

} // namespace

TEST_CASE("tilde expands offsets over the gamma basis") {
    auto d = fixtures::dart();
    HomFunctional y{rv({1, 0}), Rat(3) * d.alpha};
    auto t = tilde(y, d.gamma);
    CHECK(t.u == rv({1, 0}));
    CHECK(t.f == rv({3, 0}));
    CHECK(tilde({rv({2, -1}), Scalar(0)}, d.gamma).f == rv({0, 0}));
    CHECK_THROWS_AS(tilde({rv({1, 0}), Scalar(1)}, d.gamma), NotInQGamma);

    // evaluating the expansion at (w, t*gamma_bar) recovers the original
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> dist(-5, 5);
    HomFunctional y2{rv({2, 3}), Rat(2) * d.alpha - Rat(5) * d.beta};
    auto t2 = tilde(y2, d.gamma);
    for (int iter = 0; iter < 25; ++iter) {
        ScalarVec w{Scalar(dist(rng)), Scalar(dist(rng))};
        Rat tt(std::abs(dist(rng)));
        Scalar lifted = dot(t2.u, w);
        for (std::size_t l = 0; l < 2; ++l) lifted += (t2.f[l] * tt) * d.gamma.basis()[l];
        CHECK(lifted == y2.eval(w, tt));
    }
}

TEST_CASE("lift cone") {
    auto d = fixtures::dart();
    auto orthant = cone_from_inequalities(2, {rv({1, 0}), rv({0, 1})});

    // empty L gives the full preimage of B
    auto c = lift_cone(1, {}, orthant, d.gamma);
    CHECK(c.lines == std::vector<IntVec>{{1, 0, 0}});
    CHECK(c.facets == std::vector<IntVec>{{0, 0, 1}, {0, 1, 0}});

    // the band B of the worked dart lift reproduces its first maximal cone
    auto band = cone_from_inequalities(2, {rv({-1, 2}), rv({2, -1})});
    std::vector<HomFunctional> l1 = {{rv({1, 0}), Rat(3) * d.alpha},
                                     {rv({-1, 0}), Scalar(0)},
                                     {rv({0, 1}), Scalar(0)},
                                     {rv({0, -1}), Scalar(0)}};
    auto s1 = lift_cone(2, l1, band, d.gamma);
    CHECK(s1 == fixtures::dart_lift().max[0]);

    CHECK_THROWS_AS(
        lift_cone(2, l1, cone_from_inequalities(2, {rv({-1, 0})}), d.gamma), GammaBarNotInB);
}

TEST_CASE("extend inclusion") {
    auto d = fixtures::dart();
    std::vector<HomFunctional> L = {{rv({1}), d.alpha}, {rv({-1}), Rat(2) * d.beta}};

    // a facet of L^vee gets zero slack
    auto r0 = extend_inclusion(1, L, L[0], d.gamma);
    CHECK(r0.f == rv({0, 0}));
    // sums of facets are tight at a common point
    HomFunctional sum{rv({0}), d.alpha + Rat(2) * d.beta};
    CHECK(extend_inclusion(1, L, sum, d.gamma).f == rv({0, 0}));
    // genuine slack shows up in f
    HomFunctional loose{rv({1}), Rat(2) * d.alpha};
    auto rl = extend_inclusion(1, L, loose, d.gamma);
    // slack (2a) - (a) at the tight vertex -a
    CHECK(rl.f == rv({1, 0}));

    CHECK_THROWS_AS(extend_inclusion(1, L, {rv({1}), Scalar(0)}, d.gamma), NotIncluded);
    std::vector<HomFunctional> h0 = {{rv({0}), Scalar(-1)}};
    CHECK_THROWS_AS(extend_inclusion(1, h0, L[0], d.gamma), HeightZeroOnly);
}

TEST_CASE("case 1 constraint cone on the dart") {
    auto d = fixtures::dart();
    const auto& max = d.fan.max_cones();
    const Cone &s1 = max[0], &s2 = max[1];
    auto pres = [](const Cone& c) {
        std::vector<HomFunctional> out;
        for (const auto& f : c.facets())
            if (!(is_zero(f.u) && f.c.is_rational())) out.push_back(f);
        for (const auto& e : c.equations()) {
            out.push_back(e);
            HomFunctional neg{e.u, -e.c};
            for (auto& x : neg.u) x = -x;
            out.push_back(neg);
        }
        return out;
    };
    HomFunctional y0 = separate(s1, s2, d.gamma.basis());
    auto b12 = b_cone_case1(s1, s2, pres(s1), pres(s2), y0, d.gamma);
    // any strongly convex refinement of B keeps the lifts glued along a face
    auto b = intersect(b12, thin_rational_cone(IntVec{1, 1}, d.gamma.basis()));
    auto c1 = lift_cone(2, pres(s1), b, d.gamma);
    auto c2 = lift_cone(2, pres(s2), b, d.gamma);
    CHECK(common_face(c1, c2));
}

TEST_CASE("case 2 constraint cone for disjoint intervals") {
    auto d = fixtures::dart();
    const Scalar& a = d.alpha;
    std::vector<HomFunctional> ls = {{rv({1}), Scalar(0)}, {rv({-1}), a}};
    std::vector<HomFunctional> lt = {{rv({1}), Rat(-2) * a}, {rv({-1}), Rat(3) * a}};
    Cone s = Cone::from_hrep(1, ls);
    Cone t = Cone::from_hrep(1, lt);
    HomFunctional y0{rv({-2}), Rat(3) * a}; // midline separator, margin alpha
    auto b2 = b_cone_case2(s, t, ls, lt, y0, d.gamma);
    auto c1 = lift_cone(1, ls, b2, d.gamma);
    auto c2 = lift_cone(1, lt, b2, d.gamma);
    // the lifts only meet at height zero, in a common face
    auto meet = intersect(c1, c2);
    CHECK(height0_only(meet, 1));
    CHECK(common_face(c1, c2));

    CHECK_THROWS_AS(b_cone_case2(s, s, ls, ls, HomFunctional{rv({0}), Scalar(0)}, d.gamma),
                    NonPositiveMargin);
}

TEST_CASE("thicken height zero") {
    auto d = fixtures::dart();
    // no height-zero maximal cones: identity
    Fan same = thicken_height_zero(d.fan, d.gamma);
    CHECK(same.max_cones().size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(same.max_cones()[i] == d.fan.max_cones()[i]);

    // a lone ray at height zero becomes its product with the height axis
    Fan ray = Fan::from_max(2, {Cone::at_height0(cone_from_rays(2, {rv({1, 0})}))});
    Fan thick = thicken_height_zero(ray, d.gamma);
    Cone expected = Cone::from_hrep(2, {{rv({1, 0}), Scalar(0)},
                                        {rv({0, 1}), Scalar(0)},
                                        {rv({0, -1}), Scalar(0)}});
    CHECK(thick.max_cones().size() == 1);
    CHECK(thick.max_cones()[0] == expected);

    // a height-zero ray next to a height-one cone
    Cone bounded = Cone::from_hrep(1, {{rv({1}), Scalar(0)}, {rv({-1}), d.alpha}});
    Fan squeezed = Fan::from_max(1, {bounded, Cone::at_height0(cone_from_rays(1, {rv({-1})}))});
    Fan out = thicken_height_zero(squeezed, d.gamma);
    CHECK(out.max_cones().size() == 2);
    for (const auto& c : out.max_cones()) CHECK(c.meets_height1());
    // the original cones survive as faces
    for (const auto& c : squeezed.max_cones()) {
        bool found = false;
        for (const auto& f : out.cones())
            if (f == c) found = true;
        CHECK(found);
    }
}

TEST_CASE("reduce the model interval") {
    auto d = fixtures::dart();
    auto g1 = ValueGroup::make({d.alpha});
    Fan model = Fan::from_max(1, {fixtures::model_cone(1, 1, d.alpha)});
    auto r = reduce(model, g1);
    CHECK(r.k == 1);
    REQUIRE(r.lifted.max.size() == 1);
    // the lift is the cone {0 <= w <= a} over the positive a-axis
    CHECK(r.lifted.max[0].contains(rv({0, 1})));
    CHECK(r.lifted.max[0].contains(rv({1, 1})));
    CHECK_FALSE(r.lifted.max[0].contains(rv({2, 1})));
    CHECK(r.correspondence == std::vector<std::size_t>{0});
}

TEST_CASE("reduce the dart") {
    auto d = fixtures::dart();
    auto r = reduce(d.fan, d.gamma);
    CHECK(r.k == 2);
    CHECK(r.lifted.ambient == 4);
    CHECK(r.lifted.max.size() == 4);
    CHECK(r.correspondence.size() == 4);
    // pullback equality is asserted inside reduce; spot-check correspondence
    for (std::size_t i = 0; i < 4; ++i) {
        Cone back = cone_pullback(r.lifted.max[r.correspondence[i]], 2, d.gamma);
        CHECK(back == d.fan.max_cones()[i]);
    }
    CHECK(r.b.is_pointed());
}

TEST_CASE("complete admissible fans") {
    auto d = fixtures::dart();

    SUBCASE("already complete: identity") {
        Fan halves = Fan::from_max(1, {Cone::from_hrep(1, {{rv({1}), Scalar(0)}}),
                                       Cone::from_hrep(1, {{rv({-1}), Scalar(0)}})});
        REQUIRE(is_complete(halves).complete);
        Fan out = complete_admissible(halves, ValueGroup::make({d.alpha}));
        CHECK(out.max_cones().size() == 2);
    }

    SUBCASE("one bounded interval in 1D") {
        auto g1 = ValueGroup::make({d.alpha});
        Fan model = Fan::from_max(1, {fixtures::model_cone(1, 1, d.alpha)});
        Fan out = complete_admissible(model, g1);
        CHECK(is_complete(out).complete);
        CHECK(is_admissible_fan(out, g1).verdict);
        bool kept = false;
        for (const auto& c : out.cones())
            if (c == model.max_cones()[0]) kept = true;
        CHECK(kept);
    }

    SUBCASE("the dart") {
        Fan out = complete_admissible(d.fan, d.gamma);
        CHECK(is_complete(out).complete);
        CHECK(is_admissible_fan(out, d.gamma).verdict);
        for (const auto& c : d.fan.max_cones()) {
            bool kept = false;
            for (const auto& f : out.cones())
                if (f == c) kept = true;
            CHECK(kept);
        }
    }
}

TEST_CASE("reduce the zero fan") {
    auto d = fixtures::dart();
    Fan zero = Fan::from_max(2, {Cone::at_height0(cone_from_rays(2, {}))});
    auto r = reduce(zero, d.gamma);
    REQUIRE(!r.lifted.max.empty());
    // every kept lift pulls back to the zero cone
    for (const auto& c : r.lifted.max) {
        CHECK(c.ambient == 4);
        CHECK(cone_pullback(c, 2, d.gamma).is_zero());
    }
}
