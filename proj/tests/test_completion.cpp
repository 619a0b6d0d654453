#include "doctest.h"

#include "valfan/completion.hpp"
#include "valfan/fixtures.hpp"
#include "valfan/reduction.hpp"

using namespace valfan;

namespace {

RatVec rv(std::vector<int> xs) {
    RatVec out;
    for (int x : xs) out.emplace_back(x);
    return out;
}

RationalCone quadrant(int sx, int sy) {
    return cone_from_rays(2, {rv({sx, 0}), rv({0, sy})});
}

bool has_ray(const RationalCone& c, std::vector<int> r) {
    IntVec want(r.begin(), r.end());
    for (const auto& x : c.rays)
        if (x == primitive(want)) return true;
    return false;
}

} // namespace

TEST_CASE("purify grows a lone ray to full dimension") {
    RationalFan fan = rational_fan_from_max(2, {cone_from_rays(2, {rv({1, 0})})});
    std::vector<CompletionStep> trace;
    RationalFan pure = purify(fan, &trace);
    REQUIRE(pure.max.size() == 1);
    CHECK(pure.max[0].dim() == 2);
    CHECK(trace.size() == 1);
    CHECK(trace[0].strategy == "purify");
    // the original ray is still a face
    bool kept = false;
    for (const auto& c : pure.all)
        if (c == fan.max[0]) kept = true;
    CHECK(kept);
}

TEST_CASE("purify keeps neighbors apart") {
    // two rays on the x-axis; each must grow without touching the other
    RationalFan fan = rational_fan_from_max(
        2, {cone_from_rays(2, {rv({1, 0})}), cone_from_rays(2, {rv({-1, 0})})});
    RationalFan pure = purify(fan);
    REQUIRE(pure.max.size() == 2);
    for (const auto& c : pure.max) CHECK(c.dim() == 2);
    auto meet = intersect(pure.max[0], pure.max[1]);
    CHECK(meet.is_zero());
}

TEST_CASE("free facets of a quadrant") {
    RationalFan fan = rational_fan_from_max(2, {quadrant(1, 1)});
    auto ffs = free_facets(fan);
    REQUIRE(ffs.size() == 2);
    for (const auto& ff : ffs) {
        CHECK(ff.owner == 0);
        CHECK(ff.facet.dim() == 1);
    }
    // a complete fan has none
    RationalFan full = rational_fan_from_max(
        2, {quadrant(1, 1), quadrant(-1, 1), quadrant(-1, -1), quadrant(1, -1)});
    CHECK(free_facets(full).empty());
    // and a non-pure fan is rejected
    RationalFan thin = rational_fan_from_max(2, {cone_from_rays(2, {rv({1, 0})})});
    CHECK_THROWS_AS(free_facets(thin), NotPure);
}

TEST_CASE("fill step with no obstruction uses the outward normal") {
    EngineConfig cfg;
    cfg.use_ray_pool = false;
    RationalFan fan = rational_fan_from_max(2, {quadrant(1, 1)});
    auto ffs = free_facets(fan);
    // the facet on the y-axis has outward normal -e1
    for (const auto& ff : ffs) {
        if (ff.normal != IntVec{-1, 0}) continue;
        std::string used;
        RationalCone tau = fill_step(fan, ff, cfg, &used);
        CHECK(has_ray(tau, {0, 1}));
        CHECK(has_ray(tau, {-1, 1}));
    }
}

TEST_CASE("fill step stops at a nearby cone") {
    // filling the gap between the first quadrant and the cone beyond x+y=0
    EngineConfig cfg;
    cfg.use_ray_pool = false;
    RationalCone left = cone_from_rays(2, {rv({-1, 1}), rv({-1, -1})});
    RationalFan fan = rational_fan_from_max(2, {quadrant(1, 1), left});
    auto ffs = free_facets(fan);
    for (const auto& ff : ffs) {
        if (ff.normal != IntVec{-1, 0}) continue;
        std::string used;
        RationalCone tau = fill_step(fan, ff, cfg, &used);
        // contact with the neighbor glues exactly at its boundary ray
        CHECK(used == "contact-fill");
        CHECK(has_ray(tau, {-1, 1}));
    }
}

TEST_CASE("sliver fallback when contact would overlap") {
    // the contact ray (-1,2,2) lands inside a facet of the blocker, so the
    // contact cone is no face-to-face fit and only the halved sliver commits
    EngineConfig cfg;
    cfg.use_ray_pool = false;
    RationalCone octant = cone_from_rays(3, {rv({1, 0, 0}), rv({0, 1, 0}), rv({0, 0, 1})});
    RationalCone blocker =
        cone_from_rays(3, {rv({-1, 1, 1}), rv({-1, 3, 1}), rv({-1, 1, 3})});
    RationalFan fan = rational_fan_from_max(3, {octant, blocker});
    auto ffs = free_facets(fan);
    bool tested = false;
    for (const auto& ff : ffs) {
        if (ff.owner != 0 || ff.normal != IntVec{-1, 0, 0}) continue;
        std::string used;
        RationalCone tau = fill_step(fan, ff, cfg, &used);
        CHECK(used == "sliver-fill");
        CHECK(has_ray(tau, {-1, 4, 4}));
        RationalFan grown = rational_fan_from_max(3, {fan.max[0], fan.max[1], tau});
        CHECK(grown.max.size() == 3);
        tested = true;
    }
    CHECK(tested);
}

TEST_CASE("star join from the opposite corner") {
    RationalFan fan = rational_fan_from_max(2, {quadrant(1, 1)});
    auto batch = star_join(fan, rv({-1, -1}));
    CHECK(batch.size() == 2);
    RationalFan full = rational_fan_from_max(2, {fan.max[0], batch[0], batch[1]});
    CHECK(is_complete(full).complete);
    // centers inside the support are rejected
    CHECK_THROWS_AS(star_join(fan, rv({1, 1})), NotStarShaped);
}

TEST_CASE("complete rational fans") {
    EngineConfig cfg;
    std::vector<RationalFan> inputs;
    inputs.push_back(rational_fan_from_max(2, {quadrant(1, 1)}));
    inputs.push_back(rational_fan_from_max(2, {quadrant(1, 1), quadrant(-1, -1)}));
    inputs.push_back(rational_fan_from_max(2, {cone_from_rays(2, {rv({2, 1})})}));
    inputs.push_back(rational_fan_from_max(1, {cone_from_rays(1, {rv({1})})}));
    inputs.push_back(rational_fan_from_max(
        3, {cone_from_rays(3, {rv({1, 0, 0}), rv({0, 1, 0}), rv({0, 0, 1})})}));
    for (const auto& fan : inputs) {
        auto report = complete_rational(fan, cfg);
        CHECK(report.complete);
        CHECK(verify_completion(fan, report.fan).ok);
        // the trace rebuilds the same fan
        RationalFan again = replay(fan, report.trace);
        CHECK(again.max.size() == report.fan.max.size());
        for (const auto& c : report.fan.max) {
            bool found = false;
            for (const auto& d : again.max)
                if (d == c) found = true;
            CHECK(found);
        }
    }
}

TEST_CASE("complete the lifted dart") {
    auto d = fixtures::dart();
    auto r = reduce(d.fan, d.gamma);
    auto report = complete_rational(r.lifted);
    CHECK(report.complete);
    CHECK(verify_completion(r.lifted, report.fan).ok);
}

TEST_CASE("verify completion rejects bad pairs") {
    RationalFan part = rational_fan_from_max(2, {quadrant(1, 1)});
    RationalFan full = rational_fan_from_max(
        2, {quadrant(1, 1), quadrant(-1, 1), quadrant(-1, -1), quadrant(1, -1)});
    CHECK(verify_completion(part, full).ok);
    // not complete
    CHECK_FALSE(verify_completion(part, part).ok);
    // input not a subfan
    RationalFan other = rational_fan_from_max(2, {cone_from_rays(2, {rv({1, 1}), rv({-1, 1})})});
    CHECK_FALSE(verify_completion(other, full).ok);
}

TEST_CASE("plane sectors over the scalar field") {
    auto d = fixtures::dart();
    Scalar a = d.alpha;
    auto s = [&](Scalar x0, Scalar y0, Scalar x1, Scalar y1) {
        return PlaneSector{{x0, y0}, {x1, y1}};
    };
    SUBCASE("zero input gives the four quadrants") {
        auto out = complete_2d({});
        CHECK(out.size() == 4);
    }
    SUBCASE("opposite quadrants") {
        auto out = complete_2d({s(Scalar(1), Scalar(0), Scalar(0), Scalar(1)),
                                s(Scalar(-1), Scalar(0), Scalar(0), Scalar(-1))});
        CHECK(out.size() == 4);
    }
    SUBCASE("an irrational sector gets closed up") {
        // sector from (1,0) to (1,a) with a = sqrt(3)
        auto out = complete_2d({s(Scalar(1), Scalar(0), Scalar(1), a)});
        CHECK(out.size() >= 3);
        // each boundary ray of each sector appears as a start exactly once
        for (std::size_t i = 0; i < out.size(); ++i) {
            std::size_t hits = 0;
            for (std::size_t j = 0; j < out.size(); ++j) {
                if (sign(out[i].b[0] * out[j].a[1] - out[i].b[1] * out[j].a[0]) == 0 &&
                    sign(out[i].b[0]) == sign(out[j].a[0]) &&
                    sign(out[i].b[1]) == sign(out[j].a[1]))
                    ++hits;
            }
            CHECK(hits == 1);
        }
    }
    SUBCASE("a single ray") {
        auto out = complete_2d({PlaneSector{{Scalar(1), a}, {}}});
        CHECK(out.size() >= 2);
    }
}
