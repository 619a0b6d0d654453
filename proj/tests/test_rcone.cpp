#include "doctest.h"

#include <random>

#include "valfan/rcone.hpp"

using namespace valfan;

namespace {
RatVec rv(std::vector<int> xs) {
    RatVec out;
    for (int x : xs) out.emplace_back(x);
    return out;
}
} // namespace

TEST_CASE("quadrant both ways") {
    auto c = cone_from_inequalities(2, {rv({1, 0}), rv({0, 1})});
    CHECK(c.rays == std::vector<IntVec>{{0, 1}, {1, 0}});
    CHECK(c.lines.empty());
    CHECK(c.facets == std::vector<IntVec>{{0, 1}, {1, 0}});
    CHECK(c.dim() == 2);
    CHECK(c.is_pointed());

    auto v = cone_from_rays(2, {rv({1, 0}), rv({0, 1}), rv({1, 1})});
    CHECK(v == c);
    CHECK(v.facets == c.facets);
}

TEST_CASE("lineality and equations") {
    auto axis = cone_from_inequalities(2, {rv({1, 0}), rv({-1, 0})});
    CHECK(axis.rays.empty());
    CHECK(axis.lines == std::vector<IntVec>{{0, 1}});
    CHECK(axis.equations == std::vector<IntVec>{{1, 0}});
    CHECK(axis.dim() == 1);
    CHECK_FALSE(axis.is_pointed());

    auto half = cone_from_inequalities(2, {rv({1, 0})});
    CHECK(half.lines == std::vector<IntVec>{{0, 1}});
    CHECK(half.rays == std::vector<IntVec>{{1, 0}});
    CHECK(half.facets == std::vector<IntVec>{{1, 0}});
    CHECK(half.equations.empty());
}

TEST_CASE("zero cone and full space") {
    auto zero = cone_from_rays(2, {});
    CHECK(zero.is_zero());
    CHECK(zero.dim() == 0);
    auto full = cone_from_inequalities(2, {});
    CHECK(full.lines.size() == 2);
    CHECK(full.facets.empty());
    CHECK(full.dim() == 2);
}

TEST_CASE("cone over the square has four facets") {
    auto c = cone_from_rays(3, {rv({1, 1, 1}), rv({-1, 1, 1}), rv({1, -1, 1}), rv({-1, -1, 1})});
    CHECK(c.rays.size() == 4);
    CHECK(c.facets.size() == 4);
    CHECK(c.contains(rv({0, 0, 1})));
    CHECK_FALSE(c.contains(rv({2, 0, 1})));
    CHECK_FALSE(c.contains(rv({0, 0, -1})));
}

TEST_CASE("intersect and dual") {
    auto quad = cone_from_inequalities(2, {rv({1, 0}), rv({0, 1})});
    auto lower = cone_from_inequalities(2, {rv({0, -1})});
    auto i = intersect(quad, lower);
    CHECK(i.rays == std::vector<IntVec>{{1, 0}});
    CHECK(i.dim() == 1);

    auto d = dual(quad);
    CHECK(d == quad);
    auto line = cone_from_rays(2, {}, {rv({1, 0})});
    auto dl = dual(line);
    CHECK(dl.lines == std::vector<IntVec>{{0, 1}});
    CHECK(dl.equations == std::vector<IntVec>{{1, 0}});
}

TEST_CASE("faces") {
    auto quad = cone_from_inequalities(2, {rv({1, 0}), rv({0, 1})});
    auto e1 = cone_from_rays(2, {rv({1, 0})});
    auto diag = cone_from_rays(2, {rv({1, 1})});
    auto zero = cone_from_rays(2, {});
    CHECK(is_face_of(e1, quad));
    CHECK_FALSE(is_face_of(diag, quad));
    CHECK(is_face_of(zero, quad));
    CHECK(is_face_of(quad, quad));
    auto half = cone_from_inequalities(2, {rv({1, 0})});
    CHECK_FALSE(is_face_of(zero, half)); // not pointed
    auto boundary = cone_from_rays(2, {}, {rv({0, 1})});
    CHECK(is_face_of(boundary, half));

    auto f = face_at(quad, rv({0, 1}));
    CHECK(f == e1);
}

TEST_CASE("common faces of quadrants") {
    auto q1 = cone_from_inequalities(2, {rv({1, 0}), rv({0, 1})});
    auto q2 = cone_from_inequalities(2, {rv({-1, 0}), rv({0, 1})});
    CHECK(common_face(q1, q2));
    auto shifted = cone_from_rays(2, {rv({1, 0}), rv({-1, 1})});
    CHECK_FALSE(common_face(q1, shifted)); // overlapping interiors
    CHECK(common_face(q1, q1));
}

TEST_CASE("relint point lies strictly inside facets") {
    auto c = cone_from_rays(3, {rv({1, 0, 1}), rv({0, 1, 1}), rv({-1, -1, 1})});
    RatVec p = c.relint_point();
    for (const auto& f : c.facets) CHECK(dot(to_rat(f), p) > 0);
}

TEST_CASE("double dual is the identity on random cones") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int iter = 0; iter < 60; ++iter) {
        std::size_t n = 2 + rng() % 2;
        std::vector<RatVec> rays;
        std::size_t k = 1 + rng() % 5;
        for (std::size_t i = 0; i < k; ++i) {
            RatVec r(n);
            bool zero = true;
            for (auto& x : r) {
                x = d(rng);
                if (x != 0) zero = false;
            }
            if (!zero) rays.push_back(r);
        }
        if (rays.empty()) continue;
        auto c = cone_from_rays(n, rays);
        // every input generator satisfies the H-description
        for (const auto& r : rays) CHECK(c.contains(r));
        CHECK(dual(dual(c)) == c);
        // round trip through the facet description
        auto c2 = cone_from_inequalities(
            n, [&] {
                std::vector<RatVec> fs;
                for (const auto& f : c.facets) fs.push_back(to_rat(f));
                return fs;
            }(),
            [&] {
                std::vector<RatVec> es;
                for (const auto& e : c.equations) es.push_back(to_rat(e));
                return es;
            }());
        CHECK(c2 == c);
    }
}
