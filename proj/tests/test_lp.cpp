#include "doctest.h"

#include <random>

#include "valfan/lp.hpp"

using namespace valfan;

namespace {
BasisPtr sqrt_basis() { return SymbolBasis::interval({"sqrt2"}, {sqrt_enclosure(2)}); }
}

TEST_CASE("axis-aligned minimum with duals") {
    // min x+y s.t. x >= 1, y >= 2
    auto r = lp_minimize({Rat(1), Rat(1)},
                         {{{Rat(1), Rat(0)}, Rel::GE, Scalar(1)},
                          {{Rat(0), Rat(1)}, Rel::GE, Scalar(2)}});
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.x[0] == Scalar(1));
    CHECK(r.x[1] == Scalar(2));
    CHECK(r.objective == Scalar(3));
    CHECK(r.dual[0] == 1);
    CHECK(r.dual[1] == 1);
}

TEST_CASE("irrational right-hand side") {
    auto b = sqrt_basis();
    Scalar r2 = Scalar::symbol(b, 0);
    auto r = lp_minimize({Rat(1)}, {{{Rat(1)}, Rel::GE, r2}});
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.x[0] == r2);

    // min x s.t. x+y = sqrt2, x-y = 0
    auto s = lp_minimize({Rat(1), Rat(0)},
                         {{{Rat(1), Rat(1)}, Rel::EQ, r2},
                          {{Rat(1), Rat(-1)}, Rel::EQ, Scalar(0)}});
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.x[0] == Rat(1, 2) * r2);
    CHECK(s.x[1] == Rat(1, 2) * r2);
}

TEST_CASE("infeasible and unbounded detection") {
    auto r = lp_minimize({Rat(0)}, {{{Rat(1)}, Rel::GE, Scalar(1)},
                                    {{Rat(-1)}, Rel::GE, Scalar(0)}});
    CHECK(r.status == LpStatus::Infeasible);

    auto u = lp_minimize({Rat(-1)}, {{{Rat(1)}, Rel::GE, Scalar(0)}});
    CHECK(u.status == LpStatus::Unbounded);
}

TEST_CASE("negative right-hand sides are handled") {
    auto b = sqrt_basis();
    Scalar r2 = Scalar::symbol(b, 0);
    // min -x s.t. -x >= -sqrt2, x >= 0  ->  x = sqrt2
    auto r = lp_minimize({Rat(-1)}, {{{Rat(-1)}, Rel::GE, -r2},
                                     {{Rat(1)}, Rel::GE, Scalar(0)}});
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.x[0] == r2);
    CHECK(r.dual[0] == 1);
    CHECK(r.dual[1] == 0);
}

TEST_CASE("degenerate objective over a redundant system") {
    auto r = lp_minimize({Rat(0), Rat(0)},
                         {{{Rat(1), Rat(1)}, Rel::EQ, Scalar(2)},
                          {{Rat(2), Rat(2)}, Rel::EQ, Scalar(4)}});
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.x[0] + r.x[1] == Scalar(2));
}

TEST_CASE("random instances satisfy strong duality and complementary slackness") {
    auto basis = sqrt_basis();
    Scalar r2 = Scalar::symbol(basis, 0);
    std::mt19937 rng(31415);
    std::uniform_int_distribution<int> d(-4, 4);
    int optimal_seen = 0;
    for (int iter = 0; iter < 250; ++iter) {
        std::size_t n = 1 + rng() % 3;
        std::size_t m = 1 + rng() % 5;
        RatVec c(n);
        for (auto& ci : c) ci = d(rng);
        std::vector<LpRow> rows(m);
        for (auto& row : rows) {
            row.a.resize(n);
            for (auto& aij : row.a) aij = d(rng);
            row.rel = rng() % 4 == 0 ? Rel::EQ : Rel::GE;
            row.b = Scalar(d(rng)) + Rat(d(rng)) * r2;
        }
        auto r = lp_minimize(c, rows);
        if (r.status != LpStatus::Optimal) continue;
        ++optimal_seen;

        Scalar dual_obj(0);
        for (std::size_t i = 0; i < m; ++i) {
            Scalar slack = dot(rows[i].a, r.x) - rows[i].b;
            int s = sign(slack);
            CHECK(s >= 0);
            if (rows[i].rel == Rel::EQ) CHECK(s == 0);
            if (rows[i].rel == Rel::GE) CHECK(r.dual[i] >= 0);
            CHECK(sign(Rat(r.dual[i]) * slack) == 0);
            dual_obj += Rat(r.dual[i]) * rows[i].b;
        }
        for (std::size_t j = 0; j < n; ++j) {
            Rat aty(0);
            for (std::size_t i = 0; i < m; ++i) aty += r.dual[i] * rows[i].a[j];
            CHECK(aty == c[j]);
        }
        CHECK(dual_obj == r.objective);
    }
    CHECK(optimal_seen > 50);
}
