#include "valfan/fixtures.hpp"

namespace valfan::fixtures {

namespace {

RatVec rv(std::vector<int> xs) {
    RatVec out;
    out.reserve(xs.size());
    for (int x : xs) out.emplace_back(x);
    return out;
}

HomFunctional hf(std::vector<int> u, Scalar c) { return {rv(std::move(u)), std::move(c)}; }

} // namespace

Dart dart() {
    Dart d;
    d.basis = SymbolBasis::interval({"alpha", "beta"}, {sqrt_enclosure(3), sqrt_enclosure(2)});
    d.alpha = Scalar::symbol(d.basis, 0);
    d.beta = Scalar::symbol(d.basis, 1);
    const Scalar &a = d.alpha, &b = d.beta;
    if (!(sign(b) > 0 && sign(a - b) > 0 && sign(Rat(2) * b - a) > 0))
        throw SemanticError("dart parameters must satisfy 0 < beta < alpha < 2 beta");
    d.gamma = ValueGroup::make({a, b});

    Cone s1 = Cone::from_hrep(
        2, {hf({1, 0}, Rat(3) * a), hf({-1, 0}, 0), hf({0, 1}, 0), hf({0, -1}, 0)});
    Cone s2 = Cone::from_hrep(
        2, {hf({0, 1}, Rat(3) * b), hf({0, -1}, 0), hf({1, 0}, 0), hf({-1, 0}, 0)});
    Cone s3 = Cone::from_hrep(2, {hf({-2, 1}, Rat(3) * b), hf({2, -1}, Rat(-3) * b),
                                  hf({1, 0}, 0), hf({-1, 0}, a + Rat(2) * b)});
    Cone s4 = Cone::from_hrep(2, {hf({1, -2}, Rat(3) * a), hf({-1, 2}, Rat(-3) * a),
                                  hf({0, 1}, 0), hf({0, -1}, Rat(2) * a + b)});
    d.fan = Fan::from_max(2, {s1, s2, s3, s4});
    return d;
}

RationalFan dart_lift() {
    std::vector<RatVec> band = {rv({0, 0, -1, 2}), rv({0, 0, 2, -1})}; // a/2 <= b <= 2a
    auto with_band = [&](std::vector<RatVec> ineqs) {
        ineqs.insert(ineqs.end(), band.begin(), band.end());
        return ineqs;
    };
    auto s1 = cone_from_inequalities(4, with_band({rv({1, 0, 3, 0}), rv({-1, 0, 0, 0})}),
                                     {rv({0, 1, 0, 0})});
    auto s2 = cone_from_inequalities(4, with_band({rv({0, 1, 0, 3}), rv({0, -1, 0, 0})}),
                                     {rv({1, 0, 0, 0})});
    auto s3 = cone_from_inequalities(4, with_band({rv({1, 0, 0, 0}), rv({-1, 0, 1, 2})}),
                                     {rv({-2, 1, 0, 3})});
    auto s4 = cone_from_inequalities(4, with_band({rv({0, 1, 0, 0}), rv({0, -1, 2, 1})}),
                                     {rv({1, -2, 3, 0})});
    return rational_fan_from_max(4, {s1, s2, s3, s4});
}

Fan dart_completion(const Dart& d) {
    const Scalar &a = d.alpha, &b = d.beta;
    auto pt = [](Scalar x, Scalar y) { return ScalarVec{std::move(x), std::move(y)}; };
    ScalarVec o = pt(0, 0);
    ScalarVec a1 = pt(Rat(-3) * a, 0);
    ScalarVec a2 = pt(0, Rat(-3) * b);
    ScalarVec a3 = pt(a + Rat(2) * b, Rat(2) * a + b);
    ScalarVec v1 = pt(Rat(2) * b - a, Rat(2) * b - a);
    ScalarVec v2 = pt(Rat(2) * b - a, Rat(5) * b - Rat(4) * a);
    ScalarVec v3 = pt(Rat(3) * a - Rat(2) * b, Rat(4) * a - Rat(3) * b);
    ScalarVec v4 = pt(Rat(8) * b - Rat(7) * a, Rat(2) * b - a);

    RationalCone zero = cone_from_rays(2, {});
    auto bounded = [&](std::vector<ScalarVec> vs) {
        return Cone::from_vertices(2, std::move(vs), zero);
    };
    auto wedge = [&](ScalarVec p, ScalarVec q, std::vector<int> r1, std::vector<int> r2) {
        return Cone::from_vertices(2, {std::move(p), std::move(q)},
                                   cone_from_rays(2, {rv(std::move(r1)), rv(std::move(r2))}));
    };

    Cone t1 = bounded({a1, o, v1, v4});
    Cone t2 = bounded({o, a2, v2, v1});
    Cone t3 = bounded({a2, a3, v3, v2});
    Cone t4 = bounded({a3, a1, v4, v3});
    // inner dart split along the diagonal from v1 (its reflex vertex) to v3
    Cone t5 = bounded({v1, v3, v4});
    Cone t6 = bounded({v1, v2, v3});
    Cone r1 = wedge(a1, o, {-4, -1}, {-1, -1});
    Cone r2 = wedge(o, a2, {-1, -1}, {-1, -4});
    Cone r3 = wedge(a2, a3, {-1, -4}, {1, 1});
    Cone r4 = wedge(a3, a1, {1, 1}, {-4, -1});

    return Fan::from_max(2, {t1, t2, t3, t4, t5, t6, r1, r2, r3, r4});
}

Badnorm badnorm(std::size_t n, unsigned long r) {
    Badnorm bn;
    bn.basis = SymbolBasis::interval({"sqrt2"}, {sqrt_enclosure(2)});
    Scalar s2 = Scalar::symbol(bn.basis, 0);
    bn.gamma = ValueGroup::make({Scalar(1), s2});
    bn.gamma_elt = Scalar(1);
    bn.r = r;
    Scalar frac = Rat(1, static_cast<long>(r)) * bn.gamma_elt; // gamma / r
    if (gamma_membership(frac, bn.gamma))
        throw SemanticError("gamma must lie outside r * Gamma");

    auto e = [&](std::size_t i, int s) {
        std::vector<int> u(n, 0);
        u[i] = s;
        return u;
    };
    std::vector<Cone> max;
    {
        std::vector<HomFunctional> ineqs;
        for (std::size_t j = 0; j < n; ++j) ineqs.push_back(hf(e(j, 1), -frac));
        max.push_back(Cone::from_hrep(n, std::move(ineqs)));
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<HomFunctional> mid = {hf(e(i, 1), 0), hf(e(i, -1), frac)};
        std::vector<HomFunctional> low = {hf(e(i, -1), 0)};
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) {
                std::vector<int> u(n, 0);
                u[j] = 1;
                u[i] = -1;
                mid.push_back(hf(u, 0));
                low.push_back(hf(u, 0));
            }
        max.push_back(Cone::from_hrep(n, std::move(mid)));
        max.push_back(Cone::from_hrep(n, std::move(low)));
    }
    bn.fan = Fan::from_max(n, std::move(max));
    return bn;
}

Thm45 thm45() {
    Thm45 t;
    t.basis = SymbolBasis::lexicographic({"omega"});
    t.omega = Scalar::symbol(t.basis, 0);
    t.gamma = ValueGroup::make({Scalar(1), t.omega});
    Cone c1 = Cone::from_hrep(
        2, {hf({1, 0}, 0), hf({-1, 0}, 0), hf({0, 1}, -1), hf({0, -1}, 1)}); // x=0, y=t
    Cone c2 = Cone::from_hrep(
        2, {hf({0, 1}, 0), hf({0, -1}, 0), hf({1, 0}, t.omega), hf({-1, 0}, t.omega)});
    t.fan = Fan::from_max(2, {c1, c2});
    return t;
}

Cone model_cone(std::size_t m, std::size_t n, const Scalar& gamma) {
    if (m > n) throw DimensionMismatch("model cone needs m <= n");
    std::vector<HomFunctional> ineqs;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<int> u(n, 0);
        u[i] = 1;
        ineqs.push_back(hf(u, 0));
    }
    std::vector<int> sum(n, 0);
    for (std::size_t i = 0; i < m; ++i) sum[i] = -1;
    ineqs.push_back(hf(sum, gamma));
    return Cone::from_hrep(n, std::move(ineqs));
}

} // namespace valfan::fixtures
