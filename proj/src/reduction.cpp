#include <algorithm>

#include "valfan/lp.hpp"
#include "valfan/reduction.hpp"

namespace valfan {

namespace {

Scalar eval_on_gamma(const RatVec& row, const ScalarVec& gamma_bar) {
    Scalar out(0);
    for (std::size_t l = 0; l < gamma_bar.size(); ++l) out += row[l] * gamma_bar[l];
    return out;
}

bool gamma_bar_in(const RationalCone& b, const ScalarVec& gamma_bar) {
    for (const auto& f : b.facets)
        if (sign(eval_on_gamma(to_rat(f), gamma_bar)) < 0) return false;
    for (const auto& e : b.equations)
        if (!eval_on_gamma(to_rat(e), gamma_bar).is_zero()) return false;
    return true;
}

/// Presentation of a cone from its stored facet/equation description. The
/// ambient facet t >= 0 is implied by the half-space ambient and carries a
/// rational offset outside QGamma in general, so it is dropped; from_hrep
/// restores it on pullback.
std::vector<HomFunctional> presentation_of(const Cone& c) {
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
}

HomFunctional negate(const HomFunctional& y) {
    HomFunctional out{y.u, -y.c};
    for (auto& x : out.u) x = -x;
    return out;
}

RationalCone full_space(std::size_t k) { return cone_from_inequalities(k, {}); }

} // namespace

RatVec LiftedFunctional::row() const {
    RatVec out = u;
    out.insert(out.end(), f.begin(), f.end());
    return out;
}

LiftedFunctional tilde(const HomFunctional& y, const ValueGroup& g) {
    auto f = qgamma_coords(y.c, g.basis());
    if (!f) throw NotInQGamma("offset " + y.c.str() + " is outside QGamma");
    return {y.u, std::move(*f)};
}

Cone cone_pullback(const RationalCone& c, std::size_t n, const ValueGroup& g) {
    if (c.ambient != n + g.rank()) throw DimensionMismatch("lifted cone has wrong ambient");
    std::vector<HomFunctional> ineqs;
    auto push = [&](const IntVec& row, bool eq) {
        RatVec u(row.begin(), row.begin() + n);
        RatVec f(row.begin() + n, row.end());
        Scalar c0 = eval_on_gamma(f, g.basis());
        ineqs.push_back({u, c0});
        if (eq) ineqs.push_back(negate(ineqs.back()));
    };
    for (const auto& f : c.facets) push(f, false);
    for (const auto& e : c.equations) push(e, true);
    return Cone::from_hrep(n, std::move(ineqs));
}

RationalCone lift_cone(std::size_t n, const std::vector<HomFunctional>& L, const RationalCone& b,
                       const ValueGroup& g) {
    std::size_t k = g.rank();
    if (b.ambient != k) throw DimensionMismatch("B lives in R^k");
    if (!gamma_bar_in(b, g.basis())) throw GammaBarNotInB();

    std::vector<RatVec> ineqs, eqs;
    for (const auto& y : L) ineqs.push_back(tilde(y, g).row());
    for (const auto& f : b.facets) {
        RatVec row(n, Rat(0));
        RatVec fr = to_rat(f);
        row.insert(row.end(), fr.begin(), fr.end());
        ineqs.push_back(std::move(row));
    }
    for (const auto& e : b.equations) {
        RatVec row(n, Rat(0));
        RatVec er = to_rat(e);
        row.insert(row.end(), er.begin(), er.end());
        eqs.push_back(std::move(row));
    }
    RationalCone lifted = cone_from_inequalities(n + k, ineqs, eqs);
    if (cone_pullback(lifted, n, g) != Cone::from_hrep(n, L))
        throw ReductionVerificationFailed("lifted cone does not pull back to L^vee");
    return lifted;
}

ExtendResult extend_inclusion(std::size_t n, const std::vector<HomFunctional>& L,
                              const HomFunctional& y0, const ValueGroup& g) {
    Cone lv = Cone::from_hrep(n, L);
    if (!lv.meets_height1()) throw HeightZeroOnly("L^vee lies in N x {0}");

    // When y0 is an exact conic combination of L (u-parts and offsets),
    // there is no slack to spend and f = 0 works for every B.
    {
        std::size_t w = 1;
        for (const auto& y : L) w = std::max(w, y.c.coords().size());
        w = std::max(w, y0.c.coords().size());
        std::vector<LpRow> rows;
        for (std::size_t j = 0; j < n; ++j) {
            LpRow row;
            row.a.assign(L.size(), Rat(0));
            for (std::size_t i = 0; i < L.size(); ++i) row.a[i] = L[i].u[j];
            row.rel = Rel::EQ;
            row.b = Scalar(y0.u[j]);
            rows.push_back(std::move(row));
        }
        for (std::size_t j = 0; j < w; ++j) {
            LpRow row;
            row.a.assign(L.size(), Rat(0));
            for (std::size_t i = 0; i < L.size(); ++i) row.a[i] = L[i].c.coord(j);
            row.rel = Rel::EQ;
            row.b = Scalar(y0.c.coord(j));
            rows.push_back(std::move(row));
        }
        for (std::size_t i = 0; i < L.size(); ++i) {
            LpRow row;
            row.a.assign(L.size(), Rat(0));
            row.a[i] = 1;
            rows.push_back(std::move(row));
        }
        auto sol = lp_feasible(L.size(), rows);
        if (sol.status == LpStatus::Optimal) {
            ScalarVec mult(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(L.size()));
            return {RatVec(g.rank(), Rat(0)), std::move(mult)};
        }
    }

    std::vector<AffIneq> constraints;
    constraints.reserve(L.size());
    for (const auto& y : L) constraints.push_back({y.u, -y.c});
    FarkasCertificate cert;
    try {
        cert = farkas_rational(constraints, y0.u, -y0.c);
    } catch (const NotValidError& e) {
        throw NotIncluded("L^vee is not contained in y0^vee");
    }
    Scalar delta(0);
    for (std::size_t i = 0; i < L.size(); ++i) delta += cert.multipliers[i] * L[i].c;
    auto f = qgamma_coords(y0.c - delta, g.basis());
    if (!f) throw NotInQGamma("slack offset is outside QGamma");
    return {std::move(*f), std::move(cert.multipliers)};
}

RationalCone b_cone_case1(const Cone& sigma, const Cone& tau,
                          const std::vector<HomFunctional>& l_sigma,
                          const std::vector<HomFunctional>& l_tau, const HomFunctional& y0,
                          const ValueGroup& g) {
    std::size_t n = sigma.n();
    std::size_t k = g.rank();
    std::vector<RatVec> rows;
    auto add = [&](const std::vector<HomFunctional>& L, const HomFunctional& y) {
        rows.push_back(extend_inclusion(n, L, y, g).f);
    };
    add(l_sigma, y0);
    add(l_tau, negate(y0));
    std::vector<HomFunctional> meet_s = l_sigma, meet_t = l_tau;
    meet_s.push_back(negate(y0));
    meet_t.push_back(y0);
    for (const auto& y : l_sigma) {
        add(meet_s, y);
        add(meet_t, y);
    }
    for (const auto& y : l_tau) {
        add(meet_s, y);
        add(meet_t, y);
    }
    RationalCone b = cone_from_inequalities(k, rows);
    if (!gamma_bar_in(b, g.basis()))
        throw ReductionVerificationFailed("gamma_bar escaped B_case1");
    (void)tau;
    return b;
}

RationalCone b_cone_case2(const Cone& sigma, const Cone& tau,
                          const std::vector<HomFunctional>& l_sigma,
                          const std::vector<HomFunctional>& l_tau, const HomFunctional& y0,
                          const ValueGroup& g) {
    std::size_t n = sigma.n();
    std::size_t k = g.rank();
    if (!sigma.meets_height1() || !tau.meets_height1())
        throw NonPositiveMargin("case 2 needs both cones to meet height one");

    // margin: min of <u0,.> + alpha0 over vertices of P_sigma, and of the
    // negated functional over vertices of P_tau
    auto vertex_min = [&](const Cone& c, const HomFunctional& y) {
        Scalar m = y.eval(c.vertices().front(), Rat(1));
        for (const auto& v : c.vertices()) {
            Scalar val = y.eval(v, Rat(1));
            if (sign(val - m) < 0) m = val;
        }
        return m;
    };
    Scalar ms = vertex_min(sigma, y0);
    Scalar mt = vertex_min(tau, negate(y0));
    Scalar lo = sign(ms - mt) < 0 ? ms : mt;
    if (sign(lo) <= 0) throw NonPositiveMargin("cones are not strictly separated at height one");
    Scalar eps = Rat(1, 2) * lo;

    RatVec g1 = extend_inclusion(n, l_sigma, {y0.u, y0.c - eps}, g).f;
    HomFunctional ny = negate(y0);
    RatVec g2 = extend_inclusion(n, l_tau, {ny.u, ny.c - eps}, g).f;
    auto h = qgamma_coords(eps, g.basis());
    if (!h) throw NotInQGamma("margin is outside QGamma");

    RationalCone dual_part = cone_from_inequalities(k, {g1, g2, *h});
    RationalCone thin = thin_rational_cone(primitive(*h), g.basis());
    RationalCone b = intersect(dual_part, thin);
    if (!gamma_bar_in(b, g.basis()))
        throw ReductionVerificationFailed("gamma_bar escaped B_case2");
    return b;
}

Fan thicken_height_zero(const Fan& fan, const ValueGroup& g) {
    std::vector<Cone> max = fan.max_cones();
    for (bool again = true; again;) {
        again = false;
        for (std::size_t i = 0; i < max.size(); ++i) {
            if (max[i].meets_height1()) continue;
            const Cone& sigma = max[i];
            std::size_t n = sigma.n();
            std::vector<HomFunctional> ineqs;
            for (const auto& f : sigma.height0().facets) ineqs.push_back({to_rat(f), Scalar(0)});
            for (const auto& e : sigma.height0().equations) {
                ineqs.push_back({to_rat(e), Scalar(0)});
                ineqs.push_back(negate(ineqs.back()));
            }
            for (std::size_t j = 0; j < max.size(); ++j)
                if (j != i) ineqs.push_back(separate(sigma, max[j], g.basis()));
            Cone thick = Cone::from_hrep(n, std::move(ineqs));
            if (!thick.meets_height1())
                throw ReductionVerificationFailed("thickened cone still at height zero");
            max[i] = std::move(thick);
            again = true;
            break;
        }
    }
    Fan out = Fan::from_max(fan.n(), std::move(max));
    // the input must sit inside the result as a subfan
    for (const auto& c : fan.max_cones()) {
        bool found = false;
        for (const auto& d : out.cones())
            if (c == d) found = true;
        if (!found) throw ReductionVerificationFailed("thickening lost a cone");
    }
    return out;
}

ReductionResult reduce(const Fan& fan, const ValueGroup& g) {
    std::size_t n = fan.n();
    std::size_t k = g.rank();

    Fan thick = thicken_height_zero(fan, g);
    const auto& max = thick.max_cones();
    std::vector<std::vector<HomFunctional>> ls;
    ls.reserve(max.size());
    for (const auto& c : max) ls.push_back(presentation_of(c));

    RationalCone b_sigma = full_space(k);
    for (std::size_t i = 0; i < max.size(); ++i)
        for (std::size_t j = i + 1; j < max.size(); ++j) {
            HomFunctional y0 = separate(max[i], max[j], g.basis());
            Cone meet = intersect(max[i], max[j]);
            RationalCone bij = meet.meets_height1()
                                   ? b_cone_case1(max[i], max[j], ls[i], ls[j], y0, g)
                                   : b_cone_case2(max[i], max[j], ls[i], ls[j], y0, g);
            b_sigma = intersect(b_sigma, bij);
        }

    // cut down to a strongly convex B around gamma_bar
    IntVec u_star;
    for (const auto& gamma : g.basis()) u_star.emplace_back(sign(gamma));
    RationalCone b = intersect(b_sigma, thin_rational_cone(u_star, g.basis()));
    if (!b.is_pointed() || !gamma_bar_in(b, g.basis()))
        throw ReductionVerificationFailed("no strongly convex B around gamma_bar");

    std::vector<RationalCone> lifted_max;
    lifted_max.reserve(max.size());
    for (std::size_t i = 0; i < max.size(); ++i) lifted_max.push_back(lift_cone(n, ls[i], b, g));
    RationalFan big;
    try {
        big = rational_fan_from_max(n + k, lifted_max);
    } catch (const NotPairwiseFaces&) {
        throw ReductionVerificationFailed("lifted maximal cones do not form a fan");
    }

    // keep the subfan pulling back into the original (unthickened) fan
    auto in_original = [&](const Cone& c) {
        for (const auto& d : fan.cones())
            if (c == d) return true;
        return false;
    };
    std::vector<RationalCone> keep;
    for (const auto& c : big.all)
        if (in_original(cone_pullback(c, n, g))) keep.push_back(c);
    std::vector<RationalCone> kept_max;
    for (const auto& c : keep) {
        bool maximal = true;
        for (const auto& d : keep)
            if (!(d == c) && d.contains(c)) maximal = false;
        if (maximal) kept_max.push_back(c);
    }

    ReductionResult out;
    out.k = k;
    out.gamma_bar = g.basis();
    out.b = std::move(b);
    out.lifted = rational_fan_from_max(n + k, kept_max);

    Fan back = pullback(out.lifted, out.gamma_bar);
    auto same_max = [&](const Fan& a, const Fan& bfan) {
        if (a.max_cones().size() != bfan.max_cones().size()) return false;
        for (const auto& c : a.max_cones()) {
            bool found = false;
            for (const auto& d : bfan.max_cones())
                if (c == d) found = true;
            if (!found) return false;
        }
        return true;
    };
    if (!same_max(back, fan))
        throw ReductionVerificationFailed("pullback of the lift differs from the input fan");

    for (const auto& c : fan.max_cones()) {
        bool found = false;
        for (std::size_t j = 0; j < out.lifted.max.size(); ++j)
            if (cone_pullback(out.lifted.max[j], n, g) == c) {
                out.correspondence.push_back(j);
                found = true;
                break;
            }
        if (!found) throw ReductionVerificationFailed("missing lift for a maximal cone");
    }
    return out;
}

Fan complete_admissible(const Fan& fan, const ValueGroup& g, const EngineConfig& cfg) {
    if (is_complete(fan).complete) return fan;
    auto red = reduce(fan, g);
    auto report = complete_rational(red.lifted, cfg);
    if (!report.complete)
        throw CompletionEngineExhausted("engine cap hit before the lift closed up");
    Fan out = pullback(report.fan, g.basis());
    for (const auto& c : fan.cones()) {
        bool found = false;
        for (const auto& d : out.cones())
            if (d == c) found = true;
        if (!found) throw ReductionVerificationFailed("input cone missing from the completion");
    }
    auto adm = is_admissible_fan(out, g);
    if (!adm.verdict)
        throw ReductionVerificationFailed("completion is not admissible: " + adm.detail);
    auto comp = is_complete(out);
    if (!comp.complete)
        throw ReductionVerificationFailed("pullback of the complete lift is not complete: " +
                                          comp.detail);
    return out;
}

} // namespace valfan
