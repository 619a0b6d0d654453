#include <algorithm>

#include "valfan/polyhedra.hpp"

namespace valfan {

namespace {

std::size_t width_of(const Scalar& s) { return s.coords().size(); }

Int lcm_den(const RatVec& v, Int acc) {
    for (const auto& q : v) {
        Int den = q.get_den();
        acc = acc / gcd(acc, den) * den;
    }
    return acc;
}

// Height-zero separation: u in the relative interior of (sigma - tau)^vee.
RatVec separate_rational(const RationalCone& s0, const RationalCone& t0) {
    std::vector<RatVec> rays;
    for (const auto& r : s0.rays) rays.push_back(to_rat(r));
    for (const auto& r : t0.rays) {
        RatVec nr = to_rat(r);
        for (auto& x : nr) x = -x;
        rays.push_back(std::move(nr));
    }
    std::vector<RatVec> lines;
    for (const auto& l : s0.lines) lines.push_back(to_rat(l));
    for (const auto& l : t0.lines) lines.push_back(to_rat(l));
    RationalCone diff = cone_from_rays(s0.ambient, rays, lines);
    return dual(diff).relint_point();
}

Cone cut_by(const Cone& c, const HomFunctional& y) {
    std::vector<HomFunctional> ineqs = c.facets();
    for (const auto& e : c.equations()) {
        ineqs.push_back(e);
        RatVec nu = e.u;
        for (auto& x : nu) x = -x;
        ineqs.push_back({nu, -e.c});
    }
    ineqs.push_back(y);
    RatVec nu = y.u;
    for (auto& x : nu) x = -x;
    ineqs.push_back({nu, -y.c});
    return Cone::from_hrep(c.n(), ineqs);
}

void verify_separator(const Cone& sigma, const Cone& tau, const HomFunctional& y) {
    auto nonneg_on = [&](const Cone& c, int orient) {
        for (const auto& v : c.vertices())
            if (orient * sign(y.eval(v, Rat(1))) < 0) return false;
        for (const auto& r : c.height0().rays)
            if (orient * sgn(dot(y.u, to_rat(r))) < 0) return false;
        for (const auto& l : c.height0().lines)
            if (dot(y.u, to_rat(l)) != 0) return false;
        return true;
    };
    if (!nonneg_on(sigma, 1) || !nonneg_on(tau, -1))
        throw NotValid("separator fails the sign conditions");
    Cone meet = intersect(sigma, tau);
    HomFunctional ny{y.u, y.c};
    for (auto& x : ny.u) x = -x;
    ny.c = -y.c;
    if (!(cut_by(sigma, y) == meet) || !(cut_by(tau, ny) == meet))
        throw NotValid("separator exposes the wrong face");
}

// Inner rational approximation of {a in Q^k : sum_l a_l gamma_l > 0}: a
// pointed cone whose nonzero points all have positive value, certified by
// construction; deeper levels cover more of the true half-space.
RationalCone positive_coeff_cone(const ScalarVec& gamma_basis, int depth) {
    std::size_t k = gamma_basis.size();
    BasisPtr b;
    for (const auto& g : gamma_basis)
        if (g.basis()) b = g.basis();
    std::vector<RatVec> ineqs;
    if (!b || b->oracle() == OracleKind::IntervalRefinement) {
        // Dual of the cone over an enclosure box around gamma: a is
        // nonnegative on every box vertex, so a.gamma >= min over the box
        // >= 0, and exact vanishing is excluded by Q-independence.
        std::vector<Interval> box;
        for (const auto& g : gamma_basis) box.push_back(enclose(g, depth));
        std::vector<RatVec> verts{RatVec{}};
        for (std::size_t l = 0; l < k; ++l) {
            std::vector<RatVec> next;
            for (const auto& v : verts) {
                RatVec lo = v;
                lo.push_back(box[l].lo);
                if (box[l].hi != box[l].lo) {
                    RatVec hi = v;
                    hi.push_back(box[l].hi);
                    next.push_back(std::move(hi));
                }
                next.push_back(std::move(lo));
            }
            verts = std::move(next);
        }
        ineqs = std::move(verts);
    } else {
        // Lexicographic symbols: the weight rows w_j = p*w_{j+1} + e_j turn
        // "the highest nonzero symbol coordinate is positive" into nested
        // rational inequalities on the coordinates of a.gamma.
        std::size_t w = 1;
        for (const auto& g : gamma_basis) w = std::max(w, width_of(g));
        Rat p(Int(1) << static_cast<unsigned>(depth + 1));
        RatVec row(w, Rat(0));
        for (std::size_t j = w; j-- > 0;) {
            for (auto& x : row) x *= p;
            row[j] += 1;
            RatVec normal(k, Rat(0));
            for (std::size_t l = 0; l < k; ++l)
                for (std::size_t c = 0; c < w; ++c) normal[l] += row[c] * gamma_basis[l].coord(c);
            ineqs.push_back(std::move(normal));
        }
    }
    return cone_from_inequalities(k, ineqs);
}

// Both cones meet height one. The separator y = (u, sum_l f_l gamma_l) is
// found directly in the rational coordinates x = (u, f): y must vanish on
// every generator of sigma cap tau and be strictly positive (negative) on
// the remaining generators of sigma (tau). A generator at height one
// contributes a vector a(x) in Q^k of gamma coordinates, and strictness
// means a.gamma > 0; replacing that condition by membership of a(x) in an
// inner approximation of the half-space gives a rational cone whose
// relative interior point is checked exactly and refined on failure.
HomFunctional separate_height1(const Cone& sigma, const Cone& tau, const ScalarVec& gamma_basis) {
    std::size_t n = sigma.n();
    std::size_t k = gamma_basis.size();
    std::size_t nv = n + k;
    Cone meet = intersect(sigma, tau);

    std::vector<RatVec> eqs;
    std::vector<std::vector<RatVec>> strict; // rows of a map x -> Q^r, r = k or 1
    std::vector<bool> strict_is_vertex;

    auto add_vertex = [&](const ScalarVec& v, int orient) {
        std::vector<RatVec> rows(k, RatVec(nv, Rat(0)));
        for (std::size_t j = 0; j < n; ++j) {
            auto coords = qgamma_coords(v[j], gamma_basis);
            if (!coords) throw NotValid("vertex coordinate outside QGamma");
            for (std::size_t l = 0; l < k; ++l) rows[l][j] = Rat(orient) * (*coords)[l];
        }
        for (std::size_t l = 0; l < k; ++l) rows[l][n + l] += Rat(orient);
        if (meet.contains(v, Rat(1))) {
            for (auto& r : rows) eqs.push_back(std::move(r));
        } else {
            strict.push_back(std::move(rows));
            strict_is_vertex.push_back(true);
        }
    };
    auto add_ray = [&](const IntVec& r, int orient) {
        RatVec row(nv, Rat(0));
        ScalarVec w;
        for (std::size_t j = 0; j < n; ++j) {
            row[j] = Rat(orient) * Rat(r[j]);
            w.emplace_back(Rat(r[j]));
        }
        if (meet.contains(w, Rat(0))) {
            eqs.push_back(std::move(row));
        } else {
            strict.push_back({std::move(row)});
            strict_is_vertex.push_back(false);
        }
    };
    auto add_line = [&](const IntVec& l) {
        RatVec row(nv, Rat(0));
        for (std::size_t j = 0; j < n; ++j) row[j] = Rat(l[j]);
        eqs.push_back(std::move(row));
    };
    for (const auto& v : sigma.vertices()) add_vertex(v, 1);
    for (const auto& r : sigma.height0().rays) add_ray(r, 1);
    for (const auto& l : sigma.height0().lines) add_line(l);
    for (const auto& v : tau.vertices()) add_vertex(v, -1);
    for (const auto& r : tau.height0().rays) add_ray(r, -1);
    for (const auto& l : tau.height0().lines) add_line(l);

    for (int depth = 0; depth <= 64; ++depth) {
        RationalCone d = positive_coeff_cone(gamma_basis, depth);
        std::vector<RatVec> ineqs;
        std::vector<RatVec> all_eqs = eqs;
        auto apply = [&](const RatVec& coeff, const std::vector<RatVec>& rows) {
            RatVec comb(nv, Rat(0));
            for (std::size_t l = 0; l < k; ++l)
                for (std::size_t j = 0; j < nv; ++j) comb[j] += coeff[l] * rows[l][j];
            return comb;
        };
        for (std::size_t i = 0; i < strict.size(); ++i) {
            if (!strict_is_vertex[i]) {
                ineqs.push_back(strict[i][0]);
                continue;
            }
            for (const auto& f : d.facets) ineqs.push_back(apply(to_rat(f), strict[i]));
            for (const auto& e : d.equations) all_eqs.push_back(apply(to_rat(e), strict[i]));
        }
        RationalCone feas = cone_from_inequalities(nv, ineqs, all_eqs);
        RatVec x = feas.relint_point();

        // exact strictness check; any failure means the approximation was
        // too coarse for a witness, so refine
        bool ok = true;
        for (std::size_t i = 0; i < strict.size() && ok; ++i) {
            Scalar val(0);
            if (strict_is_vertex[i]) {
                for (std::size_t l = 0; l < k; ++l) val += dot(strict[i][l], x) * gamma_basis[l];
            } else {
                val = Scalar(dot(strict[i][0], x));
            }
            if (sign(val) <= 0) ok = false;
        }
        if (!ok) continue;

        HomFunctional y;
        y.u.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n));
        RatVec f(x.begin() + static_cast<std::ptrdiff_t>(n), x.end());
        Int scale = lcm_den(y.u, lcm_den(f, Int(1)));
        y.c = Scalar(0);
        for (std::size_t j = 0; j < n; ++j) y.u[j] *= Rat(scale);
        for (std::size_t l = 0; l < k; ++l) y.c += (f[l] * Rat(scale)) * gamma_basis[l];
        return y;
    }
    throw OracleStall("no rational separator found at maximum refinement depth");
}

// sigma at height zero, tau meeting height one: y = (mu, -delta) with u the
// rational separator of the height-zero parts, m clearing the denominators
// of max_P u, and delta in Gamma just above m*gamma.
HomFunctional separate_mixed(const Cone& sigma, const Cone& tau, const ScalarVec& gamma_basis) {
    std::size_t n = sigma.n();
    RatVec u = separate_rational(sigma.height0(), tau.height0());
    // gamma = max of u over the vertices of P_tau
    Scalar gamma = dot(u, tau.vertices().front());
    for (const auto& v : tau.vertices()) {
        Scalar val = dot(u, v);
        if (sign(val - gamma) > 0) gamma = val;
    }
    auto coords = qgamma_coords(gamma, gamma_basis);
    if (!coords) throw NotValid("vertex maximum is outside QGamma");
    Int m = lcm_den(*coords, Int(1));
    // a positive element of Gamma
    Scalar pos(0);
    for (const auto& g : gamma_basis)
        if (!g.is_zero()) {
            pos = sign(g) > 0 ? g : -g;
            break;
        }
    if (pos.is_zero()) throw TrivialGamma("no nonzero value-group element");
    Scalar delta = Rat(m) * gamma + pos;
    HomFunctional y;
    y.u.resize(n);
    for (std::size_t j = 0; j < n; ++j) y.u[j] = Rat(m) * u[j];
    y.c = -delta;
    return y;
}

} // namespace

std::optional<RatVec> qgamma_coords(const Scalar& s, const ScalarVec& basis) {
    std::size_t w = width_of(s);
    for (const auto& b : basis) w = std::max(w, width_of(b));
    RatMatrix m(w, basis.size());
    RatVec rhs(w);
    for (std::size_t j = 0; j < w; ++j) {
        for (std::size_t l = 0; l < basis.size(); ++l) m.at(j, l) = basis[l].coord(j);
        rhs[j] = s.coord(j);
    }
    return solve(m, rhs);
}

HomFunctional separate(const Cone& sigma, const Cone& tau, const ScalarVec& gamma_basis) {
    if (sigma.n() != tau.n()) throw DimensionMismatch("cone ambient mismatch");
    if (!common_face_test(sigma, tau)) throw NotCommonFace("cones do not meet in a common face");

    HomFunctional y;
    if (!sigma.meets_height1() && !tau.meets_height1()) {
        y.u = separate_rational(sigma.height0(), tau.height0());
        y.c = Scalar(0);
    } else if (sigma.meets_height1() && tau.meets_height1()) {
        y = separate_height1(sigma, tau, gamma_basis);
    } else if (!sigma.meets_height1()) {
        y = separate_mixed(sigma, tau, gamma_basis);
    } else {
        y = separate_mixed(tau, sigma, gamma_basis);
        for (auto& x : y.u) x = -x;
        y.c = -y.c;
    }
    verify_separator(sigma, tau, y);
    return y;
}

} // namespace valfan
