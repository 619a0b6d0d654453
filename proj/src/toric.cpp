#include <algorithm>

#include "valfan/lp.hpp"
#include "valfan/toric.hpp"

namespace valfan {

namespace {

/// Inverse of a unimodular rational matrix, column by column.
RatMatrix inverse(const RatMatrix& m) {
    std::size_t n = m.rows();
    RatMatrix out(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        RatVec e(n, Rat(0));
        e[j] = 1;
        auto col = solve(m, e);
        if (!col) throw NotValid("singular matrix in unimodular inverse");
        for (std::size_t i = 0; i < n; ++i) out.at(i, j) = (*col)[i];
    }
    return out;
}

RatVec mat_apply(const RatMatrix& m, const RatVec& x) {
    RatVec out(m.rows(), Rat(0));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m.at(i, j) * x[j];
    return out;
}

/// All integer points of the box [lo, hi], streamed to the visitor.
void walk_box(const std::vector<Int>& lo, const std::vector<Int>& hi, IntVec& cur,
              std::size_t j, const std::function<void(const IntVec&)>& visit) {
    if (j == lo.size()) {
        visit(cur);
        return;
    }
    for (Int x = lo[j]; x <= hi[j]; ++x) {
        cur[j] = x;
        walk_box(lo, hi, cur, j + 1, visit);
    }
}

bool in_zonotope(const std::vector<IntVec>& gens, const IntVec& x) {
    std::size_t n = x.size(), m = gens.size();
    std::vector<LpRow> rows;
    for (std::size_t j = 0; j < n; ++j) {
        LpRow row;
        row.a.assign(m, Rat(0));
        for (std::size_t i = 0; i < m; ++i) row.a[i] = Rat(gens[i][j]);
        row.rel = Rel::EQ;
        row.b = Scalar(Rat(x[j]));
        rows.push_back(std::move(row));
    }
    for (std::size_t i = 0; i < m; ++i) {
        LpRow ge;
        ge.a.assign(m, Rat(0));
        ge.a[i] = 1;
        ge.b = Scalar(0);
        rows.push_back(ge);
        LpRow le;
        le.a.assign(m, Rat(0));
        le.a[i] = -1;
        le.b = Scalar(-1);
        rows.push_back(le);
    }
    return lp_feasible(m, rows).status == LpStatus::Optimal;
}

bool all_in_gamma(const ScalarVec& w, const ValueGroup& g) {
    for (const auto& c : w)
        if (!gamma_membership(c, g)) return false;
    return true;
}

} // namespace

std::vector<IntVec> hilbert_basis(const RationalCone& sigma) {
    if (!sigma.is_pointed()) throw NotValid("hilbert basis needs a pointed cone");
    if (sigma.ambient > 4) throw DimensionTooLarge("hilbert basis capped at dimension four");
    if (sigma.rays.empty()) return {};
    std::size_t n = sigma.ambient;

    std::vector<Int> lo(n, 0), hi(n, 0);
    for (const auto& r : sigma.rays)
        for (std::size_t j = 0; j < n; ++j) {
            if (r[j] < 0) lo[j] += r[j];
            if (r[j] > 0) hi[j] += r[j];
        }

    // lattice points of the generator zonotope that lie in the cone
    std::vector<IntVec> candidates;
    IntVec cur(n, 0);
    walk_box(lo, hi, cur, 0, [&](const IntVec& x) {
        bool zero = true;
        for (const auto& v : x)
            if (v != 0) zero = false;
        if (zero || !sigma.contains(to_rat(x))) return;
        if (in_zonotope(sigma.rays, x)) candidates.push_back(x);
    });

    // keep the irreducibles
    std::vector<IntVec> basis;
    for (const auto& x : candidates) {
        bool reducible = false;
        for (const auto& y : candidates) {
            if (y == x) continue;
            RatVec diff(n);
            bool zero = true;
            for (std::size_t j = 0; j < n; ++j) {
                diff[j] = Rat(x[j] - y[j]);
                if (diff[j] != 0) zero = false;
            }
            if (!zero && sigma.contains(diff)) {
                reducible = true;
                break;
            }
        }
        if (!reducible) basis.push_back(x);
    }
    std::sort(basis.begin(), basis.end());
    return basis;
}

std::vector<IntVec> lattice_monoid_generators(const RationalCone& d) {
    if (d.is_zero()) return {};
    if (d.lines.empty()) return hilbert_basis(d);

    std::size_t n = d.ambient, s = d.lines.size();
    // unimodular coordinates in which the lineality lattice is Z^s x 0
    RatMatrix cols(n, s);
    for (std::size_t j = 0; j < s; ++j)
        for (std::size_t i = 0; i < n; ++i) cols.at(i, j) = Rat(d.lines[j][i]);
    auto h = hnf(cols);
    RatMatrix uinv = inverse(h.u);

    std::vector<IntVec> out;
    for (const auto& l : d.lines) {
        out.push_back(l);
        IntVec neg = l;
        for (auto& x : neg) x = -x;
        out.push_back(std::move(neg));
    }

    if (!d.rays.empty()) {
        std::vector<RatVec> proj;
        for (const auto& r : d.rays) {
            RatVec img = mat_apply(h.u, to_rat(r));
            proj.emplace_back(img.begin() + static_cast<long>(s), img.end());
        }
        RationalCone quot = cone_from_rays(n - s, proj);
        for (const auto& b : hilbert_basis(quot)) {
            RatVec lifted(n, Rat(0));
            for (std::size_t j = 0; j < n - s; ++j) lifted[s + j] = Rat(b[j]);
            RatVec back = mat_apply(uinv, lifted);
            IntVec gen(n);
            for (std::size_t j = 0; j < n; ++j) {
                if (back[j].get_den() != 1)
                    throw NotValid("lineality lattice is not saturated");
                gen[j] = back[j].get_num();
            }
            out.push_back(std::move(gen));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

AlgebraPresentation algebra_presentation(const Cone& sigma, const ValueGroup& g) {
    AlgebraPresentation out;
    std::size_t n = sigma.n();

    if (!sigma.meets_height1()) {
        // plain toric piece over the fraction field
        for (const auto& u : lattice_monoid_generators(dual(sigma.height0())))
            out.height_zero.push_back({u, Scalar(0)});
        return out;
    }

    for (const auto& w : sigma.vertices()) {
        for (const auto& c : w)
            if (!gamma_membership(c, g))
                throw NotFiniteType("vertex coordinate " + c.str() + " outside N_Gamma");
        // local cone of the slice at w: the active facet directions
        std::vector<RatVec> ineqs;
        for (const auto& f : sigma.facets())
            if (sign(f.eval(w, Rat(1))) == 0) ineqs.push_back(f.u);
        std::vector<RatVec> eqs;
        for (const auto& e : sigma.equations()) eqs.push_back(e.u);
        RationalCone local = cone_from_inequalities(n, ineqs, eqs);

        std::vector<AlgebraGenerator> gens;
        for (const auto& u : lattice_monoid_generators(dual(local)))
            gens.push_back({u, -dot(to_rat(u), w)});
        out.vertices.push_back(w);
        out.per_vertex.push_back(std::move(gens));
    }
    return out;
}

DualComplexData dual_complex(const Fan& fan, const ValueGroup& g) {
    (void)g;
    std::vector<const Cone*> bounded;
    for (const auto& c : fan.cones())
        if (c.meets_height1() && c.height0().is_zero()) bounded.push_back(&c);
    std::sort(bounded.begin(), bounded.end(), [](const Cone* a, const Cone* b) {
        if (a->dim() != b->dim()) return a->dim() < b->dim();
        if (a->vertices().size() != b->vertices().size())
            return a->vertices().size() < b->vertices().size();
        for (std::size_t i = 0; i < a->vertices().size(); ++i) {
            if (scalar_vec_less(a->vertices()[i], b->vertices()[i])) return true;
            if (scalar_vec_less(b->vertices()[i], a->vertices()[i])) return false;
        }
        return false;
    });

    DualComplexData out;
    for (const auto* c : bounded) {
        DualFace face;
        face.dim = c->dim() - 1;
        face.vertices = c->vertices();
        for (std::size_t j = 0; j < out.faces.size(); ++j)
            if (bounded[j]->dim() < c->dim() && c->contains(*bounded[j]))
                face.subfaces.push_back(j);
        out.faces.push_back(std::move(face));
    }
    return out;
}

std::optional<SegmentModel> recognize_segment_model(const Cone& sigma, const ValueGroup& g) {
    if (!sigma.meets_height1() || !sigma.height0().is_zero()) return std::nullopt;
    if (sigma.vertices().size() != 2) return std::nullopt;
    const ScalarVec& v0 = sigma.vertices()[0];
    const ScalarVec& v1 = sigma.vertices()[1];
    if (!all_in_gamma(v0, g) || !all_in_gamma(v1, g)) return std::nullopt;

    std::size_t n = sigma.n();
    // expand the edge direction over the gamma basis; it must be a scalar
    // multiple of a primitive lattice direction
    std::vector<RatVec> rows(n);
    std::size_t j0 = n;
    for (std::size_t j = 0; j < n; ++j) {
        auto f = qgamma_coords(v1[j] - v0[j], g.basis());
        if (!f) return std::nullopt;
        rows[j] = *f;
        if (j0 == n && !is_zero(*f)) j0 = j;
    }
    if (j0 == n) return std::nullopt; // the two vertices coincide
    std::size_t c0 = 0;
    while (rows[j0][c0] == 0) ++c0;
    RatVec q(n, Rat(0));
    for (std::size_t j = 0; j < n; ++j) {
        q[j] = rows[j][c0] / rows[j0][c0];
        for (std::size_t c = 0; c < rows[j].size(); ++c)
            if (rows[j][c] != q[j] * rows[j0][c]) return std::nullopt;
    }
    IntVec e = primitive(q);
    Scalar length = (v1[j0] - v0[j0]) * (Rat(1) / Rat(e[j0]));
    if (sign(length) < 0) length = -length;
    if (!gamma_membership(length, g)) return std::nullopt;
    return SegmentModel{length, n - 1};
}

SemistabilityReport semistable_necessary(const Fan& fan, const ValueGroup& g) {
    SemistabilityReport out;
    out.complex = dual_complex(fan, g);
    out.necessary_ok = true;
    for (std::size_t i = 0; i < out.complex.faces.size(); ++i) {
        const auto& f = out.complex.faces[i];
        if (f.vertices.size() != f.dim + 1) {
            out.necessary_ok = false;
            out.witness = i;
            break;
        }
    }
    out.verdict = out.necessary_ok ? "passes-necessary (inconclusive)" : "fails-necessary";
    for (const auto& c : fan.max_cones()) out.models.push_back(recognize_segment_model(c, g));
    return out;
}

Fan bad_normalization_fan(std::size_t n, unsigned long r, const Scalar& gamma_elt,
                          const ValueGroup& g) {
    if (n == 0 || r < 2) throw SemanticError("need n >= 1 and r >= 2");
    if (sign(gamma_elt) <= 0 || !gamma_membership(gamma_elt, g))
        throw SemanticError("gamma must be a positive element of Gamma");
    Scalar frac = Rat(1, static_cast<long>(r)) * gamma_elt;
    if (gamma_membership(frac, g)) throw GammaDivisible("gamma lies in r * Gamma");

    auto hf = [&](std::size_t i, int s, const Scalar& c) {
        RatVec u(n, Rat(0));
        u[i] = s;
        return HomFunctional{std::move(u), c};
    };
    std::vector<Cone> max;
    {
        std::vector<HomFunctional> top;
        for (std::size_t j = 0; j < n; ++j) top.push_back(hf(j, 1, -frac));
        max.push_back(Cone::from_hrep(n, std::move(top)));
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<HomFunctional> mid = {hf(i, 1, Scalar(0)), hf(i, -1, frac)};
        std::vector<HomFunctional> low = {hf(i, -1, Scalar(0))};
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) {
                RatVec u(n, Rat(0));
                u[j] = 1;
                u[i] = -1;
                mid.push_back({u, Scalar(0)});
                low.push_back({std::move(u), Scalar(0)});
            }
        max.push_back(Cone::from_hrep(n, std::move(mid)));
        max.push_back(Cone::from_hrep(n, std::move(low)));
    }
    return Fan::from_max(n, std::move(max));
}

} // namespace valfan
