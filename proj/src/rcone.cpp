#include "valfan/rcone.hpp"

#include <algorithm>

#include "valfan/lp.hpp"

namespace valfan {

namespace {

Rat dotv(const RatVec& a, const RatVec& b) { return dot(a, b); }

struct Gen {
    RatVec v;
    std::vector<std::size_t> tight; // indices of processed rows vanishing on v
};

std::vector<std::size_t> meet(const std::vector<std::size_t>& a,
                              const std::vector<std::size_t>& b) {
    std::vector<std::size_t> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// r in cone(others) + lin(lines)?
bool in_cone_of(const RatVec& r, const std::vector<RatVec>& others,
                const std::vector<RatVec>& lines) {
    std::size_t n = r.size();
    std::size_t nv = others.size() + lines.size();
    std::vector<LpRow> rows;
    for (std::size_t i = 0; i < n; ++i) {
        LpRow row;
        row.a.assign(nv, Rat(0));
        for (std::size_t j = 0; j < others.size(); ++j) row.a[j] = others[j][i];
        for (std::size_t j = 0; j < lines.size(); ++j) row.a[others.size() + j] = lines[j][i];
        row.rel = Rel::EQ;
        row.b = Scalar(r[i]);
        rows.push_back(std::move(row));
    }
    for (std::size_t j = 0; j < others.size(); ++j) {
        LpRow row;
        row.a.assign(nv, Rat(0));
        row.a[j] = 1;
        row.rel = Rel::GE;
        row.b = Scalar(0);
        rows.push_back(std::move(row));
    }
    return lp_feasible(nv, rows).status == LpStatus::Optimal;
}

} // namespace

DDResult double_description(std::size_t ambient, const std::vector<RatVec>& ineqs,
                            const std::vector<RatVec>& eqs) {
    std::vector<RatVec> lines;
    for (std::size_t i = 0; i < ambient; ++i) {
        RatVec e(ambient, Rat(0));
        e[i] = 1;
        lines.push_back(std::move(e));
    }
    std::vector<Gen> rays;
    std::vector<RatVec> processed;

    // p,q extreme; adjacent iff the minimal face containing both has
    // dimension lineality + 2, read off the rank of their common tight rows.
    auto adjacent = [&](const Gen& p, const Gen& q) {
        auto t = meet(p.tight, q.tight);
        RatMatrix m(t.size(), ambient);
        for (std::size_t i = 0; i < t.size(); ++i)
            for (std::size_t j = 0; j < ambient; ++j) m.at(i, j) = processed[t[i]][j];
        return rank(std::move(m)) == ambient - lines.size() - 2;
    };

    auto add_row = [&](const RatVec& a, bool equality) {
        if (a.size() != ambient) throw DimensionMismatch("constraint width mismatch");
        std::size_t idx = processed.size();

        std::size_t piv = lines.size();
        for (std::size_t i = 0; i < lines.size(); ++i)
            if (dotv(a, lines[i]) != 0) {
                piv = i;
                break;
            }
        if (piv < lines.size()) {
            RatVec l0 = lines[piv];
            Rat d0 = dotv(a, l0);
            if (!equality && d0 < 0) {
                for (auto& x : l0) x = -x;
                d0 = -d0;
            }
            lines.erase(lines.begin() + static_cast<std::ptrdiff_t>(piv));
            for (auto& l : lines) {
                Rat f = dotv(a, l) / d0;
                if (f != 0)
                    for (std::size_t j = 0; j < ambient; ++j) l[j] -= f * l0[j];
            }
            for (auto& g : rays) {
                Rat f = dotv(a, g.v) / d0;
                if (f != 0)
                    for (std::size_t j = 0; j < ambient; ++j) g.v[j] -= f * l0[j];
                g.tight.push_back(idx);
            }
            if (!equality) {
                Gen g;
                g.v = std::move(l0);
                for (std::size_t j = 0; j < idx; ++j) g.tight.push_back(j);
                rays.push_back(std::move(g));
            }
            processed.push_back(a);
            return;
        }

        std::vector<Gen> plus, zero, minus;
        for (auto& g : rays) {
            int s = sgn(dotv(a, g.v));
            (s > 0 ? plus : s == 0 ? zero : minus).push_back(std::move(g));
        }
        std::vector<Gen> next;
        for (auto& g : zero) {
            g.tight.push_back(idx);
            next.push_back(std::move(g));
        }
        for (const auto& p : plus)
            for (const auto& q : minus) {
                if (!adjacent(p, q)) continue;
                Gen w;
                Rat cp = dotv(a, p.v), cq = dotv(a, q.v);
                w.v.resize(ambient);
                for (std::size_t j = 0; j < ambient; ++j) w.v[j] = cp * q.v[j] - cq * p.v[j];
                if (is_zero(w.v)) continue;
                w.tight = meet(p.tight, q.tight);
                w.tight.push_back(idx);
                next.push_back(std::move(w));
            }
        if (!equality)
            for (auto& g : plus) next.push_back(std::move(g));
        rays = std::move(next);
        processed.push_back(a);
    };

    for (const auto& e : eqs) add_row(e, true);
    for (const auto& f : ineqs) add_row(f, false);

    DDResult out;
    out.lines = std::move(lines);
    std::vector<RatVec> cand;
    for (auto& g : rays)
        if (!is_zero(g.v)) cand.push_back(std::move(g.v));
    // Normalize, dedupe, then drop anything the rest already generates.
    for (auto& v : cand) {
        IntVec p = primitive(v);
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = Rat(p[j]);
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    for (std::size_t i = 0; i < cand.size();) {
        std::vector<RatVec> others;
        for (std::size_t j = 0; j < cand.size(); ++j)
            if (j != i) others.push_back(cand[j]);
        if (in_cone_of(cand[i], others, out.lines))
            cand.erase(cand.begin() + static_cast<std::ptrdiff_t>(i));
        else
            ++i;
    }
    out.rays = std::move(cand);
    return out;
}

namespace {

std::vector<IntVec> canonical_rays(const std::vector<RatVec>& rays) {
    std::vector<IntVec> out;
    for (const auto& r : rays) out.push_back(primitive(r));
    std::sort(out.begin(), out.end());
    return out;
}

// HNF of the stacked line vectors scaled to integers: a basis of the
// lineality lattice direction space, unique per subspace.
std::vector<IntVec> canonical_lines(const std::vector<RatVec>& lines, std::size_t ambient) {
    if (lines.empty()) return {};
    RatMatrix m(lines.size(), ambient);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        IntVec p = primitive(lines[i]);
        for (std::size_t j = 0; j < ambient; ++j) m.at(i, j) = Rat(p[j]);
    }
    // Reduce over Q for a subspace-canonical basis, then clear denominators.
    rref(m);
    std::vector<IntVec> out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        RatVec row = m.row(i);
        if (!is_zero(row)) out.push_back(primitive(row));
    }
    return out;
}

std::vector<RatVec> to_ratvecs(const std::vector<IntVec>& vs) {
    std::vector<RatVec> out;
    for (const auto& v : vs) out.push_back(to_rat(v));
    return out;
}

RationalCone assemble(std::size_t ambient, const DDResult& vrep) {
    RationalCone c;
    c.ambient = ambient;
    c.rays = canonical_rays(vrep.rays);
    c.lines = canonical_lines(vrep.lines, ambient);
    // Polar: inequalities indexed by generators; its rays are the facet
    // normals, its lineality spans the equations.
    auto hrep = double_description(ambient, vrep.rays, vrep.lines);
    c.facets = canonical_rays(hrep.rays);
    c.equations = canonical_lines(hrep.lines, ambient);
    return c;
}

} // namespace

RationalCone cone_from_inequalities(std::size_t ambient, const std::vector<RatVec>& ineqs,
                                    const std::vector<RatVec>& eqs) {
    return assemble(ambient, double_description(ambient, ineqs, eqs));
}

RationalCone cone_from_rays(std::size_t ambient, const std::vector<RatVec>& rays,
                            const std::vector<RatVec>& lines) {
    for (const auto& r : rays)
        if (r.size() != ambient) throw DimensionMismatch("ray width mismatch");
    // Round-trip through the H-description so generator lists canonicalize.
    auto hrep = double_description(ambient, rays, lines);
    return assemble(ambient, double_description(ambient, hrep.rays, hrep.lines));
}

bool RationalCone::contains(const RatVec& x) const {
    for (const auto& e : equations)
        if (dot(to_rat(e), x) != 0) return false;
    for (const auto& f : facets)
        if (dot(to_rat(f), x) < 0) return false;
    return true;
}

bool RationalCone::contains(const RationalCone& other) const {
    for (const auto& r : other.rays)
        if (!contains(to_rat(r))) return false;
    for (const auto& l : other.lines) {
        RatVec v = to_rat(l);
        RatVec nv = v;
        for (auto& x : nv) x = -x;
        if (!contains(v) || !contains(nv)) return false;
    }
    return true;
}

RatVec RationalCone::relint_point() const {
    RatVec p(ambient, Rat(0));
    for (const auto& r : rays)
        for (std::size_t j = 0; j < ambient; ++j) p[j] += Rat(r[j]);
    return p;
}

RationalCone intersect(const RationalCone& a, const RationalCone& b) {
    if (a.ambient != b.ambient) throw DimensionMismatch("cone ambient mismatch");
    auto ineqs = to_ratvecs(a.facets);
    for (const auto& f : b.facets) ineqs.push_back(to_rat(f));
    auto eqs = to_ratvecs(a.equations);
    for (const auto& e : b.equations) eqs.push_back(to_rat(e));
    return cone_from_inequalities(a.ambient, ineqs, eqs);
}

RationalCone dual(const RationalCone& c) {
    return cone_from_rays(c.ambient, to_ratvecs(c.facets), to_ratvecs(c.equations));
}

RationalCone face_at(const RationalCone& c, const RatVec& y) {
    auto eqs = to_ratvecs(c.equations);
    eqs.push_back(y);
    return cone_from_inequalities(c.ambient, to_ratvecs(c.facets), eqs);
}

bool is_face_of(const RationalCone& f, const RationalCone& c) {
    if (f.ambient != c.ambient) throw DimensionMismatch("cone ambient mismatch");
    if (!c.contains(f)) return false;
    // Supporting functional: the sum of all facet normals of c vanishing on
    // f. If f is a face this exposes exactly f; if not, the exposed face is
    // strictly larger and the equality check fails.
    RatVec y(c.ambient, Rat(0));
    for (const auto& g : c.facets) {
        RatVec gv = to_rat(g);
        bool tight = true;
        for (const auto& r : f.rays)
            if (dot(gv, to_rat(r)) != 0) {
                tight = false;
                break;
            }
        if (tight)
            for (const auto& l : f.lines)
                if (dot(gv, to_rat(l)) != 0) {
                    tight = false;
                    break;
                }
        if (tight)
            for (std::size_t j = 0; j < c.ambient; ++j) y[j] += gv[j];
    }
    return face_at(c, y) == f;
}

bool common_face(const RationalCone& a, const RationalCone& b) {
    RationalCone i = intersect(a, b);
    return is_face_of(i, a) && is_face_of(i, b);
}

} // namespace valfan
