#include "valfan/polyhedra.hpp"

#include <algorithm>
#include <random>

#include "valfan/lp.hpp"

namespace valfan {

bool scalar_vec_less(const ScalarVec& a, const ScalarVec& b) {
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        int s = sign(a[i] - b[i]);
        if (s != 0) return s < 0;
    }
    return a.size() < b.size();
}

namespace {

std::size_t coeff_width(const ScalarVec& v) {
    std::size_t w = 1;
    for (const auto& s : v) w = std::max(w, s.coords().size());
    return w;
}

// <u, d> = 0 for a scalar vector d is equivalent to one rational equation
// per symbol coordinate; u stays rational throughout.
void append_orthogonality_rows(std::vector<RatVec>& rows, const ScalarVec& d) {
    std::size_t w = coeff_width(d);
    for (std::size_t j = 0; j < w; ++j) {
        RatVec row(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) row[i] = d[i].coord(j);
        if (!is_zero(row)) rows.push_back(std::move(row));
    }
}

// Vertices of {w : rows_i.w >= rhs_i, l.w = 0 for lines}: all maximal-rank
// square subsystems, solved exactly and filtered by the sign oracle.
std::vector<ScalarVec> enumerate_vertices(std::size_t n, const std::vector<RatVec>& rows,
                                          const ScalarVec& rhs,
                                          const std::vector<IntVec>& lines) {
    std::vector<RatVec> eq_rows;
    for (const auto& l : lines) eq_rows.push_back(to_rat(l));
    RatMatrix em(eq_rows.size(), n);
    for (std::size_t i = 0; i < eq_rows.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) em.at(i, j) = eq_rows[i][j];
    std::size_t r0 = rank(em);
    if (r0 > n) return {};
    std::size_t need = n - r0;
    std::vector<ScalarVec> out;

    std::vector<std::size_t> idx(need);
    auto try_subset = [&](const std::vector<std::size_t>& sub) {
        RatMatrix m(eq_rows.size() + need, n);
        ScalarVec b(eq_rows.size() + need, Scalar(0));
        for (std::size_t i = 0; i < eq_rows.size(); ++i)
            for (std::size_t j = 0; j < n; ++j) m.at(i, j) = eq_rows[i][j];
        for (std::size_t i = 0; i < need; ++i) {
            for (std::size_t j = 0; j < n; ++j) m.at(eq_rows.size() + i, j) = rows[sub[i]][j];
            b[eq_rows.size() + i] = rhs[sub[i]];
        }
        if (rank(m) != n) return;
        auto x = solve(m, b);
        if (!x) return;
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (sign(dot(rows[i], *x) - rhs[i]) < 0) return;
        out.push_back(std::move(*x));
    };

    if (need == 0) {
        if (r0 == n) try_subset({});
    } else if (rows.size() >= need) {
        for (std::size_t i = 0; i < need; ++i) idx[i] = i;
        for (;;) {
            try_subset(idx);
            std::size_t k = need;
            while (k > 0 && idx[k - 1] == rows.size() - need + k - 1) --k;
            if (k == 0) break;
            ++idx[k - 1];
            for (std::size_t i = k; i < need; ++i) idx[i] = idx[i - 1] + 1;
        }
    }
    std::sort(out.begin(), out.end(), scalar_vec_less);
    out.erase(std::unique(out.begin(), out.end(),
                          [](const ScalarVec& a, const ScalarVec& b) { return a == b; }),
              out.end());
    return out;
}

bool tight_on_vertex(const HomFunctional& f, const ScalarVec& v) {
    return f.eval(v, Rat(1)).is_zero();
}
bool tight_on_dir(const HomFunctional& f, const IntVec& r) { return dot(f.u, to_rat(r)) == 0; }

} // namespace

Cone Cone::from_hrep(std::size_t n, std::vector<HomFunctional> ineqs) {
    for (const auto& f : ineqs)
        if (f.u.size() != n) throw DimensionMismatch("functional width mismatch");
    {
        HomFunctional t0{RatVec(n, Rat(0)), Scalar(1)};
        bool have = false;
        for (const auto& f : ineqs)
            if (f == t0) have = true;
        if (!have) ineqs.push_back(t0);
    }

    Cone c;
    c.n_ = n;
    std::vector<RatVec> urows;
    for (const auto& f : ineqs) urows.push_back(f.u);
    c.height0_ = cone_from_inequalities(n, urows);

    ScalarVec rhs;
    for (const auto& f : ineqs) rhs.push_back(-f.c);
    c.vertices_ = enumerate_vertices(n, urows, rhs, c.height0_.lines);
    c.pointed_ = c.height0_.is_pointed();

    // Functionals tight on every generator cut out the linear span.
    auto tight_everywhere = [&](const HomFunctional& f) {
        for (const auto& v : c.vertices_)
            if (!tight_on_vertex(f, v)) return false;
        for (const auto& r : c.height0_.rays)
            if (!tight_on_dir(f, r)) return false;
        for (const auto& l : c.height0_.lines)
            if (!tight_on_dir(f, l)) return false;
        return true;
    };
    std::vector<HomFunctional> open;
    for (const auto& f : ineqs)
        (tight_everywhere(f) ? c.equations_ : open).push_back(f);
    {
        std::vector<HomFunctional> eqs;
        for (const auto& e : c.equations_) {
            bool dup = false;
            for (const auto& g : eqs)
                if (g == e) dup = true;
            if (!dup) eqs.push_back(e);
        }
        c.equations_ = std::move(eqs);
    }

    if (!c.vertices_.empty()) {
        std::vector<RatVec> eq_u;
        for (const auto& e : c.equations_) eq_u.push_back(e.u);
        RatMatrix m(eq_u.size(), n);
        for (std::size_t i = 0; i < eq_u.size(); ++i)
            for (std::size_t j = 0; j < n; ++j) m.at(i, j) = eq_u[i][j];
        c.dim_ = (n - rank(m)) + 1;
    } else {
        c.dim_ = c.height0_.dim();
    }

    // Facet = inequality whose face has codimension one; the face is read
    // off the generators it is tight on.
    std::vector<std::pair<std::vector<std::size_t>, RationalCone>> sigs;
    for (const auto& f : open) {
        std::vector<std::size_t> tv;
        for (std::size_t i = 0; i < c.vertices_.size(); ++i)
            if (tight_on_vertex(f, c.vertices_[i])) tv.push_back(i);
        RationalCone h0face = face_at(c.height0_, f.u);
        std::size_t fdim;
        if (!tv.empty()) {
            std::vector<RatVec> tight_u;
            for (const auto& g : ineqs) {
                bool t = true;
                for (std::size_t i : tv)
                    if (!tight_on_vertex(g, c.vertices_[i])) {
                        t = false;
                        break;
                    }
                if (t)
                    for (const auto& r : h0face.rays)
                        if (!tight_on_dir(g, r)) {
                            t = false;
                            break;
                        }
                if (t)
                    for (const auto& l : h0face.lines)
                        if (!tight_on_dir(g, l)) {
                            t = false;
                            break;
                        }
                if (t) tight_u.push_back(g.u);
            }
            RatMatrix m(tight_u.size(), n);
            for (std::size_t i = 0; i < tight_u.size(); ++i)
                for (std::size_t j = 0; j < n; ++j) m.at(i, j) = tight_u[i][j];
            fdim = (n - rank(m)) + 1;
        } else {
            fdim = h0face.dim();
        }
        if (fdim + 1 != c.dim_) continue;
        auto sig = std::make_pair(tv, h0face);
        bool dup = false;
        for (const auto& s : sigs)
            if (s.first == sig.first && s.second == sig.second) dup = true;
        if (dup) continue;
        sigs.push_back(std::move(sig));
        c.facets_.push_back(f);
    }
    return c;
}

Cone Cone::at_height0(const RationalCone& base) {
    Cone c;
    c.n_ = base.ambient;
    c.height0_ = base;
    c.dim_ = base.dim();
    c.pointed_ = base.is_pointed();
    for (const auto& f : base.facets) c.facets_.push_back({to_rat(f), Scalar(0)});
    for (const auto& e : base.equations) c.equations_.push_back({to_rat(e), Scalar(0)});
    c.equations_.push_back({RatVec(base.ambient, Rat(0)), Scalar(1)}); // t = 0
    return c;
}

Cone Cone::from_vertices(std::size_t n, std::vector<ScalarVec> vertices,
                         const RationalCone& recession) {
    if (vertices.empty()) return at_height0(recession);
    for (const auto& v : vertices)
        if (v.size() != n) throw DimensionMismatch("vertex width mismatch");

    // Rational normals tight on the whole cone: orthogonal to all vertex
    // differences, recession rays, and lines (expanded coordinatewise).
    std::vector<RatVec> eq_sys;
    for (std::size_t i = 1; i < vertices.size(); ++i) {
        ScalarVec d(n);
        for (std::size_t j = 0; j < n; ++j) d[j] = vertices[i][j] - vertices[0][j];
        append_orthogonality_rows(eq_sys, d);
    }
    for (const auto& r : recession.rays) eq_sys.push_back(to_rat(r));
    for (const auto& l : recession.lines) eq_sys.push_back(to_rat(l));
    RatMatrix esys(eq_sys.size(), n);
    for (std::size_t i = 0; i < eq_sys.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) esys.at(i, j) = eq_sys[i][j];
    std::vector<RatVec> u_eq = eq_sys.empty() ? [&] {
        std::vector<RatVec> all;
        for (std::size_t i = 0; i < n; ++i) {
            RatVec e(n, Rat(0));
            e[i] = 1;
            all.push_back(e);
        }
        return all;
    }()
                                              : kernel(esys);
    std::size_t d = (n + 1) - u_eq.size();

    std::vector<HomFunctional> ineqs;
    for (const auto& u : u_eq) {
        Scalar c = -dot(u, vertices[0]);
        ineqs.push_back({u, c});
        RatVec nu = u;
        for (auto& x : nu) x = -x;
        ineqs.push_back({nu, -c});
    }

    // Candidate facet normals from spanning generator subsets.
    struct Gen {
        bool is_vertex;
        std::size_t idx;
    };
    std::vector<Gen> gens;
    for (std::size_t i = 0; i < vertices.size(); ++i) gens.push_back({true, i});
    for (std::size_t i = 0; i < recession.rays.size(); ++i) gens.push_back({false, i});
    std::size_t nl = recession.lines.size();
    std::size_t pick = d >= 1 + nl ? d - 1 - nl : 0;

    auto rank_of = [&](const std::vector<RatVec>& rows) {
        RatMatrix m(rows.size(), n);
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < n; ++j) m.at(i, j) = rows[i][j];
        return rank(std::move(m));
    };

    auto consider = [&](const std::vector<std::size_t>& sub) {
        std::size_t v0 = gens.size();
        for (std::size_t g : sub)
            if (gens[g].is_vertex) {
                v0 = gens[g].idx;
                break;
            }
        if (v0 == gens.size()) return;
        std::vector<RatVec> sys;
        for (std::size_t g : sub) {
            if (gens[g].is_vertex) {
                if (gens[g].idx == v0) continue;
                ScalarVec diff(n);
                for (std::size_t j = 0; j < n; ++j)
                    diff[j] = vertices[gens[g].idx][j] - vertices[v0][j];
                append_orthogonality_rows(sys, diff);
            } else {
                sys.push_back(to_rat(recession.rays[gens[g].idx]));
            }
        }
        for (const auto& l : recession.lines) sys.push_back(to_rat(l));
        RatMatrix m(sys.size(), n);
        for (std::size_t i = 0; i < sys.size(); ++i)
            for (std::size_t j = 0; j < n; ++j) m.at(i, j) = sys[i][j];
        auto w = sys.empty() ? [&] {
            std::vector<RatVec> all;
            for (std::size_t i = 0; i < n; ++i) {
                RatVec e(n, Rat(0));
                e[i] = 1;
                all.push_back(e);
            }
            return all;
        }()
                             : kernel(m);
        // The subset spans a facet direction space exactly when the normal
        // space exceeds the span normals by one dimension.
        if (w.size() != u_eq.size() + 1) return;
        RatVec u;
        for (const auto& cand : w) {
            auto rows = u_eq;
            rows.push_back(cand);
            if (rank_of(rows) == u_eq.size() + 1) {
                u = cand;
                break;
            }
        }
        if (u.empty()) return;
        Scalar c = -dot(u, vertices[v0]);
        int lo = 0, hi = 0;
        for (const auto& v : vertices) {
            int s = sign(dot(u, v) + c);
            if (s > 0) hi = 1;
            if (s < 0) lo = 1;
        }
        for (const auto& r : recession.rays) {
            int s = sgn(dot(u, to_rat(r)));
            if (s > 0) hi = 1;
            if (s < 0) lo = 1;
        }
        if (lo && hi) return;
        if (lo) {
            for (auto& x : u) x = -x;
            c = -c;
        }
        ineqs.push_back({u, c});
    };

    if (pick == 0) {
        // handled by t >= 0 and the span equations
    } else if (gens.size() >= pick) {
        std::vector<std::size_t> idx(pick);
        for (std::size_t i = 0; i < pick; ++i) idx[i] = i;
        for (;;) {
            consider(idx);
            std::size_t k = pick;
            while (k > 0 && idx[k - 1] == gens.size() - pick + k - 1) --k;
            if (k == 0) break;
            ++idx[k - 1];
            for (std::size_t i = k; i < pick; ++i) idx[i] = idx[i - 1] + 1;
        }
    }

    Cone c = from_hrep(n, ineqs);
    // The H-description must reproduce the generators exactly.
    std::vector<ScalarVec> vs = vertices;
    std::sort(vs.begin(), vs.end(), scalar_vec_less);
    vs.erase(std::unique(vs.begin(), vs.end(),
                         [](const ScalarVec& a, const ScalarVec& b) { return a == b; }),
             vs.end());
    if (c.vertices() != vs || !(c.height0() == recession))
        throw NotValid("generators do not describe a cone with rational facet directions");
    return c;
}

bool Cone::contains(const ScalarVec& w, const Rat& t) const {
    if (w.size() != n_) throw DimensionMismatch("point width mismatch");
    if (t < 0) return false;
    for (const auto& e : equations_)
        if (!e.eval(w, t).is_zero()) return false;
    for (const auto& f : facets_)
        if (sign(f.eval(w, t)) < 0) return false;
    return true;
}

bool Cone::contains(const Cone& other) const {
    for (const auto& v : other.vertices_)
        if (!contains(v, Rat(1))) return false;
    for (const auto& r : other.height0_.rays) {
        ScalarVec w(n_);
        for (std::size_t j = 0; j < n_; ++j) w[j] = Scalar(Rat(r[j]));
        if (!contains(w, Rat(0))) return false;
    }
    for (const auto& l : other.height0_.lines) {
        ScalarVec w(n_), nw(n_);
        for (std::size_t j = 0; j < n_; ++j) {
            w[j] = Scalar(Rat(l[j]));
            nw[j] = Scalar(Rat(-l[j]));
        }
        if (!contains(w, Rat(0)) || !contains(nw, Rat(0))) return false;
    }
    return true;
}

bool Cone::operator==(const Cone& o) const {
    if (n_ != o.n_) return false;
    if (!(height0_ == o.height0_)) return false;
    if (vertices_.size() != o.vertices_.size()) return false;
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        if (!(vertices_[i] == o.vertices_[i])) return false;
    return true;
}

Cone intersect(const Cone& a, const Cone& b) {
    if (a.n() != b.n()) throw DimensionMismatch("cone ambient mismatch");
    std::vector<HomFunctional> ineqs = a.facets();
    auto add_eqs = [&](const Cone& c) {
        for (const auto& e : c.equations()) {
            ineqs.push_back(e);
            RatVec nu = e.u;
            for (auto& x : nu) x = -x;
            ineqs.push_back({nu, -e.c});
        }
    };
    add_eqs(a);
    for (const auto& f : b.facets()) ineqs.push_back(f);
    add_eqs(b);
    return Cone::from_hrep(a.n(), ineqs);
}

bool is_face(const Cone& f, const Cone& c) {
    if (f.n() != c.n()) throw DimensionMismatch("cone ambient mismatch");
    if (!c.contains(f)) return false;
    // Sum of the facet normals of c tight on f exposes the smallest face of
    // c containing f.
    RatVec yu(c.n(), Rat(0));
    Scalar yc(0);
    for (const auto& g : c.facets()) {
        bool tight = true;
        for (const auto& v : f.vertices())
            if (!tight_on_vertex(g, v)) {
                tight = false;
                break;
            }
        if (tight)
            for (const auto& r : f.height0().rays)
                if (!tight_on_dir(g, r)) {
                    tight = false;
                    break;
                }
        if (tight)
            for (const auto& l : f.height0().lines)
                if (!tight_on_dir(g, l)) {
                    tight = false;
                    break;
                }
        if (!tight) continue;
        for (std::size_t j = 0; j < c.n(); ++j) yu[j] += g.u[j];
        yc += g.c;
    }
    std::vector<HomFunctional> ineqs = c.facets();
    for (const auto& e : c.equations()) {
        ineqs.push_back(e);
        RatVec nu = e.u;
        for (auto& x : nu) x = -x;
        ineqs.push_back({nu, -e.c});
    }
    ineqs.push_back({yu, yc});
    {
        RatVec nu = yu;
        for (auto& x : nu) x = -x;
        ineqs.push_back({nu, -yc});
    }
    return Cone::from_hrep(c.n(), ineqs) == f;
}

bool common_face_test(const Cone& a, const Cone& b) {
    Cone i = intersect(a, b);
    return is_face(i, a) && is_face(i, b);
}

std::vector<Cone> proper_facets(const Cone& c) {
    std::vector<Cone> out;
    std::vector<HomFunctional> base = c.facets();
    for (const auto& e : c.equations()) {
        base.push_back(e);
        RatVec nu = e.u;
        for (auto& x : nu) x = -x;
        base.push_back({nu, -e.c});
    }
    for (const auto& f : c.facets()) {
        auto ineqs = base;
        RatVec nu = f.u;
        for (auto& x : nu) x = -x;
        ineqs.push_back({nu, -f.c});
        Cone face = Cone::from_hrep(c.n(), ineqs);
        bool dup = false;
        for (const auto& g : out)
            if (g == face) dup = true;
        if (!dup) out.push_back(std::move(face));
    }
    return out;
}

std::vector<Cone> face_closure(const Cone& c) {
    std::vector<Cone> out{c};
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (auto& f : proper_facets(out[i])) {
            bool dup = false;
            for (const auto& g : out)
                if (g == f) dup = true;
            if (!dup) out.push_back(std::move(f));
        }
    }
    return out;
}

Fan Fan::from_max(std::size_t n, std::vector<Cone> max_cones) {
    Fan fan;
    fan.n_ = n;
    for (std::size_t i = 0; i < max_cones.size(); ++i)
        for (std::size_t j = i + 1; j < max_cones.size(); ++j)
            if (!common_face_test(max_cones[i], max_cones[j]))
                throw NotPairwiseFaces("cones " + std::to_string(i) + " and " +
                                       std::to_string(j) + " do not meet in a common face");
    fan.max_ = std::move(max_cones);
    for (const auto& c : fan.max_)
        for (auto& f : face_closure(c)) {
            bool dup = false;
            for (const auto& g : fan.all_)
                if (g == f) dup = true;
            if (!dup) fan.all_.push_back(std::move(f));
        }
    return fan;
}

const Cone* Fan::locate(const ScalarVec& w, const Rat& t) const {
    for (const auto& c : max_)
        if (c.contains(w, t)) return &c;
    return nullptr;
}

std::vector<RationalCone> rational_proper_facets(const RationalCone& c) {
    std::vector<RationalCone> out;
    for (const auto& f : c.facets) {
        RationalCone face = face_at(c, to_rat(f));
        bool dup = false;
        for (const auto& g : out)
            if (g == face) dup = true;
        if (!dup) out.push_back(std::move(face));
    }
    return out;
}

std::vector<RationalCone> rational_face_closure(const RationalCone& c) {
    std::vector<RationalCone> out{c};
    for (std::size_t i = 0; i < out.size(); ++i)
        for (auto& f : rational_proper_facets(out[i])) {
            bool dup = false;
            for (const auto& g : out)
                if (g == f) dup = true;
            if (!dup) out.push_back(std::move(f));
        }
    return out;
}

RationalFan rational_fan_from_max(std::size_t ambient, std::vector<RationalCone> max_cones) {
    RationalFan fan;
    fan.ambient = ambient;
    for (std::size_t i = 0; i < max_cones.size(); ++i)
        for (std::size_t j = i + 1; j < max_cones.size(); ++j)
            if (!common_face(max_cones[i], max_cones[j]))
                throw NotPairwiseFaces("cones " + std::to_string(i) + " and " +
                                       std::to_string(j) + " do not meet in a common face");
    fan.max = std::move(max_cones);
    for (const auto& c : fan.max)
        for (auto& f : rational_face_closure(c)) {
            bool dup = false;
            for (const auto& g : fan.all)
                if (g == f) dup = true;
            if (!dup) fan.all.push_back(std::move(f));
        }
    return fan;
}

const RationalCone* RationalFan::locate(const RatVec& x) const {
    for (const auto& c : max)
        if (c.contains(x)) return &c;
    return nullptr;
}

namespace {

constexpr unsigned kSamplingSeed = 0x5EED;

bool cone_has_face(const Cone& c, const Cone& face) {
    for (const auto& f : proper_facets(c))
        if (f == face) return true;
    return false;
}

} // namespace

CompletenessReport is_complete(const Fan& fan) {
    CompletenessReport rep;
    std::size_t full = fan.n() + 1;
    for (std::size_t i = 0; i < fan.max_cones().size(); ++i)
        if (fan.max_cones()[i].dim() != full) {
            rep.detail = "maximal cone " + std::to_string(i) + " is not full-dimensional";
            return rep;
        }
    // Every wall bounds two chambers; walls on the height-zero boundary
    // bound exactly one.
    std::vector<Cone> walls;
    for (const auto& c : fan.max_cones())
        for (auto& f : proper_facets(c)) {
            bool dup = false;
            for (const auto& w : walls)
                if (w == f) dup = true;
            if (!dup) walls.push_back(std::move(f));
        }
    for (const auto& w : walls) {
        std::size_t count = 0;
        for (const auto& c : fan.max_cones())
            if (cone_has_face(c, w)) ++count;
        std::size_t expected = w.meets_height1() ? 2 : 1;
        if (count != expected) {
            rep.detail = "free wall (bounds " + std::to_string(count) + " chambers)";
            return rep;
        }
    }
    std::mt19937 rng(kSamplingSeed);
    std::uniform_int_distribution<int> d(-9, 9);
    for (int iter = 0; iter < 64; ++iter) {
        ScalarVec w(fan.n());
        bool zero = true;
        for (auto& x : w) {
            int v = d(rng);
            x = Scalar(v);
            if (v != 0) zero = false;
        }
        Rat t(std::abs(d(rng)));
        if (zero && t == 0) continue;
        if (!fan.locate(w, t)) {
            rep.detail = "uncovered direction";
            return rep;
        }
    }
    rep.complete = true;
    return rep;
}

CompletenessReport is_complete(const RationalFan& fan) {
    CompletenessReport rep;
    for (std::size_t i = 0; i < fan.max.size(); ++i)
        if (fan.max[i].dim() != fan.ambient) {
            rep.detail = "maximal cone " + std::to_string(i) + " is not full-dimensional";
            return rep;
        }
    std::vector<RationalCone> walls;
    for (const auto& c : fan.max)
        for (auto& f : rational_proper_facets(c)) {
            bool dup = false;
            for (const auto& w : walls)
                if (w == f) dup = true;
            if (!dup) walls.push_back(std::move(f));
        }
    for (const auto& w : walls) {
        std::size_t count = 0;
        for (const auto& c : fan.max)
            for (const auto& f : rational_proper_facets(c))
                if (f == w) {
                    ++count;
                    break;
                }
        if (count != 2) {
            rep.detail = "free wall (bounds " + std::to_string(count) + " chambers)";
            return rep;
        }
    }
    std::mt19937 rng(kSamplingSeed);
    std::uniform_int_distribution<int> d(-9, 9);
    for (int iter = 0; iter < 64; ++iter) {
        RatVec x(fan.ambient);
        bool zero = true;
        for (auto& v : x) {
            int q = d(rng);
            v = q;
            if (q != 0) zero = false;
        }
        if (zero) continue;
        if (!fan.locate(x)) {
            rep.detail = "uncovered direction";
            return rep;
        }
    }
    rep.complete = true;
    return rep;
}

Polyhedron Polyhedron::from_hrep(std::size_t n, const std::vector<AffIneq>& ineqs) {
    std::vector<HomFunctional> hf;
    for (const auto& a : ineqs) hf.push_back({a.u, -a.b});
    Polyhedron p;
    p.hom_ = Cone::from_hrep(n, hf);
    p.empty_ = !p.hom_.meets_height1();
    return p;
}

Polyhedron Polyhedron::slice_of(const Cone& hom) {
    Polyhedron p;
    p.hom_ = hom;
    p.empty_ = !hom.meets_height1();
    return p;
}

std::size_t Polyhedron::dim() const {
    if (empty_) return 0;
    return hom_.dim() - 1;
}

Cone homogenize(const Polyhedron& p) { return p.homogenization(); }

Dehomogenized dehomogenize(const Fan& fan) {
    Dehomogenized out;
    for (const auto& c : fan.max_cones()) {
        if (c.meets_height1())
            out.max_polyhedra.push_back(Polyhedron::slice_of(c));
        else
            out.height0_max.push_back(c.height0());
    }
    return out;
}

Edge boundary_edge_through(const Polyhedron& p, const ScalarVec& x) {
    if (p.dim() != 2) throw DimensionMismatch("polyhedron is not two-dimensional");
    if (!p.contains(x)) throw NotOnBoundary("point outside the polyhedron");
    const Cone& hom = p.homogenization();
    std::vector<const HomFunctional*> tight;
    for (const auto& f : hom.facets()) {
        if (is_zero(f.u)) continue; // t >= 0 facet does not meet height one
        if (f.eval(x, Rat(1)).is_zero()) tight.push_back(&f);
    }
    if (tight.empty()) throw NotOnBoundary("point is interior");
    if (tight.size() > 1) throw NonUnique("point is a vertex");
    std::vector<HomFunctional> ineqs = hom.facets();
    for (const auto& e : hom.equations()) {
        ineqs.push_back(e);
        RatVec nu = e.u;
        for (auto& v : nu) v = -v;
        ineqs.push_back({nu, -e.c});
    }
    RatVec nu = tight[0]->u;
    for (auto& v : nu) v = -v;
    ineqs.push_back({nu, -tight[0]->c});
    Cone edge = Cone::from_hrep(hom.n(), ineqs);
    Edge out;
    if (!edge.vertices().empty()) out.a = edge.vertices().front();
    if (edge.vertices().size() > 1) out.b = edge.vertices().back();
    out.rays = edge.height0().rays;
    return out;
}

namespace {

std::vector<LpRow> to_lp_rows(const std::vector<AffIneq>& cs) {
    std::vector<LpRow> rows;
    for (const auto& c : cs) rows.push_back({c.u, Rel::GE, c.b});
    return rows;
}

} // namespace

ScalarVec rational_point(const std::vector<AffIneq>& constraints, std::size_t n) {
    auto r = lp_feasible(n, to_lp_rows(constraints));
    if (r.status != LpStatus::Optimal) throw EmptyPolyhedron("no feasible point");
    return r.x;
}

FarkasCertificate farkas_classical(const std::vector<AffIneq>& constraints, const RatVec& u0,
                                   const Scalar& a0) {
    auto rows = to_lp_rows(constraints);
    auto r = lp_minimize(u0, rows);
    if (r.status == LpStatus::Infeasible) throw EmptyPolyhedron("P is empty");
    if (r.status == LpStatus::Unbounded) {
        // u0 unbounded below on P: exhibit a point below a0.
        RatVec nu0 = u0;
        for (auto& v : nu0) v = -v;
        rows.push_back({nu0, Rel::GE, Scalar(1) - a0});
        auto w = lp_feasible(u0.size(), rows);
        throw NotValidError(w.x);
    }
    if (sign(r.objective - a0) < 0) throw NotValidError(r.x);
    FarkasCertificate cert;
    cert.combined_u.assign(u0.size(), Rat(0));
    cert.combined_a = Scalar(0);
    for (std::size_t i = 0; i < constraints.size(); ++i) {
        cert.multipliers.push_back(Scalar(r.dual[i]));
        for (std::size_t j = 0; j < u0.size(); ++j)
            cert.combined_u[j] += r.dual[i] * constraints[i].u[j];
        cert.combined_a += Rat(r.dual[i]) * constraints[i].b;
    }
    return cert;
}

FarkasCertificate farkas_rational(const std::vector<AffIneq>& constraints, const RatVec& u0,
                                  const Scalar& a0) {
    auto rows = to_lp_rows(constraints);
    auto r = lp_minimize(u0, rows);
    if (r.status == LpStatus::Infeasible) throw EmptyPolyhedron("P is empty");
    if (r.status == LpStatus::Unbounded) {
        RatVec nu0 = u0;
        for (auto& v : nu0) v = -v;
        rows.push_back({nu0, Rel::GE, Scalar(1) - a0});
        auto w = lp_feasible(u0.size(), rows);
        throw NotValidError(w.x);
    }
    if (sign(r.objective - a0) < 0) throw NotValidError(r.x);
    // Active set at the optimum, then the pure-rational conic solve for
    // multipliers supported there.
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < constraints.size(); ++i)
        if ((dot(constraints[i].u, r.x) - constraints[i].b).is_zero()) active.push_back(i);
    std::size_t n = u0.size();
    std::vector<LpRow> feas;
    for (std::size_t j = 0; j < n; ++j) {
        LpRow row;
        row.a.assign(active.size(), Rat(0));
        for (std::size_t i = 0; i < active.size(); ++i) row.a[i] = constraints[active[i]].u[j];
        row.rel = Rel::EQ;
        row.b = Scalar(u0[j]);
        feas.push_back(std::move(row));
    }
    for (std::size_t i = 0; i < active.size(); ++i) {
        LpRow row;
        row.a.assign(active.size(), Rat(0));
        row.a[i] = 1;
        row.rel = Rel::GE;
        row.b = Scalar(0);
        feas.push_back(std::move(row));
    }
    auto sol = lp_feasible(active.size(), feas);
    if (sol.status != LpStatus::Optimal)
        throw NotValid("active-set multipliers do not exist"); // cannot happen when valid
    FarkasCertificate cert;
    cert.multipliers.assign(constraints.size(), Scalar(0));
    cert.combined_u.assign(n, Rat(0));
    cert.combined_a = Scalar(0);
    for (std::size_t i = 0; i < active.size(); ++i) {
        Rat ci = sol.x[i].rational_value();
        cert.multipliers[active[i]] = Scalar(ci);
        for (std::size_t j = 0; j < n; ++j) cert.combined_u[j] += ci * constraints[active[i]].u[j];
        cert.combined_a += ci * constraints[active[i]].b;
    }
    return cert;
}

RationalCone thin_rational_cone(const IntVec& u, const ScalarVec& w) {
    std::size_t n = u.size();
    if (w.size() != n) throw DimensionMismatch("vector width mismatch");
    RatVec ur = to_rat(u);
    Scalar den = dot(ur, w);
    if (sign(den) <= 0) throw NotInteriorSide("<u,w> must be positive");

    // Extend u to a rational basis with standard vectors.
    std::vector<RatVec> basis{ur};
    for (std::size_t i = 0; i < n && basis.size() < n; ++i) {
        RatVec e(n, Rat(0));
        e[i] = 1;
        auto trial = basis;
        trial.push_back(e);
        RatMatrix m(trial.size(), n);
        for (std::size_t a = 0; a < trial.size(); ++a)
            for (std::size_t b = 0; b < n; ++b) m.at(a, b) = trial[a][b];
        if (rank(std::move(m)) == trial.size()) basis.push_back(std::move(e));
    }

    // Rational l <= <u_i,w>/<u,w> <= h, certified by the sign oracle; found
    // by doubling, which stalls exactly when no rational bound exists.
    auto ratio_bounds = [&](const Scalar& num) -> std::pair<Rat, Rat> {
        auto below = [&](const Rat& q) { return sign(num - q * den) >= 0; }; // q <= ratio
        auto above = [&](const Rat& q) { return sign(q * den - num) >= 0; }; // ratio <= q
        Rat lo(-1), hi(1);
        int steps = 0;
        while (!below(lo)) {
            lo *= 2;
            if (++steps > 256) throw OracleStall("ratio has no rational lower bound");
        }
        steps = 0;
        while (!above(hi)) {
            hi *= 2;
            if (++steps > 256) throw OracleStall("ratio has no rational upper bound");
        }
        return {lo, hi};
    };

    std::vector<RatVec> ineqs{ur};
    for (std::size_t i = 1; i < basis.size(); ++i) {
        Scalar num = dot(basis[i], w);
        auto [lo, hi] = ratio_bounds(num);
        RatVec low(n), high(n);
        for (std::size_t j = 0; j < n; ++j) {
            low[j] = basis[i][j] - lo * ur[j];
            high[j] = hi * ur[j] - basis[i][j];
        }
        ineqs.push_back(std::move(low));
        ineqs.push_back(std::move(high));
    }
    RationalCone c = cone_from_inequalities(n, ineqs);
    // w in c, c in u^wedge, c cap u_perp = {0}; all certified here.
    for (const auto& f : c.facets)
        if (sign(dot(to_rat(f), w)) < 0) throw NotValid("thin cone misses w");
    if (!face_at(c, ur).is_zero()) throw NotValid("thin cone touches u_perp");
    return c;
}

Fan pullback(const RationalFan& fan, const ScalarVec& gamma_bar) {
    bool nonzero = false;
    for (const auto& g : gamma_bar)
        if (!g.is_zero()) nonzero = true;
    if (!nonzero) throw ZeroGammaBar("gamma_bar must be nonzero");
    std::size_t k = gamma_bar.size();
    if (fan.ambient < k) throw DimensionMismatch("fan ambient too small");
    std::size_t n = fan.ambient - k;

    std::vector<Cone> pre;
    for (const auto& c : fan.max) {
        std::vector<HomFunctional> ineqs;
        auto convert = [&](const IntVec& row) {
            RatVec u(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(n));
            Scalar cc(0);
            for (std::size_t j = 0; j < k; ++j) cc += Rat(row[n + j]) * gamma_bar[j];
            return HomFunctional{std::move(u), std::move(cc)};
        };
        for (const auto& f : c.facets) ineqs.push_back(convert(f));
        for (const auto& e : c.equations) {
            HomFunctional h = convert(e);
            ineqs.push_back(h);
            for (auto& x : h.u) x = -x;
            h.c = -h.c;
            ineqs.push_back(h);
        }
        pre.push_back(Cone::from_hrep(n, ineqs));
    }
    // Preimages can coincide or nest; keep one copy of each maximal one.
    std::vector<Cone> max;
    for (std::size_t i = 0; i < pre.size(); ++i) {
        bool drop = false;
        for (std::size_t j = 0; j < pre.size() && !drop; ++j) {
            if (i == j) continue;
            if (pre[i] == pre[j]) {
                if (j < i) drop = true;
            } else if (pre[j].contains(pre[i])) {
                drop = true;
            }
        }
        if (!drop) max.push_back(pre[i]);
    }
    return Fan::from_max(n, std::move(max));
}

} // namespace valfan
