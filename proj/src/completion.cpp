#include <algorithm>
#include <map>

#include "valfan/completion.hpp"
#include "valfan/lp.hpp"

namespace valfan {

namespace {

/// Functional positive on sigma, negative on tau, vanishing exactly on
/// sigma cap tau: a relative interior point of (sigma - tau)^vee.
RatVec rational_separator(const RationalCone& s, const RationalCone& t) {
    std::vector<RatVec> rays;
    for (const auto& r : s.rays) rays.push_back(to_rat(r));
    for (const auto& r : t.rays) {
        RatVec nr = to_rat(r);
        for (auto& x : nr) x = -x;
        rays.push_back(std::move(nr));
    }
    std::vector<RatVec> lines;
    for (const auto& l : s.lines) lines.push_back(to_rat(l));
    for (const auto& l : t.lines) lines.push_back(to_rat(l));
    return dual(cone_from_rays(s.ambient, rays, lines)).relint_point();
}

std::size_t span_rank(const RationalCone& c, const RatVec* extra = nullptr) {
    std::vector<RatVec> rows;
    for (const auto& r : c.rays) rows.push_back(to_rat(r));
    for (const auto& l : c.lines) rows.push_back(to_rat(l));
    if (extra) rows.push_back(*extra);
    if (rows.empty()) return 0;
    return rank(RatMatrix::from_rows(rows));
}

/// Drop maximal cones contained in other maximal cones (canonicalization
/// for inputs that list faces as maximal).
std::vector<RationalCone> drop_contained(std::vector<RationalCone> max) {
    std::vector<RationalCone> out;
    for (std::size_t i = 0; i < max.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < max.size(); ++j)
            if (j != i && !(max[j] == max[i]) && max[j].contains(max[i])) redundant = true;
        if (!redundant) out.push_back(max[i]);
    }
    if (out.empty() && !max.empty()) out.push_back(max.front());
    return out;
}

std::vector<RationalCone> with_extra(const std::vector<RationalCone>& max,
                                     const std::vector<RationalCone>& extra) {
    std::vector<RationalCone> out = max;
    out.insert(out.end(), extra.begin(), extra.end());
    return out;
}

bool try_fan(std::size_t ambient, const std::vector<RationalCone>& max, RationalFan* out) {
    try {
        RationalFan f = rational_fan_from_max(ambient, max);
        if (out) *out = std::move(f);
        return true;
    } catch (const NotPairwiseFaces&) {
        return false;
    }
}

/// Deterministic sampling directions for the facet-selection heuristic.
std::vector<RatVec> sample_directions(std::size_t dim, std::uint64_t seed, std::size_t count) {
    std::uint64_t state = seed ? seed : 1;
    auto next = [&] {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return state >> 33;
    };
    std::vector<RatVec> out;
    while (out.size() < count) {
        RatVec d(dim);
        bool zero = true;
        for (auto& x : d) {
            long v = static_cast<long>(next() % 19) - 9;
            x = Rat(v);
            if (v != 0) zero = false;
        }
        if (!zero) out.push_back(std::move(d));
    }
    return out;
}

/// Candidate centers for the star-join fast path.
std::vector<IntVec> star_centers(const RationalFan& fan) {
    std::size_t d = fan.ambient;
    std::vector<RatVec> cands;
    RatVec ray_sum(d, Rat(0));
    for (const auto& c : fan.max)
        for (const auto& r : c.rays)
            for (std::size_t j = 0; j < d; ++j) ray_sum[j] += Rat(r[j]);
    RatVec neg = ray_sum;
    for (auto& x : neg) x = -x;
    cands.push_back(std::move(neg));
    cands.push_back(RatVec(d, Rat(1)));
    cands.push_back(RatVec(d, Rat(-1)));
    for (std::size_t j = 0; j < d; ++j) {
        RatVec e(d, Rat(0));
        e[j] = 1;
        cands.push_back(e);
        for (auto& x : e) x = -x;
        cands.push_back(std::move(e));
    }
    std::vector<IntVec> out;
    for (const auto& c : cands) {
        if (is_zero(c)) continue;
        IntVec p = primitive(c);
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
    }
    return out;
}

bool in_order(const EngineConfig& cfg, Strategy s) {
    return std::find(cfg.order.begin(), cfg.order.end(), s) != cfg.order.end();
}

// --- plane sectors ---------------------------------------------------------

Scalar cross2(const ScalarVec& a, const ScalarVec& b) { return a[0] * b[1] - a[1] * b[0]; }

bool same_direction(const ScalarVec& a, const ScalarVec& b) {
    if (sign(cross2(a, b)) != 0) return false;
    for (std::size_t j = 0; j < 2; ++j)
        if (sign(a[j]) != sign(b[j])) return false;
    return true;
}

/// 0 for the open upper half plus the positive x-axis, 1 for the rest.
int half_of(const ScalarVec& r) {
    int sy = sign(r[1]);
    if (sy > 0) return 0;
    if (sy == 0 && sign(r[0]) > 0) return 0;
    return 1;
}

bool ccw_less(const ScalarVec& a, const ScalarVec& b) {
    int ha = half_of(a), hb = half_of(b);
    if (ha != hb) return ha < hb;
    return sign(cross2(a, b)) > 0;
}

ScalarVec rat_ray(int x, int y) { return {Scalar(x), Scalar(y)}; }

/// Strictly inside the open counterclockwise arc from a to b (arc of any
/// angle in (0, 2pi]; a == b means the full circle minus the ray a).
bool inside_arc(const ScalarVec& a, const ScalarVec& b, const ScalarVec& m) {
    if (same_direction(m, a) || same_direction(m, b)) return false;
    if (same_direction(a, b)) return true; // full circle
    int c = sign(cross2(a, b));
    if (c > 0) return sign(cross2(a, m)) > 0 && sign(cross2(m, b)) > 0;
    // reflex (or straight) arc: complement of the convex arc b -> a
    return !(sign(cross2(b, m)) >= 0 && sign(cross2(m, a)) >= 0);
}

} // namespace

RationalFan purify(const RationalFan& fan, std::vector<CompletionStep>* trace) {
    std::size_t d = fan.ambient;
    std::vector<RationalCone> max = drop_contained(fan.max);
    for (bool again = true; again;) {
        again = false;
        for (std::size_t i = 0; i < max.size(); ++i) {
            if (span_rank(max[i]) == d) continue;
            const RationalCone& sigma = max[i];
            // direction off the span, pushed past the other cones' separators
            RatVec v;
            for (std::size_t j = 0; j < d; ++j) {
                RatVec e(d, Rat(0));
                e[j] = 1;
                if (span_rank(sigma, &e) > span_rank(sigma)) {
                    v = std::move(e);
                    break;
                }
            }
            RatVec p = sigma.relint_point();
            Rat eps(1);
            for (std::size_t j = 0; j < max.size(); ++j) {
                if (j == i) continue;
                RatVec y = rational_separator(sigma, max[j]);
                Rat yv = dot(y, v);
                if (yv >= 0) continue;
                Rat yp = dot(y, p);
                if (yp <= 0) throw NotValid("purify separator degenerate");
                Rat bound = yp / (-2 * yv);
                if (bound < eps) eps = bound;
            }
            RatVec x = p;
            for (std::size_t j = 0; j < d; ++j) x[j] += eps * v[j];
            IntVec ray = primitive(x);
            std::vector<RatVec> rays;
            for (const auto& r : sigma.rays) rays.push_back(to_rat(r));
            rays.push_back(to_rat(ray));
            std::vector<RatVec> lines;
            for (const auto& l : sigma.lines) lines.push_back(to_rat(l));
            RationalCone grown = cone_from_rays(d, rays, lines);
            max[i] = grown;
            if (!try_fan(d, max, nullptr)) throw NotValid("purify broke the fan axiom");
            if (trace) trace->push_back({"purify", ray, {std::move(grown)}});
            again = true;
            break;
        }
    }
    RationalFan out = rational_fan_from_max(d, std::move(max));
    for (const auto& c : fan.max) {
        bool found = false;
        for (const auto& f : out.all)
            if (f == c) found = true;
        if (!found) throw NotValid("purify lost an input cone");
    }
    return out;
}

std::vector<FreeFacet> free_facets(const RationalFan& fan) {
    std::size_t d = fan.ambient;
    std::vector<FreeFacet> out;
    for (std::size_t i = 0; i < fan.max.size(); ++i) {
        const RationalCone& sigma = fan.max[i];
        if (span_rank(sigma) != d) throw NotPure("maximal cone is not full-dimensional");
        for (const auto& f : sigma.facets) {
            RationalCone wall = face_at(sigma, to_rat(f));
            std::size_t owners = 0;
            for (const auto& tau : fan.max)
                if (tau.contains(wall)) ++owners;
            if (owners == 1) {
                IntVec nu = f;
                for (auto& x : nu) x = -x;
                out.push_back({std::move(wall), i, primitive(nu)});
            }
        }
    }
    return out;
}

RationalCone fill_step(const RationalFan& fan, const FreeFacet& facet, const EngineConfig& cfg,
                       std::string* strategy_used) {
    std::size_t d = fan.ambient;
    const RationalCone& wall = facet.facet;
    RatVec nu = to_rat(facet.normal);

    auto cone_over = [&](const RatVec& r) {
        std::vector<RatVec> rays;
        for (const auto& w : wall.rays) rays.push_back(to_rat(w));
        rays.push_back(r);
        std::vector<RatVec> lines;
        for (const auto& l : wall.lines) lines.push_back(to_rat(l));
        return cone_from_rays(d, rays, lines);
    };
    auto accepted = [&](const RationalCone& tau) {
        return tau.is_pointed() && try_fan(d, with_extra(fan.max, {tau}), nullptr);
    };

    // (i) pool of existing rays and their negations
    if (cfg.use_ray_pool) {
        std::vector<IntVec> pool;
        for (const auto& c : fan.max)
            for (const auto& r : c.rays) {
                pool.push_back(r);
                IntVec nr = r;
                for (auto& x : nr) x = -x;
                pool.push_back(std::move(nr));
            }
        std::sort(pool.begin(), pool.end());
        pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
        for (const auto& r : pool) {
            if (dot(nu, to_rat(r)) <= 0) continue; // not outward
            RationalCone tau = cone_over(to_rat(r));
            if (accepted(tau)) {
                if (strategy_used) *strategy_used = "pool-fill";
                return tau;
            }
        }
    }

    // (ii) r = p + eps*nu with exact per-cone contact thresholds
    RatVec p = wall.relint_point();
    std::optional<Rat> threshold;
    RatVec obj(d + 1, Rat(0));
    obj[d] = 1;
    for (const auto& sigma : fan.max) {
        if (sigma.contains(wall)) continue;
        std::vector<LpRow> rows;
        auto aff = [&](const IntVec& u, bool on_shifted, Rel rel) {
            LpRow row;
            row.a.assign(d + 1, Rat(0));
            for (std::size_t j = 0; j < d; ++j) row.a[j] = Rat(u[j]);
            if (on_shifted) {
                row.a[d] = dot(to_rat(u), nu);
                row.b = Scalar(-dot(to_rat(u), p));
            } else {
                row.b = Scalar(0);
            }
            row.rel = rel;
            rows.push_back(std::move(row));
        };
        for (const auto& f : wall.facets) aff(f, false, Rel::GE);
        for (const auto& e : wall.equations) aff(e, false, Rel::EQ);
        for (const auto& f : sigma.facets) aff(f, true, Rel::GE);
        for (const auto& e : sigma.equations) aff(e, true, Rel::EQ);
        LpRow pos;
        pos.a.assign(d + 1, Rat(0));
        pos.a[d] = 1;
        rows.push_back(std::move(pos));
        auto sol = lp_minimize(obj, rows);
        if (sol.status != LpStatus::Optimal) continue;
        Rat a = sol.objective.rational_value();
        if (a <= 0)
            throw NoValidRay("contact threshold vanished at a cone not containing the facet");
        if (!threshold || a < *threshold) threshold = a;
    }

    std::vector<std::pair<Rat, const char*>> attempts;
    if (threshold) {
        if (in_order(cfg, Strategy::ContactFill)) attempts.emplace_back(*threshold, "contact-fill");
        attempts.emplace_back(*threshold / 2, "sliver-fill");
    } else {
        attempts.emplace_back(Rat(1), "contact-fill");
    }
    for (const auto& [eps, name] : attempts) {
        RatVec r = p;
        for (std::size_t j = 0; j < d; ++j) r[j] += eps * nu[j];
        RationalCone tau = cone_over(r);
        if (accepted(tau)) {
            if (strategy_used) *strategy_used = name;
            return tau;
        }
    }
    throw NoValidRay("sliver candidate rejected"); // cannot happen: guard
}

std::vector<RationalCone> star_join(const RationalFan& fan, const RatVec& center) {
    if (is_zero(center)) throw NotStarShaped("zero center");
    RatVec r = to_rat(primitive(center));
    if (fan.locate(r)) throw NotStarShaped("center lies in the support");
    std::vector<RationalCone> batch;
    for (const auto& ff : free_facets(fan)) {
        if (dot(to_rat(ff.normal), r) <= 0) continue; // not visible
        std::vector<RatVec> rays;
        for (const auto& w : ff.facet.rays) rays.push_back(to_rat(w));
        rays.push_back(r);
        std::vector<RatVec> lines;
        for (const auto& l : ff.facet.lines) lines.push_back(to_rat(l));
        batch.push_back(cone_from_rays(fan.ambient, rays, lines));
    }
    if (batch.empty()) throw NotStarShaped("no visible free facet");
    if (!try_fan(fan.ambient, with_extra(fan.max, batch), nullptr))
        throw NotStarShaped("joined cones violate the fan axiom");
    return batch;
}

CompletionReport complete_rational(const RationalFan& fan, const EngineConfig& cfg) {
    std::size_t d = fan.ambient;
    std::size_t cap = std::max<std::size_t>(cfg.cap, 1);
    CompletionReport report;
    RationalFan cur = purify(fan, &report.trace);
    auto samples = sample_directions(d, cfg.seed, 64);

    bool star_welcome = in_order(cfg, Strategy::StarJoin);
    std::size_t star_budget = star_welcome ? 4 : 0;
    while (report.trace.size() < cap) {
        auto ffs = free_facets(cur);
        if (ffs.empty()) break;

        if (star_budget > 0) {
            bool joined = false;
            for (const auto& center : star_centers(cur)) {
                try {
                    auto batch = star_join(cur, to_rat(center));
                    cur = rational_fan_from_max(d, with_extra(cur.max, batch));
                    report.trace.push_back({"star-join", center, std::move(batch)});
                    joined = true;
                    break;
                } catch (const NotStarShaped&) {
                }
            }
            if (joined) continue;
            --star_budget;
        }

        // widest exposure first, estimated on the sampled directions
        std::size_t best = 0, best_score = 0;
        for (std::size_t i = 0; i < ffs.size(); ++i) {
            std::size_t score = 0;
            for (const auto& s : samples)
                if (dot(to_rat(ffs[i].normal), s) > 0 && !cur.locate(s)) ++score;
            if (score > best_score) {
                best_score = score;
                best = i;
            }
        }
        std::string used;
        RationalCone tau = fill_step(cur, ffs[best], cfg, &used);
        IntVec ray = tau.rays.back();
        for (const auto& r : tau.rays) {
            bool fresh = true;
            for (const auto& w : ffs[best].facet.rays)
                if (w == r) fresh = false;
            if (fresh) ray = r;
        }
        cur = rational_fan_from_max(d, with_extra(cur.max, {tau}));
        report.trace.push_back({used, ray, {std::move(tau)}});
    }

    report.fan = std::move(cur);
    report.complete = free_facets(report.fan).empty();
    if (report.complete) {
        auto verdict = verify_completion(fan, report.fan);
        if (!verdict.ok) throw NotValid("engine produced an unverified completion: " + verdict.detail);
    }
    return report;
}

RationalFan replay(const RationalFan& fan, const std::vector<CompletionStep>& trace) {
    std::vector<RationalCone> max = drop_contained(fan.max);
    for (const auto& step : trace) {
        if (step.strategy == "purify") {
            // a purify step replaces the cone it grew
            for (auto& c : max)
                if (step.added.front().contains(c) && !(step.added.front() == c)) {
                    c = step.added.front();
                    break;
                }
        } else {
            max = with_extra(max, step.added);
        }
        RationalFan check;
        if (!try_fan(fan.ambient, max, &check))
            throw NotValid("trace replay broke the fan axiom");
    }
    return rational_fan_from_max(fan.ambient, std::move(max));
}

CompletionVerdict verify_completion(const RationalFan& sub, const RationalFan& full) {
    RationalFan rebuilt;
    if (!try_fan(full.ambient, full.max, &rebuilt)) return {false, "fan axiom fails"};
    for (const auto& c : sub.all) {
        bool found = false;
        for (const auto& d : rebuilt.all)
            if (d == c) found = true;
        if (!found) return {false, "input cone missing from the completion"};
    }
    auto comp = is_complete(rebuilt);
    if (!comp.complete) return {false, comp.detail};
    return {true, ""};
}

CompletionVerdict verify_completion(const Fan& sub, const Fan& full) {
    Fan rebuilt;
    try {
        rebuilt = Fan::from_max(full.n(), full.max_cones());
    } catch (const NotPairwiseFaces&) {
        return {false, "fan axiom fails"};
    }
    for (const auto& c : sub.cones()) {
        bool found = false;
        for (const auto& d : rebuilt.cones())
            if (d == c) found = true;
        if (!found) return {false, "input cone missing from the completion"};
    }
    auto comp = is_complete(rebuilt);
    if (!comp.complete) return {false, comp.detail};
    return {true, ""};
}

std::vector<PlaneSector> complete_2d(const std::vector<PlaneSector>& sectors) {
    // boundary rays of the maximal sectors, deduplicated by direction
    std::vector<ScalarVec> rays;
    auto add_ray = [&](const ScalarVec& r) {
        if (r.size() != 2) throw DimensionMismatch("plane sectors live in dimension two");
        if (sign(r[0]) == 0 && sign(r[1]) == 0) throw ZeroVector("zero sector ray");
        for (const auto& q : rays)
            if (same_direction(q, r)) return;
        rays.push_back(r);
    };
    std::vector<PlaneSector> out;
    for (const auto& s : sectors) {
        if (s.a.empty() && s.b.empty()) continue; // zero cone
        if (s.b.empty()) {
            add_ray(s.a);
            continue;
        }
        if (sign(cross2(s.a, s.b)) <= 0)
            throw NotValid("sector rays must be counterclockwise with angle below pi");
        add_ray(s.a);
        add_ray(s.b);
        out.push_back(s);
    }
    if (rays.empty()) {
        return {{rat_ray(1, 0), rat_ray(0, 1)},
                {rat_ray(0, 1), rat_ray(-1, 0)},
                {rat_ray(-1, 0), rat_ray(0, -1)},
                {rat_ray(0, -1), rat_ray(1, 0)}};
    }

    // split every angular gap of at least pi with a rational compass ray
    const std::vector<ScalarVec> compass = {rat_ray(1, 0),  rat_ray(1, 1),   rat_ray(0, 1),
                                            rat_ray(-1, 1), rat_ray(-1, 0),  rat_ray(-1, -1),
                                            rat_ray(0, -1), rat_ray(1, -1)};
    std::sort(rays.begin(), rays.end(), ccw_less);
    for (bool again = true; again;) {
        again = false;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            const ScalarVec& a = rays[i];
            const ScalarVec& b = rays[(i + 1) % rays.size()];
            bool wide = rays.size() == 1 || sign(cross2(a, b)) <= 0;
            if (!wide) continue;
            bool inserted = false;
            for (const auto& m : compass)
                if (inside_arc(a, b, m)) {
                    rays.push_back(m);
                    inserted = true;
                    break;
                }
            if (!inserted) throw NotValid("no rational ray fits the angular gap");
            std::sort(rays.begin(), rays.end(), ccw_less);
            again = true;
            break;
        }
    }

    // one filler per uncovered gap
    std::size_t filled = 0;
    for (std::size_t i = 0; i < rays.size(); ++i) {
        const ScalarVec& a = rays[i];
        const ScalarVec& b = rays[(i + 1) % rays.size()];
        bool covered = false;
        for (const auto& s : out)
            if (same_direction(s.a, a) && same_direction(s.b, b)) covered = true;
        if (!covered) {
            out.push_back({a, b});
            ++filled;
        }
    }
    (void)filled;

    // verification: the sectors tile the circle exactly once
    std::size_t spanned = 0;
    for (std::size_t i = 0; i < rays.size(); ++i) {
        const ScalarVec& a = rays[i];
        const ScalarVec& b = rays[(i + 1) % rays.size()];
        std::size_t hits = 0;
        for (const auto& s : out)
            if (same_direction(s.a, a) && same_direction(s.b, b)) ++hits;
        if (hits != 1) throw NotValid("gap filling left the circle uncovered");
        ++spanned;
    }
    if (spanned != rays.size()) throw NotValid("gap filling left the circle uncovered");
    return out;
}

} // namespace valfan
