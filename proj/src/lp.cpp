#include "valfan/lp.hpp"

#include <cstddef>
#include <limits>

namespace valfan {

namespace {

// Dictionary-form simplex state. Columns: x+ (n), x- (n), slacks, artificials.
// The tableau holds B^{-1}*A throughout, rhs holds B^{-1}*b (scalar entries,
// rational pivots only). Invariant: rhs >= 0 componentwise.
struct Tableau {
    RatMatrix t;
    ScalarVec rhs;
    std::vector<std::size_t> basis; // column basic in each row
    std::size_t art_start = 0;      // first artificial column

    void pivot(std::size_t r, std::size_t c) {
        Rat p = t.at(r, c);
        for (std::size_t j = 0; j < t.cols(); ++j) t.at(r, j) /= p;
        rhs[r] *= Rat(1) / p;
        for (std::size_t i = 0; i < t.rows(); ++i) {
            if (i == r || t.at(i, c) == 0) continue;
            Rat f = t.at(i, c);
            for (std::size_t j = 0; j < t.cols(); ++j) t.at(i, j) -= f * t.at(r, j);
            rhs[i] -= f * rhs[r];
        }
        basis[r] = c;
    }
};

Rat reduced_cost(const Tableau& tb, const RatVec& cost, std::size_t j) {
    Rat rc = cost[j];
    for (std::size_t i = 0; i < tb.t.rows(); ++i) rc -= cost[tb.basis[i]] * tb.t.at(i, j);
    return rc;
}

// Bland's rule; `limit` caps the entering columns (excludes artificials in
// phase 2). Returns false on unboundedness.
bool run_simplex(Tableau& tb, const RatVec& cost, std::size_t limit) {
    for (;;) {
        std::size_t enter = limit;
        for (std::size_t j = 0; j < limit; ++j) {
            if (reduced_cost(tb, cost, j) < 0) {
                enter = j;
                break;
            }
        }
        if (enter == limit) return true;

        // Ratio test: min rhs_i / t(i,enter) over positive entries; ties go
        // to the smallest basic index. Comparison via cross products keeps
        // the scalar arithmetic linear.
        std::size_t leave = tb.t.rows();
        for (std::size_t i = 0; i < tb.t.rows(); ++i) {
            if (tb.t.at(i, enter) <= 0) continue;
            if (leave == tb.t.rows()) {
                leave = i;
                continue;
            }
            Scalar diff = tb.rhs[i] * tb.t.at(leave, enter) - tb.rhs[leave] * tb.t.at(i, enter);
            int s = sign(diff);
            if (s < 0 || (s == 0 && tb.basis[i] < tb.basis[leave])) leave = i;
        }
        if (leave == tb.t.rows()) return false;
        tb.pivot(leave, enter);
    }
}

} // namespace

LpResult lp_minimize(const RatVec& c, const std::vector<LpRow>& rows) {
    std::size_t n = c.size();
    std::size_t m = rows.size();
    std::size_t nslack = 0;
    for (const auto& r : rows) {
        if (r.a.size() != n) throw DimensionMismatch("lp row width mismatch");
        if (r.rel == Rel::GE) ++nslack;
    }

    std::size_t scol = 2 * n;
    std::size_t acol = scol + nslack;
    std::size_t ncols = acol + m;

    Tableau tb;
    tb.t = RatMatrix(m, ncols);
    tb.rhs.assign(m, Scalar(0));
    tb.basis.resize(m);
    tb.art_start = acol;

    std::vector<int> flip(m, 1);
    {
        std::size_t si = 0;
        for (std::size_t i = 0; i < m; ++i) {
            int f = sign(rows[i].b) < 0 ? -1 : 1;
            flip[i] = f;
            for (std::size_t j = 0; j < n; ++j) {
                tb.t.at(i, j) = Rat(f) * rows[i].a[j];
                tb.t.at(i, n + j) = Rat(-f) * rows[i].a[j];
            }
            if (rows[i].rel == Rel::GE) tb.t.at(i, scol + si++) = Rat(-f);
            tb.t.at(i, acol + i) = 1;
            tb.rhs[i] = Rat(f) * rows[i].b;
            tb.basis[i] = acol + i;
        }
    }

    LpResult res;

    // Phase 1: minimize the artificial sum.
    RatVec cost1(ncols, Rat(0));
    for (std::size_t i = 0; i < m; ++i) cost1[acol + i] = 1;
    run_simplex(tb, cost1, ncols);
    Scalar art_total(0);
    for (std::size_t i = 0; i < m; ++i)
        if (tb.basis[i] >= acol) art_total += tb.rhs[i];
    if (sign(art_total) > 0) {
        res.status = LpStatus::Infeasible;
        return res;
    }
    // Drive basic artificials out where a structural pivot exists; rows with
    // none are redundant and their artificial stays pinned at zero.
    for (std::size_t i = 0; i < m; ++i) {
        if (tb.basis[i] < acol) continue;
        for (std::size_t j = 0; j < acol; ++j) {
            if (tb.t.at(i, j) != 0) {
                tb.pivot(i, j);
                break;
            }
        }
    }

    // Phase 2 over the structural columns.
    RatVec cost2(ncols, Rat(0));
    for (std::size_t j = 0; j < n; ++j) {
        cost2[j] = c[j];
        cost2[n + j] = -c[j];
    }
    if (!run_simplex(tb, cost2, acol)) {
        res.status = LpStatus::Unbounded;
        return res;
    }

    res.status = LpStatus::Optimal;
    res.x.assign(n, Scalar(0));
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t v = tb.basis[i];
        if (v < n)
            res.x[v] += tb.rhs[i];
        else if (v < 2 * n)
            res.x[v - n] -= tb.rhs[i];
    }
    res.objective = dot(c, res.x);

    // The artificial column for row i carries B^{-1}e_i, so the simplex
    // multipliers read off as cB . column; undo the sign normalization.
    res.dual.assign(m, Rat(0));
    for (std::size_t i = 0; i < m; ++i) {
        Rat pi(0);
        for (std::size_t k = 0; k < m; ++k) pi += cost2[tb.basis[k]] * tb.t.at(k, acol + i);
        res.dual[i] = Rat(flip[i]) * pi;
    }
    return res;
}

LpResult lp_feasible(std::size_t nvars, const std::vector<LpRow>& rows) {
    return lp_minimize(RatVec(nvars, Rat(0)), rows);
}

} // namespace valfan
