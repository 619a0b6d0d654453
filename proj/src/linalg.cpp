#include "valfan/linalg.hpp"

#include <algorithm>

namespace valfan {

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<RatVec>& rows) {
    if (rows.empty()) return RatMatrix();
    RatMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols()) throw DimensionMismatch("ragged rows");
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

RatVec RatMatrix::row(std::size_t i) const {
    RatVec r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
    return r;
}

std::vector<std::size_t> rref(RatMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m.at(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(r, j));
        Rat inv = 1 / m.at(r, c);
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            Rat f = m.at(i, c);
            for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t rank(RatMatrix m) { return rref(m).size(); }

std::vector<RatVec> kernel(const RatMatrix& m) {
    RatMatrix r = m;
    auto pivots = rref(r);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<RatVec> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        RatVec v(m.cols(), Rat(0));
        v[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r.at(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<ScalarVec> solve(const RatMatrix& a, const ScalarVec& b) {
    if (a.rows() != b.size()) throw DimensionMismatch("solve: rows != rhs size");
    // Gaussian elimination with rational pivots; the rhs stays in scalar span.
    RatMatrix m = a;
    ScalarVec rhs = b;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m.at(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != r) {
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(r, j));
            std::swap(rhs[p], rhs[r]);
        }
        Rat inv = 1 / m.at(r, c);
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(r, j) *= inv;
        rhs[r] *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            Rat f = m.at(i, c);
            for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
            rhs[i] -= f * rhs[r];
        }
        pivots.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < m.rows(); ++i)
        if (!rhs[i].is_zero()) return std::nullopt;
    ScalarVec x(m.cols(), Scalar(0));
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = rhs[i];
    return x;
}

std::optional<RatVec> solve(const RatMatrix& a, const RatVec& b) {
    ScalarVec sb(b.begin(), b.end());
    auto sx = solve(a, sb);
    if (!sx) return std::nullopt;
    RatVec x(sx->size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = (*sx)[i].rational_value();
    return x;
}

HnfResult hnf(const RatMatrix& a) {
    const std::size_t n = a.rows(), m = a.cols();
    RatMatrix h = a, u = RatMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (h.at(i, j).get_den() != 1) throw SemanticError("hnf requires integer entries");

    auto row_op = [&](RatMatrix& mat, std::size_t dst, std::size_t src, const Rat& f) {
        for (std::size_t j = 0; j < mat.cols(); ++j) mat.at(dst, j) += f * mat.at(src, j);
    };
    auto swap_rows = [&](std::size_t i, std::size_t k) {
        for (std::size_t j = 0; j < m; ++j) std::swap(h.at(i, j), h.at(k, j));
        for (std::size_t j = 0; j < n; ++j) std::swap(u.at(i, j), u.at(k, j));
    };
    auto negate_row = [&](std::size_t i) {
        for (std::size_t j = 0; j < m; ++j) h.at(i, j) = -h.at(i, j);
        for (std::size_t j = 0; j < n; ++j) u.at(i, j) = -u.at(i, j);
    };

    std::size_t r = 0;
    for (std::size_t c = 0; c < m && r < n; ++c) {
        // Euclidean reduction within the column below row r.
        while (true) {
            std::size_t best = n;
            for (std::size_t i = r; i < n; ++i)
                if (h.at(i, c) != 0 && (best == n || abs(h.at(i, c)) < abs(h.at(best, c)))) best = i;
            if (best == n) break;
            if (best != r) swap_rows(r, best);
            if (h.at(r, c) < 0) negate_row(r);
            bool reduced = true;
            for (std::size_t i = r + 1; i < n; ++i) {
                if (h.at(i, c) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), h.at(i, c).get_num().get_mpz_t(),
                           h.at(r, c).get_num().get_mpz_t());
                Rat f(-q);
                row_op(h, i, r, f);
                row_op(u, i, r, f);
                if (h.at(i, c) != 0) reduced = false;
            }
            if (reduced) break;
        }
        if (h.at(r, c) == 0) continue;
        // Reduce entries above the pivot into [0, pivot).
        for (std::size_t i = 0; i < r; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), h.at(i, c).get_num().get_mpz_t(),
                       h.at(r, c).get_num().get_mpz_t());
            if (q != 0) {
                Rat f(-q);
                row_op(h, i, r, f);
                row_op(u, i, r, f);
            }
        }
        ++r;
    }
    return {h, u};
}

IntVec primitive(const IntVec& v) {
    Int g(0);
    for (const auto& x : v) g = gcd(g, x);
    if (g == 0) throw ZeroVector("primitive of the zero vector");
    IntVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
    return r;
}

IntVec primitive(const RatVec& v) {
    Int l(1);
    for (const auto& q : v) l = lcm(l, Int(q.get_den()));
    IntVec w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = Int(v[i].get_num()) * (l / Int(v[i].get_den()));
    return primitive(w);
}

RatVec to_rat(const IntVec& v) {
    RatVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
    return r;
}

Rat det(RatMatrix m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("det of non-square matrix");
    Rat d(1);
    const std::size_t n = m.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m.at(p, c) == 0) ++p;
        if (p == n) return Rat(0);
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(p, j), m.at(c, j));
            d = -d;
        }
        d *= m.at(c, c);
        Rat inv = 1 / m.at(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m.at(i, c) == 0) continue;
            Rat f = m.at(i, c) * inv;
            for (std::size_t j = c; j < n; ++j) m.at(i, j) -= f * m.at(c, j);
        }
    }
    return d;
}

Rat dot(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot size mismatch");
    Rat s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Scalar dot(const RatVec& a, const ScalarVec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot size mismatch");
    Scalar s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += b[i] * a[i];
    return s;
}

Scalar dot(const ScalarVec& a, const ScalarVec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot size mismatch");
    Scalar s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

bool is_zero(const RatVec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

} // namespace valfan
