#pragma once

#include <optional>
#include <vector>

#include "valfan/scalar.hpp"

namespace valfan {

/// Dense exact rational matrix.
class RatMatrix {
  public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    static RatMatrix identity(std::size_t n);
    static RatMatrix from_rows(const std::vector<RatVec>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rat& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    RatVec row(std::size_t i) const;

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rat> a_;
};

/// Row-reduce in place; returns the pivot columns (rank = #pivots).
std::vector<std::size_t> rref(RatMatrix& m);

std::size_t rank(RatMatrix m);

/// Basis of the right kernel {x : Mx = 0}.
std::vector<RatVec> kernel(const RatMatrix& m);

/// A solution of Ax = b with A rational and b over any basis, or nullopt if
/// inconsistent. Rational pivots keep solution entries in the span of
/// {1, theta_i}. Underdetermined systems get free variables set to zero.
std::optional<ScalarVec> solve(const RatMatrix& a, const ScalarVec& b);

std::optional<RatVec> solve(const RatMatrix& a, const RatVec& b);

/// Row Hermite normal form of an integer matrix: H = U*A with U unimodular,
/// H in row echelon form with positive pivots and reduced entries above them.
struct HnfResult {
    RatMatrix h;
    RatMatrix u;
};
HnfResult hnf(const RatMatrix& a_integer);

/// v / gcd(entries), sign normalized so the first nonzero entry keeps its sign.
IntVec primitive(const IntVec& v);

/// Clear denominators of a rational vector to a primitive integer vector.
IntVec primitive(const RatVec& v);
RatVec to_rat(const IntVec& v);

Rat det(RatMatrix m);

Rat dot(const RatVec& a, const RatVec& b);
Scalar dot(const RatVec& a, const ScalarVec& b);
Scalar dot(const ScalarVec& a, const ScalarVec& b); // needs one side rational per entry

bool is_zero(const RatVec& v);

} // namespace valfan
