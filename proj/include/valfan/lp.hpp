#pragma once

#include <vector>

#include "valfan/linalg.hpp"

namespace valfan {

/// Constraint row <a,x> rel b, with rational coefficients and Scalar rhs.
enum class Rel { GE, EQ };
struct LpRow {
    RatVec a;
    Rel rel = Rel::GE;
    Scalar b;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    ScalarVec x;      // primal point (free variables)
    RatVec dual;      // one multiplier per input row; >= 0 on GE rows
    Scalar objective; // c.x at the optimum
};

/// Exact two-phase simplex for  min c.x  s.t. rows, x free.
/// The constraint matrix and objective are rational, so every pivot is
/// rational and the rhs column stays in the scalar span. Bland's rule.
LpResult lp_minimize(const RatVec& c, const std::vector<LpRow>& rows);

/// Phase-1 only: a feasible point, or Infeasible.
LpResult lp_feasible(std::size_t nvars, const std::vector<LpRow>& rows);

} // namespace valfan
