#pragma once

#include "valfan/completion.hpp"
#include "valfan/gamma.hpp"

namespace valfan {

/// A functional on N x R^k with rational entries: the coordinate expansion
/// of some (u, c) in M_Q x QGamma over the gamma basis.
struct LiftedFunctional {
    RatVec u; // length n
    RatVec f; // length k
    RatVec row() const; // concatenated (u, f)
};

/// Expand the offset of y over the value-group basis. Throws NotInQGamma.
LiftedFunctional tilde(const HomFunctional& y, const ValueGroup& g);

/// P_B(L-tilde) = pi^{-1}(B) cap L-tilde^vee in R^(n+k), where pi is the
/// projection onto the last k coordinates. Requires gamma_bar in B (throws
/// GammaBarNotInB); the pullback identity with L^vee is asserted on return.
RationalCone lift_cone(std::size_t n, const std::vector<HomFunctional>& L, const RationalCone& b,
                       const ValueGroup& g);

/// Pull a rational cone of N x R^k back along t -> t gamma_bar.
Cone cone_pullback(const RationalCone& c, std::size_t n, const ValueGroup& g);

struct ExtendResult {
    RatVec f;              // in Q^k, with gamma_bar in f^vee
    ScalarVec multipliers; // rational Farkas certificate for the inclusion
};

/// Given L^vee inside y0^vee (and L^vee not inside N x {0}), a vector f so
/// that any B inside f^vee yields P_B(L-tilde) inside y0-tilde^vee. Throws
/// NotIncluded when the inclusion fails, HeightZeroOnly on the excluded
/// degenerate input.
ExtendResult extend_inclusion(std::size_t n, const std::vector<HomFunctional>& L,
                              const HomFunctional& y0, const ValueGroup& g);

/// Constraint cone B_{sigma,tau} in R^k when sigma cap tau meets height one:
/// the dual of the f-vectors collected from the four inclusion families.
RationalCone b_cone_case1(const Cone& sigma, const Cone& tau,
                          const std::vector<HomFunctional>& l_sigma,
                          const std::vector<HomFunctional>& l_tau, const HomFunctional& y0,
                          const ValueGroup& g);

/// Constraint cone when sigma cap tau lies in N x {0}: separation with a
/// positive margin epsilon (half the exact vertex minimum), a thin rational
/// cone around gamma_bar transverse to the margin direction. Throws
/// NonPositiveMargin when the strict separation fails.
RationalCone b_cone_case2(const Cone& sigma, const Cone& tau,
                          const std::vector<HomFunctional>& l_sigma,
                          const std::vector<HomFunctional>& l_tau, const HomFunctional& y0,
                          const ValueGroup& g);

/// Replace every maximal cone at height zero by an admissible cone meeting
/// height one that has it as a face, keeping the fan property. The input fan
/// is a subfan of the output.
Fan thicken_height_zero(const Fan& fan, const ValueGroup& g);

struct ReductionResult {
    std::size_t k = 0;
    ScalarVec gamma_bar;                    // the value-group basis
    RationalFan lifted;                     // rational fan in R^(n+k)
    RationalCone b;                         // strongly convex cone used
    std::vector<std::size_t> correspondence; // input max cone -> lifted max cone
};

/// The combinatorial noetherian reduction: a rational fan in N x R^k whose
/// pullback along t -> t gamma_bar is exactly the input fan (asserted;
/// ReductionVerificationFailed on any internal mismatch).
ReductionResult reduce(const Fan& fan, const ValueGroup& g);

/// Admissible completion: return the fan itself when already complete, else
/// reduce, complete the rational lift with the engine, and pull back. The
/// output is verified to contain the input as a subfan, to be admissible,
/// and to be complete. Throws CompletionEngineExhausted when the cap is hit.
Fan complete_admissible(const Fan& fan, const ValueGroup& g, const EngineConfig& cfg = {});

} // namespace valfan
