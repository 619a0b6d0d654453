#pragma once

#include "valfan/gamma.hpp"

namespace valfan::fixtures {

/// The dart: a Gamma-admissible fan in R^2 x R>=0 with no simplicial
/// Gamma-admissible completion. alpha = sqrt(3), beta = sqrt(2), so that
/// 0 < beta < alpha < 2 beta (verified at load).
struct Dart {
    BasisPtr basis;
    Scalar alpha;
    Scalar beta;
    ValueGroup gamma; // Z alpha + Z beta
    Fan fan;          // maximal cones sigma_1..sigma_4
};
Dart dart();

/// The rational lift sigma-tilde_1..4 of the dart in R^2 x R^2, whose
/// pullback along t -> (t alpha, t beta) recovers the dart exactly.
RationalFan dart_lift();

/// The explicit completion of the dart: the outer wedges rho_1..rho_4 and
/// the bounded pieces tau_1..tau_6 (the inner dart-shaped quadrilateral is
/// split along its diagonal from (2b-a, 2b-a) to (3a-2b, 4a-3b)).
Fan dart_completion(const Dart& d);

/// Fan of the normalization of the orbit-closure example: not of finite
/// type. Gamma = Z + Z sqrt(2), gamma_elt = 1 in Gamma \ r Gamma.
struct Badnorm {
    BasisPtr basis;
    ValueGroup gamma;
    Scalar gamma_elt;
    unsigned long r = 2;
    Fan fan;
};
Badnorm badnorm(std::size_t n, unsigned long r);

/// The rank-one counterexample over a non-archimedean ordered field: the
/// symbol omega is infinitely large, delta = 1 << a = omega. This fan has
/// no admissible completion over the field.
struct Thm45 {
    BasisPtr basis;
    Scalar omega;
    ValueGroup gamma; // Z + Z omega
    Fan fan;
};
Thm45 thm45();

/// The model semistable cone {w_i >= 0, w_1 + ... + w_m <= gamma t} in
/// R^n x R>=0.
Cone model_cone(std::size_t m, std::size_t n, const Scalar& gamma);

} // namespace valfan::fixtures
