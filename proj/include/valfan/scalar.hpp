#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "valfan/errors.hpp"

namespace valfan {

using Rat = mpq_class;
using Int = mpz_class;
using RatVec = std::vector<Rat>;
using IntVec = std::vector<Int>;

/// A closed rational interval [lo, hi].
struct Interval {
    Rat lo;
    Rat hi;
    Rat width() const { return hi - lo; }
};

enum class OracleKind { IntervalRefinement, Lexicographic };

/// A refinable enclosure: depth d yields a nested interval of width
/// <= width(d-1)/2 around the symbol's real value.
using EnclosureFn = std::function<Interval(int depth)>;

/// Enclosure of sqrt(n) by bisection.
EnclosureFn sqrt_enclosure(unsigned long n);
/// Constant-width-zero enclosure of a rational value (handy in tests).
EnclosureFn exact_enclosure(const Rat& value);

/// The ground field is the Q-vector space spanned by 1 and finitely many
/// symbols theta_1..theta_m declared Q-linearly independent. Two sign
/// oracles are available: interval refinement (R-embedded symbols) and
/// lexicographic (non-archimedean order, theta_{i+1} >> theta_i >> 1).
class SymbolBasis {
  public:
    static std::shared_ptr<const SymbolBasis>
    interval(std::vector<std::string> names, std::vector<EnclosureFn> enclosures);
    static std::shared_ptr<const SymbolBasis> lexicographic(std::vector<std::string> names);

    OracleKind oracle() const { return oracle_; }
    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }

    /// Cached nested enclosure of symbol `i` at the given refinement depth.
    Interval enclosure(std::size_t i, int depth) const;

    static constexpr int kMaxDepth = 4096;

  private:
    SymbolBasis() = default;
    OracleKind oracle_ = OracleKind::Lexicographic;
    std::vector<std::string> names_;
    std::vector<EnclosureFn> enclosures_;
    mutable std::mutex cache_mutex_;
    mutable std::vector<std::vector<Interval>> cache_;
};

using BasisPtr = std::shared_ptr<const SymbolBasis>;

/// An element q0 + sum_i q_i * theta_i of the ground field. Immutable value
/// type; a null basis means a pure rational. Only rational*Scalar products
/// are defined; products of two irrational Scalars throw ScalarProduct.
class Scalar {
  public:
    Scalar() : coords_(1, Rat(0)) {}
    Scalar(const Rat& q) : coords_(1, q) {}           // NOLINT(google-explicit-constructor)
    Scalar(long q) : coords_(1, Rat(q)) {}            // NOLINT(google-explicit-constructor)
    Scalar(int q) : coords_(1, Rat(q)) {}             // NOLINT(google-explicit-constructor)
    Scalar(BasisPtr basis, RatVec coords);

    /// The i-th basis symbol of `basis` as a Scalar.
    static Scalar symbol(const BasisPtr& basis, std::size_t i);

    const BasisPtr& basis() const { return basis_; }
    /// coords()[0] is the rational part; coords()[1+i] multiplies theta_i.
    const RatVec& coords() const { return coords_; }
    Rat coord(std::size_t i) const { return i < coords_.size() ? coords_[i] : Rat(0); }

    bool is_rational() const;
    Rat rational_value() const; // requires is_rational()
    bool is_zero() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Rat& q);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(const Rat& q, Scalar s) { return s *= q; }
    friend Scalar operator*(Scalar s, const Rat& q) { return s *= q; }
    /// Defined only when at least one factor is rational.
    friend Scalar operator*(const Scalar& a, const Scalar& b);

    friend bool operator==(const Scalar& a, const Scalar& b) { return (a - b).is_zero(); }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    std::string str() const;

  private:
    BasisPtr basis_;   // null for pure rationals
    RatVec coords_;    // size 1 (rational) or basis->size()+1
    void trim();
};

/// Sign of a Scalar: exact zero test first, then the basis oracle.
int sign(const Scalar& s);

inline bool operator<(const Scalar& a, const Scalar& b) { return sign(a - b) < 0; }
inline bool operator>(const Scalar& a, const Scalar& b) { return sign(a - b) > 0; }
inline bool operator<=(const Scalar& a, const Scalar& b) { return sign(a - b) <= 0; }
inline bool operator>=(const Scalar& a, const Scalar& b) { return sign(a - b) >= 0; }

/// true iff q*b < a for every positive rational q (requires a,b >= 0).
bool is_infinitesimal(const Scalar& b, const Scalar& a);

/// Rational enclosure of s at the given refinement depth (interval basis;
/// pure rationals get a width-zero interval).
Interval enclose(const Scalar& s, int depth);

/// Shared basis of a set of scalars, unifying nulls; throws BasisMismatch.
BasisPtr common_basis(const Scalar& a, const Scalar& b);

using ScalarVec = std::vector<Scalar>;

/// Parse the text form `q0 + q1*theta1 + ...` over `basis` (exact fractions).
Scalar parse_scalar(const std::string& text, const BasisPtr& basis);

} // namespace valfan
