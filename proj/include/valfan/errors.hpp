#pragma once

#include <stdexcept>
#include <string>

namespace valfan {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define VALFAN_ERROR(Name)                                                     \
    struct Name : Error {                                                      \
        explicit Name(const std::string& what = #Name) : Error(what) {}        \
    }

VALFAN_ERROR(OracleStall);
VALFAN_ERROR(NegativeInput);
VALFAN_ERROR(BasisMismatch);
VALFAN_ERROR(ScalarProduct);
VALFAN_ERROR(ZeroVector);
VALFAN_ERROR(DimensionMismatch);
VALFAN_ERROR(EmptyPolyhedron);
VALFAN_ERROR(NotValid);
VALFAN_ERROR(NotInteriorSide);
VALFAN_ERROR(NotCommonFace);
VALFAN_ERROR(NotPairwiseFaces);
VALFAN_ERROR(WrongAmbient);
VALFAN_ERROR(TrivialGamma);
VALFAN_ERROR(NotInQGamma);
VALFAN_ERROR(GammaBarNotInB);
VALFAN_ERROR(ZeroGammaBar);
VALFAN_ERROR(NotIncluded);
VALFAN_ERROR(HeightZeroOnly);
VALFAN_ERROR(NonPositiveMargin);
VALFAN_ERROR(ReductionVerificationFailed);
VALFAN_ERROR(NotPure);
VALFAN_ERROR(NoValidRay);
VALFAN_ERROR(NotStarShaped);
VALFAN_ERROR(CompletionEngineExhausted);
VALFAN_ERROR(NotOnBoundary);
VALFAN_ERROR(NonUnique);
VALFAN_ERROR(NotFiniteType);
VALFAN_ERROR(GammaDivisible);
VALFAN_ERROR(DimensionTooLarge);
VALFAN_ERROR(ParseError);
VALFAN_ERROR(SemanticError);

#undef VALFAN_ERROR

} // namespace valfan
