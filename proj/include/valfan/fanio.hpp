#pragma once

#include <map>
#include <optional>

#include "json.hpp"
#include "valfan/gamma.hpp"

namespace valfan {

/// Declaration of one field symbol in a document header: either an exact
/// rational stand-in or a square root, both refinable enclosures. Symbols
/// under the lexicographic oracle carry only their name.
struct SymbolSpec {
    std::string name;
    enum class Kind { Sqrt, Exact } kind = Kind::Sqrt;
    unsigned long sqrt_arg = 0;
    Rat exact_value;
};

/// A fan file: header (ambient, oracle, symbols, value group) plus named
/// maximal cones. `kind` is "half-space" for fans in N x R>=0 and "full"
/// for rational fans in R^ambient. Exact fractions travel as strings.
struct FanDocument {
    std::string kind = "half-space";
    std::size_t ambient = 0; // n for half-space (cones live in n+1), dim for full
    OracleKind oracle = OracleKind::IntervalRefinement;
    std::vector<SymbolSpec> symbols;
    BasisPtr basis; // built from the header on parse
    std::vector<std::string> value_group; // scalar expressions over the basis
    std::optional<ValueGroup> group;
    std::vector<std::string> names; // parallel to the maximal cones
    std::optional<Fan> fan;
    std::optional<RationalFan> rational;
    nlohmann::json metadata = nlohmann::json::object();
};

/// Throws ParseError on malformed text and SemanticError on well-formed
/// documents with inconsistent content.
FanDocument parse_fan_document(const std::string& text);

/// Canonical emission: cones sorted by name, scalars printed symbolically.
/// parse(emit(d)) reproduces d up to canonicalization, and emit is a fixed
/// point on parsed documents.
std::string emit_fan_document(const FanDocument& doc);

FanDocument document_from_fan(const Fan& fan, const BasisPtr& basis,
                              std::vector<SymbolSpec> symbols,
                              const std::optional<ValueGroup>& group,
                              std::vector<std::string> names = {});

FanDocument document_from_rational(const RationalFan& fan, std::vector<std::string> names = {});

} // namespace valfan
