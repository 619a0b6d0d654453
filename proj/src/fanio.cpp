#include <algorithm>

#include "valfan/fanio.hpp"

namespace valfan {

using nlohmann::json;

namespace {

json scalar_to_json(const Scalar& s) { return s.str(); }

json ratvec_to_json(const RatVec& v) {
    json out = json::array();
    for (const auto& q : v) out.push_back(q.get_str());
    return out;
}

json intvec_to_json(const IntVec& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(x.get_str());
    return out;
}

RatVec ratvec_from_json(const json& j, std::size_t want) {
    if (!j.is_array() || j.size() != want) throw SemanticError("vector of wrong length");
    RatVec out;
    for (const auto& e : j) {
        if (!e.is_string()) throw SemanticError("fractions must be strings");
        try {
            Rat q(e.get<std::string>());
            q.canonicalize();
            out.push_back(std::move(q));
        } catch (const std::invalid_argument&) {
            throw ParseError("bad fraction: '" + e.get<std::string>() + "'");
        }
    }
    return out;
}

IntVec intvec_from_json(const json& j, std::size_t want) {
    RatVec q = ratvec_from_json(j, want);
    IntVec out;
    for (const auto& x : q) {
        if (x.get_den() != 1) throw SemanticError("expected an integer vector");
        out.push_back(x.get_num());
    }
    return out;
}

json hom_to_json(const HomFunctional& f) {
    return json{{"u", ratvec_to_json(f.u)}, {"c", scalar_to_json(f.c)}};
}

HomFunctional hom_from_json(const json& j, std::size_t n, const BasisPtr& basis) {
    if (!j.is_object() || !j.contains("u") || !j.contains("c"))
        throw SemanticError("functional needs fields u and c");
    return {ratvec_from_json(j.at("u"), n), parse_scalar(j.at("c").get<std::string>(), basis)};
}

json half_cone_to_json(const std::string& name, const Cone& c) {
    json out;
    out["name"] = name;
    out["facets"] = json::array();
    for (const auto& f : c.facets()) out["facets"].push_back(hom_to_json(f));
    out["equations"] = json::array();
    for (const auto& e : c.equations()) out["equations"].push_back(hom_to_json(e));
    json verts = json::array();
    for (const auto& v : c.vertices()) {
        json vv = json::array();
        for (const auto& x : v) vv.push_back(scalar_to_json(x));
        verts.push_back(std::move(vv));
    }
    out["vertices"] = std::move(verts);
    json rays = json::array();
    for (const auto& r : c.height0().rays) rays.push_back(intvec_to_json(r));
    out["height0_rays"] = std::move(rays);
    json lines = json::array();
    for (const auto& l : c.height0().lines) lines.push_back(intvec_to_json(l));
    out["height0_lines"] = std::move(lines);
    return out;
}

Cone half_cone_from_json(const json& j, std::size_t n, const BasisPtr& basis) {
    std::vector<HomFunctional> ineqs;
    for (const auto& f : j.value("facets", json::array()))
        ineqs.push_back(hom_from_json(f, n, basis));
    for (const auto& e : j.value("equations", json::array())) {
        HomFunctional h = hom_from_json(e, n, basis);
        HomFunctional neg{h.u, -h.c};
        for (auto& x : neg.u) x = -x;
        ineqs.push_back(h);
        ineqs.push_back(std::move(neg));
    }
    return Cone::from_hrep(n, std::move(ineqs));
}

json full_cone_to_json(const std::string& name, const RationalCone& c) {
    json out;
    out["name"] = name;
    json rays = json::array();
    for (const auto& r : c.rays) rays.push_back(intvec_to_json(r));
    out["rays"] = std::move(rays);
    json lines = json::array();
    for (const auto& l : c.lines) lines.push_back(intvec_to_json(l));
    out["lines"] = std::move(lines);
    return out;
}

RationalCone full_cone_from_json(const json& j, std::size_t ambient) {
    std::vector<RatVec> rays, lines;
    for (const auto& r : j.value("rays", json::array()))
        rays.push_back(to_rat(intvec_from_json(r, ambient)));
    for (const auto& l : j.value("lines", json::array()))
        lines.push_back(to_rat(intvec_from_json(l, ambient)));
    return cone_from_rays(ambient, rays, lines);
}

/// Documents with identical symbol headers share one basis object, so
/// scalars parsed from separate files are directly comparable.
BasisPtr intern_basis(const std::string& key, const std::function<BasisPtr()>& build) {
    static std::mutex mu;
    static std::map<std::string, BasisPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    BasisPtr b = build();
    cache.emplace(key, b);
    return b;
}

std::vector<std::string> default_names(std::size_t count) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back("sigma" + std::to_string(i + 1));
    return out;
}

} // namespace

FanDocument parse_fan_document(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("json: ") + e.what());
    }
    if (!j.is_object() || j.value("format", "") != "valfan-1")
        throw SemanticError("expected a valfan-1 document");

    FanDocument doc;
    doc.kind = j.value("kind", "half-space");
    if (doc.kind != "half-space" && doc.kind != "full")
        throw SemanticError("kind must be half-space or full");
    if (!j.contains("ambient") || !j.at("ambient").is_number_unsigned())
        throw SemanticError("missing ambient dimension");
    doc.ambient = j.at("ambient").get<std::size_t>();

    if (j.contains("symbols")) {
        const json& sym = j.at("symbols");
        std::string oracle = sym.value("oracle", "interval");
        std::vector<std::string> names;
        std::vector<EnclosureFn> encl;
        std::string key = oracle;
        for (const auto& s : sym.value("list", json::array())) {
            SymbolSpec spec;
            spec.name = s.value("name", "");
            if (spec.name.empty()) throw SemanticError("symbol without a name");
            names.push_back(spec.name);
            if (oracle == "interval") {
                if (s.contains("sqrt")) {
                    spec.kind = SymbolSpec::Kind::Sqrt;
                    spec.sqrt_arg = s.at("sqrt").get<unsigned long>();
                    encl.push_back(sqrt_enclosure(spec.sqrt_arg));
                    key += "|" + spec.name + ":sqrt:" + std::to_string(spec.sqrt_arg);
                } else if (s.contains("value")) {
                    spec.kind = SymbolSpec::Kind::Exact;
                    spec.exact_value = Rat(s.at("value").get<std::string>());
                    spec.exact_value.canonicalize();
                    encl.push_back(exact_enclosure(spec.exact_value));
                    key += "|" + spec.name + ":value:" + spec.exact_value.get_str();
                } else {
                    throw SemanticError("interval symbol needs sqrt or value");
                }
            } else {
                key += "|" + spec.name;
            }
            doc.symbols.push_back(std::move(spec));
        }
        if (oracle == "interval") {
            doc.oracle = OracleKind::IntervalRefinement;
            if (!names.empty())
                doc.basis = intern_basis(key, [&] { return SymbolBasis::interval(names, encl); });
        } else if (oracle == "lexicographic") {
            doc.oracle = OracleKind::Lexicographic;
            if (!names.empty())
                doc.basis = intern_basis(key, [&] { return SymbolBasis::lexicographic(names); });
        } else {
            throw SemanticError("unknown oracle: " + oracle);
        }
    }

    for (const auto& s : j.value("value_group", json::array()))
        doc.value_group.push_back(s.get<std::string>());
    if (!doc.value_group.empty()) {
        ScalarVec basis_elts;
        for (const auto& s : doc.value_group) basis_elts.push_back(parse_scalar(s, doc.basis));
        doc.group = ValueGroup::make(std::move(basis_elts));
    }

    std::vector<std::pair<std::string, json>> cones;
    for (const auto& c : j.value("cones", json::array()))
        cones.emplace_back(c.value("name", ""), c);
    std::stable_sort(cones.begin(), cones.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [name, c] : cones) doc.names.push_back(name);

    try {
        if (doc.kind == "half-space") {
            std::vector<Cone> max;
            for (const auto& [name, c] : cones)
                max.push_back(half_cone_from_json(c, doc.ambient, doc.basis));
            doc.fan = Fan::from_max(doc.ambient, std::move(max));
        } else {
            std::vector<RationalCone> max;
            for (const auto& [name, c] : cones)
                max.push_back(full_cone_from_json(c, doc.ambient));
            doc.rational = rational_fan_from_max(doc.ambient, std::move(max));
        }
    } catch (const NotPairwiseFaces& e) {
        throw SemanticError(std::string("cones do not form a fan: ") + e.what());
    } catch (const BasisMismatch& e) {
        throw SemanticError(std::string("scalar outside the declared basis: ") + e.what());
    }

    doc.metadata = j.value("metadata", json::object());
    return doc;
}

std::string emit_fan_document(const FanDocument& doc) {
    json j;
    j["format"] = "valfan-1";
    j["kind"] = doc.kind;
    j["ambient"] = doc.ambient;

    if (!doc.symbols.empty() || doc.basis) {
        json sym;
        sym["oracle"] = doc.oracle == OracleKind::IntervalRefinement ? "interval" : "lexicographic";
        sym["list"] = json::array();
        for (const auto& s : doc.symbols) {
            json e{{"name", s.name}};
            if (doc.oracle == OracleKind::IntervalRefinement) {
                if (s.kind == SymbolSpec::Kind::Sqrt)
                    e["sqrt"] = s.sqrt_arg;
                else
                    e["value"] = s.exact_value.get_str();
            }
            sym["list"].push_back(std::move(e));
        }
        j["symbols"] = std::move(sym);
    }
    if (!doc.value_group.empty()) j["value_group"] = doc.value_group;

    std::size_t count = doc.fan ? doc.fan->max_cones().size()
                                : (doc.rational ? doc.rational->max.size() : 0);
    std::vector<std::string> names = doc.names;
    if (names.size() != count) names = default_names(count);
    std::vector<std::pair<std::string, std::size_t>> order;
    for (std::size_t i = 0; i < count; ++i) order.emplace_back(names[i], i);
    std::stable_sort(order.begin(), order.end());

    j["cones"] = json::array();
    for (const auto& [name, i] : order) {
        if (doc.fan)
            j["cones"].push_back(half_cone_to_json(name, doc.fan->max_cones()[i]));
        else
            j["cones"].push_back(full_cone_to_json(name, doc.rational->max[i]));
    }
    if (!doc.metadata.empty()) j["metadata"] = doc.metadata;
    return j.dump(2) + "\n";
}

FanDocument document_from_fan(const Fan& fan, const BasisPtr& basis,
                              std::vector<SymbolSpec> symbols,
                              const std::optional<ValueGroup>& group,
                              std::vector<std::string> names) {
    FanDocument doc;
    doc.kind = "half-space";
    doc.ambient = fan.n();
    doc.basis = basis;
    doc.oracle = basis ? basis->oracle() : OracleKind::IntervalRefinement;
    doc.symbols = std::move(symbols);
    if (group) {
        doc.group = group;
        for (const auto& s : group->basis()) doc.value_group.push_back(s.str());
    }
    doc.fan = fan;
    doc.names = names.empty() ? default_names(fan.max_cones().size()) : std::move(names);
    return doc;
}

FanDocument document_from_rational(const RationalFan& fan, std::vector<std::string> names) {
    FanDocument doc;
    doc.kind = "full";
    doc.ambient = fan.ambient;
    doc.basis = nullptr;
    doc.rational = fan;
    doc.names = names.empty() ? default_names(fan.max.size()) : std::move(names);
    return doc;
}

} // namespace valfan
