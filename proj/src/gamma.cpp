#include <algorithm>

#include "valfan/gamma.hpp"

namespace valfan {

namespace {

std::size_t coeff_width(const ScalarVec& xs) {
    std::size_t w = 1;
    for (const auto& x : xs) w = std::max(w, x.coords().size());
    return w;
}

BasisPtr symbol_basis_of(const ScalarVec& xs) {
    for (const auto& x : xs)
        if (x.basis()) return x.basis();
    return nullptr;
}

void check_ambient(const Scalar& c, const BasisPtr& gamma_basis) {
    if (c.basis() && gamma_basis && c.basis() != gamma_basis)
        throw WrongAmbient("cone offsets and value group use different symbol bases");
}

} // namespace

ValueGroup ValueGroup::make(ScalarVec basis) {
    if (basis.empty()) throw TrivialGamma("empty value-group basis");
    for (std::size_t i = 0; i + 1 < basis.size(); ++i)
        common_basis(basis[i], basis[i + 1]); // throws BasisMismatch
    std::size_t w = coeff_width(basis);
    RatMatrix m(w, basis.size());
    for (std::size_t j = 0; j < w; ++j)
        for (std::size_t l = 0; l < basis.size(); ++l) m.at(j, l) = basis[l].coord(j);
    if (valfan::rank(m) != basis.size())
        throw TrivialGamma("value-group basis is Q-linearly dependent");
    ValueGroup g;
    g.basis_ = std::move(basis);
    return g;
}

std::optional<IntVec> gamma_membership(const Scalar& s, const ValueGroup& g) {
    auto q = qgamma_coords(s, g.basis());
    if (!q) return std::nullopt;
    IntVec out;
    out.reserve(q->size());
    for (const auto& x : *q) {
        if (x.get_den() != 1) return std::nullopt;
        out.push_back(x.get_num());
    }
    return out;
}

AdmissibilityReport is_admissible_cone(const Cone& c, const ValueGroup& g) {
    BasisPtr gb = symbol_basis_of(g.basis());
    AdmissibilityReport r;
    r.pointed = c.pointed();
    if (!r.pointed) r.detail = "cone is not strongly convex";
    bool offsets_ok = true;
    auto inspect = [&](const HomFunctional& f) {
        check_ambient(f.c, gb);
        FunctionalEvidence ev{f, std::nullopt, false};
        // The ambient height functional t >= 0 (or t = 0 at height zero)
        // carries no Gamma content.
        if (is_zero(f.u) && f.c.is_rational()) {
            ev.exempt = true;
        } else {
            ev.offset_coords = qgamma_coords(f.c, g.basis());
            if (!ev.offset_coords && offsets_ok) {
                offsets_ok = false;
                r.detail = "offset " + f.c.str() + " is outside QGamma";
            }
        }
        r.evidence.push_back(std::move(ev));
    };
    for (const auto& f : c.facets()) inspect(f);
    for (const auto& e : c.equations()) inspect(e);
    r.verdict = r.pointed && offsets_ok;
    return r;
}

AdmissibilityReport is_admissible_fan(const Fan& fan, const ValueGroup& g) {
    AdmissibilityReport total;
    total.verdict = true;
    total.pointed = true;
    for (const auto& c : fan.cones()) {
        AdmissibilityReport r = is_admissible_cone(c, g);
        total.pointed = total.pointed && r.pointed;
        if (!r.verdict && total.verdict) {
            total.verdict = false;
            total.detail = r.detail;
            total.evidence = std::move(r.evidence);
        }
    }
    return total;
}

FiniteTypeReport finite_type(const Fan& fan, const ValueGroup& g) {
    FiniteTypeReport r;
    r.verdict = true;
    if (g.is_discrete()) return r; // Gordan: sigma^vee cap (M x Gamma) f.g.
    for (const auto& c : fan.max_cones())
        for (const auto& v : c.vertices()) {
            bool in_lattice = true;
            for (const auto& x : v)
                if (!gamma_membership(x, g)) in_lattice = false;
            if (!in_lattice) r.witnesses.push_back(v);
        }
    std::sort(r.witnesses.begin(), r.witnesses.end(), scalar_vec_less);
    r.witnesses.erase(std::unique(r.witnesses.begin(), r.witnesses.end()), r.witnesses.end());
    r.verdict = r.witnesses.empty();
    return r;
}

ExtensionResult minimal_extension(const Fan& fan, const ValueGroup& g) {
    std::size_t k = g.rank();
    std::vector<RatVec> coords; // vertex coordinates over the gamma basis
    for (const auto& c : fan.max_cones())
        for (const auto& v : c.vertices())
            for (const auto& x : v) {
                auto q = qgamma_coords(x, g.basis());
                if (!q) throw NotInQGamma("vertex coordinate outside QGamma");
                coords.push_back(std::move(*q));
            }

    Int den = 1;
    for (const auto& v : coords)
        for (const auto& x : v) {
            Int d = x.get_den();
            den = den / gcd(den, d) * d;
        }

    // Lattice generated by den*Z^k and den*(coordinate vectors), reduced by
    // row Hermite normal form; the top k rows are a basis.
    RatMatrix stack(k + coords.size(), k);
    for (std::size_t i = 0; i < k; ++i) stack.at(i, i) = Rat(den);
    for (std::size_t i = 0; i < coords.size(); ++i)
        for (std::size_t j = 0; j < k; ++j) stack.at(k + i, j) = coords[i][j] * Rat(den);
    auto h = hnf(stack).h;

    Rat det_h(1);
    for (std::size_t i = 0; i < k; ++i) det_h *= h.at(i, i);
    Rat index_q = 1;
    for (std::size_t i = 0; i < k; ++i) index_q *= Rat(den);
    index_q /= det_h;
    index_q.canonicalize();

    ScalarVec new_basis;
    for (std::size_t i = 0; i < k; ++i) {
        Scalar b(0);
        for (std::size_t j = 0; j < k; ++j) b += (h.at(i, j) / Rat(den)) * g.basis()[j];
        new_basis.push_back(std::move(b));
    }
    return {ValueGroup::make(std::move(new_basis)), index_q.get_num()};
}

} // namespace valfan
