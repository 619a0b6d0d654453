#include "valfan/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace valfan {

EnclosureFn sqrt_enclosure(unsigned long n) {
    // Initial integer bracket, then bisection; width halves per depth.
    Int v(n);
    Int lo0 = sqrt(v);
    Int hi0 = lo0 * lo0 == v ? lo0 : lo0 + 1;
    return [v, lo0, hi0](int depth) {
        Rat lo(lo0), hi(hi0);
        for (int d = 0; d < depth; ++d) {
            if (lo == hi) break;
            Rat mid = (lo + hi) / 2;
            if (mid * mid <= Rat(v))
                lo = mid;
            else
                hi = mid;
        }
        return Interval{lo, hi};
    };
}

EnclosureFn exact_enclosure(const Rat& value) {
    return [value](int) { return Interval{value, value}; };
}

std::shared_ptr<const SymbolBasis>
SymbolBasis::interval(std::vector<std::string> names, std::vector<EnclosureFn> enclosures) {
    if (names.size() != enclosures.size())
        throw BasisMismatch("symbol/enclosure count mismatch");
    auto b = std::shared_ptr<SymbolBasis>(new SymbolBasis());
    b->oracle_ = OracleKind::IntervalRefinement;
    b->names_ = std::move(names);
    b->enclosures_ = std::move(enclosures);
    b->cache_.resize(b->names_.size());
    return b;
}

std::shared_ptr<const SymbolBasis> SymbolBasis::lexicographic(std::vector<std::string> names) {
    auto b = std::shared_ptr<SymbolBasis>(new SymbolBasis());
    b->oracle_ = OracleKind::Lexicographic;
    b->names_ = std::move(names);
    return b;
}

Interval SymbolBasis::enclosure(std::size_t i, int depth) const {
    if (oracle_ != OracleKind::IntervalRefinement)
        throw BasisMismatch("enclosures are only available for interval bases");
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto& col = cache_[i];
    while (static_cast<int>(col.size()) <= depth) {
        int d = static_cast<int>(col.size());
        Interval iv = enclosures_[i](d);
        if (!col.empty()) {
            const Interval& prev = col.back();
            bool nested = iv.lo >= prev.lo && iv.hi <= prev.hi;
            bool narrowing = 2 * iv.width() <= prev.width() || iv.width() == 0;
            if (!nested || (!narrowing && prev.width() != 0))
                throw OracleStall("enclosure for '" + names_[i] + "' failed to narrow at depth " +
                                  std::to_string(d));
        }
        col.push_back(iv);
    }
    return col[depth];
}

Scalar::Scalar(BasisPtr basis, RatVec coords) : basis_(std::move(basis)), coords_(std::move(coords)) {
    if (basis_ && coords_.size() != basis_->size() + 1)
        throw BasisMismatch("coordinate vector size does not match basis");
    if (!basis_ && coords_.size() != 1)
        throw BasisMismatch("rational Scalar must have a single coordinate");
    for (auto& c : coords_) c.canonicalize();
    trim();
}

Scalar Scalar::symbol(const BasisPtr& basis, std::size_t i) {
    RatVec coords(basis->size() + 1, Rat(0));
    coords[i + 1] = 1;
    return Scalar(basis, std::move(coords));
}

void Scalar::trim() {
    if (!basis_) return;
    for (std::size_t i = 1; i < coords_.size(); ++i)
        if (coords_[i] != 0) return;
    coords_.resize(1);
    basis_.reset();
}

bool Scalar::is_rational() const { return !basis_; }

Rat Scalar::rational_value() const {
    if (basis_) throw ScalarProduct("Scalar is not rational");
    return coords_[0];
}

bool Scalar::is_zero() const {
    for (const auto& c : coords_)
        if (c != 0) return false;
    return true;
}

BasisPtr common_basis(const Scalar& a, const Scalar& b) {
    if (!a.basis()) return b.basis();
    if (!b.basis()) return a.basis();
    if (a.basis() != b.basis()) throw BasisMismatch("scalars over different symbol bases");
    return a.basis();
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    for (auto& c : r.coords_) c = -c;
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    BasisPtr b = common_basis(*this, o);
    if (b && !basis_) {
        coords_.resize(b->size() + 1, Rat(0));
        basis_ = b;
    }
    for (std::size_t i = 0; i < o.coords_.size(); ++i) coords_[i] += o.coords_[i];
    trim();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Rat& q) {
    for (auto& c : coords_) c *= q;
    trim();
    return *this;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_rational()) return b * a.rational_value();
    if (b.is_rational()) return a * b.rational_value();
    throw ScalarProduct("product of two irrational scalars is not defined");
}

namespace {

int lex_sign(const Scalar& s) {
    // Highest-magnitude symbol present dominates; fall back to q0.
    const RatVec& c = s.coords();
    for (std::size_t i = c.size(); i-- > 1;)
        if (c[i] != 0) return sgn(c[i]);
    return sgn(c[0]);
}

Interval interval_eval(const Scalar& s, int depth) {
    const RatVec& c = s.coords();
    Interval acc{c[0], c[0]};
    for (std::size_t i = 1; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        Interval iv = s.basis()->enclosure(i - 1, depth);
        Rat a = c[i] * iv.lo, b = c[i] * iv.hi;
        if (a > b) std::swap(a, b);
        acc.lo += a;
        acc.hi += b;
    }
    return acc;
}

int interval_sign(const Scalar& s) {
    int depth = 0;
    while (true) {
        Interval iv = interval_eval(s, depth);
        if (iv.lo > 0) return 1;
        if (iv.hi < 0) return -1;
        if (iv.lo == 0 && iv.hi == 0) return 0;
        if (depth >= SymbolBasis::kMaxDepth)
            throw OracleStall("sign undecided at maximum refinement depth");
        depth = depth == 0 ? 1 : std::min(depth * 2, SymbolBasis::kMaxDepth);
    }
}

} // namespace

int sign(const Scalar& s) {
    if (s.is_zero()) return 0;
    if (s.is_rational()) return sgn(s.rational_value());
    switch (s.basis()->oracle()) {
    case OracleKind::Lexicographic:
        return lex_sign(s);
    case OracleKind::IntervalRefinement:
        return interval_sign(s);
    }
    return 0;
}

bool is_infinitesimal(const Scalar& b, const Scalar& a) {
    if (sign(a) < 0 || sign(b) < 0) throw NegativeInput("is_infinitesimal requires a,b >= 0");
    if (b.is_zero()) return sign(a) > 0;
    BasisPtr basis = common_basis(a, b);
    if (!basis || basis->oracle() == OracleKind::IntervalRefinement) {
        // Archimedean order: only 0 is infinitesimal.
        return false;
    }
    // Lexicographic: compare the highest-magnitude support.
    auto top = [](const Scalar& s) {
        const RatVec& c = s.coords();
        for (std::size_t i = c.size(); i-- > 1;)
            if (c[i] != 0) return i;
        return std::size_t(0);
    };
    return top(b) < top(a);
}

Interval enclose(const Scalar& s, int depth) {
    if (s.is_rational()) return Interval{s.coords()[0], s.coords()[0]};
    if (s.basis()->oracle() != OracleKind::IntervalRefinement)
        throw BasisMismatch("enclose requires an interval oracle");
    return interval_eval(s, depth);
}

std::string Scalar::str() const {
    std::ostringstream out;
    bool first = true;
    auto emit = [&](const Rat& q, const std::string& sym) {
        if (q == 0) return;
        if (!first) out << (q > 0 ? " + " : " - ");
        Rat aq = first ? q : Rat(abs(q));
        if (sym.empty()) {
            out << aq.get_str();
        } else if (aq == 1) {
            out << sym;
        } else if (aq == -1) {
            out << "-" << sym;
        } else {
            out << aq.get_str() << "*" << sym;
        }
        first = false;
    };
    emit(coords_[0], "");
    for (std::size_t i = 1; i < coords_.size(); ++i) emit(coords_[i], basis_->names()[i - 1]);
    if (first) out << "0";
    return out.str();
}

namespace {

Rat parse_fraction(const std::string& tok) {
    std::string t = tok;
    t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char c) { return std::isspace(c); }),
            t.end());
    if (t.empty()) throw ParseError("empty number");
    try {
        Rat q(t);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw ParseError("bad fraction: '" + tok + "'");
    }
}

} // namespace

Scalar parse_scalar(const std::string& text, const BasisPtr& basis) {
    // Terms separated by '+' or a '-' that starts a new term.
    std::vector<std::string> terms;
    std::string cur;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char ch = text[i];
        if (ch == '+') {
            terms.push_back(cur);
            cur.clear();
        } else if (ch == '-' && !cur.empty() &&
                   cur.find_first_not_of(" \t") != std::string::npos) {
            terms.push_back(cur);
            cur = "-";
        } else {
            cur += ch;
        }
    }
    terms.push_back(cur);

    std::size_t m = basis ? basis->size() : 0;
    RatVec coords(m + 1, Rat(0));
    bool any = false;
    for (auto& term : terms) {
        std::string t = term;
        t.erase(std::remove_if(t.begin(), t.end(),
                               [](unsigned char c) { return std::isspace(c); }),
                t.end());
        if (t.empty()) continue;
        any = true;
        bool neg = false;
        while (!t.empty() && (t[0] == '-' || t[0] == '+')) {
            if (t[0] == '-') neg = !neg;
            t.erase(t.begin());
        }
        Rat coeff(1);
        std::string sym;
        auto star = t.find('*');
        if (star != std::string::npos) {
            coeff = parse_fraction(t.substr(0, star));
            sym = t.substr(star + 1);
        } else if (!t.empty() && (std::isdigit(static_cast<unsigned char>(t[0])) || t[0] == '/')) {
            coeff = parse_fraction(t);
        } else {
            sym = t;
        }
        if (neg) coeff = -coeff;
        if (sym.empty()) {
            coords[0] += coeff;
        } else {
            if (!basis) throw SemanticError("symbol '" + sym + "' used without a basis");
            const auto& names = basis->names();
            auto it = std::find(names.begin(), names.end(), sym);
            if (it == names.end()) throw SemanticError("unknown symbol '" + sym + "'");
            coords[1 + static_cast<std::size_t>(it - names.begin())] += coeff;
        }
    }
    if (!any) throw ParseError("empty scalar expression");
    if (m == 0) return Scalar(coords[0]);
    return Scalar(basis, std::move(coords));
}

} // namespace valfan
