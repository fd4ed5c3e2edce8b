#include <algorithm>

#include "gckit/logic.hpp"

namespace gckit {

std::string polarity_name(Polarity p) {
    switch (p) {
        case Polarity::Full: return "full";
        case Polarity::Existential: return "exists";
        case Polarity::Positive: return "pos";
        case Polarity::ExistentialPositive: return "ep";
    }
    return "?";
}

Polarity parse_polarity(const std::string& s) {
    if (s == "full") return Polarity::Full;
    if (s == "exists") return Polarity::Existential;
    if (s == "pos") return Polarity::Positive;
    if (s == "ep") return Polarity::ExistentialPositive;
    throw InputError("unknown polarity '" + s + "' (expected full, exists, pos or ep)");
}

std::string Fragment::to_string() const {
    std::string fam = family == FragmentFamily::Rank ? "rank" : family == FragmentFamily::Vars ? "vars" : "modal";
    std::string out = fam + "=" + std::to_string(resource) + " " + polarity_name(polarity);
    if (counting) out += " counting";
    if (family != FragmentFamily::Modal && !equality) out += " no-equality";
    return out;
}

void validate_fragment(const Fragment& fr) {
    if (fr.resource < 0) throw InputError("resource bound must be non-negative");
    if (fr.family == FragmentFamily::Vars && fr.resource < 1) throw InputError("variable count must be at least 1");
    if (fr.counting && fr.polarity != Polarity::Full)
        throw InputError("counting quantifiers are only supported with full polarity");
}

bool RankType::operator==(const RankType& o) const { return atomic == o.atomic && children == o.children; }

bool RankType::operator<(const RankType& o) const {
    if (atomic != o.atomic) return atomic < o.atomic;
    return std::lexicographical_compare(children.begin(), children.end(), o.children.begin(), o.children.end());
}

namespace {

std::string atomic_signature(const Structure& a, const Tuple& t, bool equality) {
    const Signature& sig = a.signature();
    const std::size_t m = t.size();
    std::string out;
    for (std::size_t r = 0; r < sig.size(); ++r) {
        const int ar = sig[r].arity;
        std::size_t combos = 1;
        for (int i = 0; i < ar; ++i) combos *= m;
        Tuple img(static_cast<std::size_t>(ar));
        for (std::size_t c = 0; c < combos; ++c) {
            std::size_t x = c;
            for (int i = ar - 1; i >= 0; --i) {
                img[static_cast<std::size_t>(i)] = t[x % m];
                x /= m;
            }
            out.push_back(a.holds(r, img) ? '1' : '0');
        }
        out.push_back('|');
    }
    if (equality)
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) out.push_back(t[i] == t[j] ? '=' : '!');
    return out;
}

void finish(std::vector<RankType>& kids, bool counting) {
    std::sort(kids.begin(), kids.end());
    if (!counting) kids.erase(std::unique(kids.begin(), kids.end()), kids.end());
}

}  // namespace

RankType rank_type(const Structure& a, const Tuple& tuple, int k, bool equality, bool counting) {
    RankType t;
    t.atomic = atomic_signature(a, tuple, equality);
    if (k <= 0) return t;
    Tuple ext = tuple;
    ext.push_back(0);
    for (std::size_t b = 0; b < a.size(); ++b) {
        ext.back() = static_cast<Elem>(b);
        t.children.push_back(rank_type(a, ext, k - 1, equality, counting));
    }
    finish(t.children, counting);
    return t;
}

RankType modal_type(const Structure& a, Elem state, int k, bool counting) {
    const Signature& sig = a.signature();
    RankType t;
    for (std::size_t r = 0; r < sig.size(); ++r)
        if (sig[r].arity == 1) t.atomic.push_back(a.holds(r, Tuple{state}) ? '1' : '0');
    if (k <= 0) return t;
    for (std::size_t r = 0; r < sig.size(); ++r) {
        if (sig[r].arity != 2) continue;
        RankType per;
        per.atomic = sig[r].name;
        for (const auto& tup : a.relation(r).tuples())
            if (tup[0] == state) per.children.push_back(modal_type(a, tup[1], k - 1, counting));
        finish(per.children, counting);
        t.children.push_back(std::move(per));
    }
    return t;
}

}  // namespace gckit
