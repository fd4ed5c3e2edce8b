#include "gckit/counting.hpp"

#include <sstream>

#include "gckit/coalgebra.hpp"

namespace gckit {

namespace {

std::string descriptor(const Structure& s) {
    std::ostringstream os;
    os << "elems";
    for (const auto& n : s.universe()) os << ' ' << n;
    for (std::size_t r = 0; r < s.signature().size(); ++r)
        for (const auto& t : s.relation(r).tuples()) {
            os << "; " << s.signature()[r].name;
            for (Elem e : t) os << ' ' << s.name(e);
        }
    return os.str();
}

}  // namespace

std::uint64_t hom_count(const Structure& c, const Structure& a) {
    if (c.size() > kMaxCountSource)
        throw GuardError("hom_count: source has " + std::to_string(c.size()) + " elements, limit " +
                         std::to_string(kMaxCountSource));
    if (a.size() > kMaxCountTarget)
        throw GuardError("hom_count: target has " + std::to_string(a.size()) + " elements, limit " +
                         std::to_string(kMaxCountTarget));
    return count_homs(c, a);
}

std::string ClassSpec::to_string() const {
    switch (kind) {
        case ClassKind::All: return "all";
        case ClassKind::TreeDepth: return "td " + std::to_string(bound);
        case ClassKind::TreeWidth: return "tw " + std::to_string(bound);
    }
    return "?";
}

bool ClassSpec::contains(const Structure& c) const {
    switch (kind) {
        case ClassKind::All: return true;
        case ClassKind::TreeDepth: return tree_depth(c).depth <= bound;
        case ClassKind::TreeWidth: return tree_width(c).width < bound;
    }
    return false;
}

ClassSpec parse_class(const std::string& kind, int bound) {
    if (kind == "all") return ClassSpec::all();
    if (bound < 0) throw InputError("class bound must be non-negative");
    if (kind == "td") return ClassSpec::td(bound);
    if (kind == "tw") return ClassSpec::tw(bound);
    throw InputError("unknown class '" + kind + "' (all | td K | tw N)");
}

std::vector<Structure> enumerate_class(const ClassSpec& spec, const Signature& sig, int max_size) {
    if (max_size > kMaxClassSize)
        throw GuardError("class enumeration: max size " + std::to_string(max_size) + " exceeds " +
                         std::to_string(kMaxClassSize));
    std::vector<Structure> out;
    for_each_structure(sig, max_size, [&](const Structure& s) {
        if (spec.contains(s)) out.push_back(s);
    });
    return out;
}

HomVector hom_vector(const Structure& a, const ClassSpec& spec, int max_size, const std::vector<Structure>& reps) {
    HomVector v{a, spec, max_size, {}};
    v.entries.reserve(reps.size());
    for (const auto& c : reps) v.entries.push_back({descriptor(c), hom_count(c, a)});
    return v;
}

HomVector hom_vector(const Structure& a, const ClassSpec& spec, int max_size) {
    if (a.size() > kMaxCountTarget) throw GuardError("hom_vector: query exceeds " + std::to_string(kMaxCountTarget) + " elements");
    return hom_vector(a, spec, max_size, enumerate_class(spec, a.signature(), max_size));
}

std::string LovaszReport::to_string() const {
    if (agree) return "agree on " + std::to_string(compared) + " structures";
    return "differ at " + descriptor(*separator) + ": " + std::to_string(count_a) + " vs " + std::to_string(count_b);
}

LovaszReport lovasz_compare(const Structure& a, const Structure& b, const std::vector<Structure>& reps) {
    if (!(a.signature() == b.signature())) throw InputError("lovasz_compare: signature mismatch");
    LovaszReport r;
    for (const auto& c : reps) {
        ++r.compared;
        auto x = hom_count(c, a), y = hom_count(c, b);
        if (x != y) {
            r.agree = false;
            r.separator = c;
            r.count_a = x;
            r.count_b = y;
            break;
        }
    }
    return r;
}

LovaszReport lovasz_compare(const Structure& a, const Structure& b, const ClassSpec& spec, int max_size) {
    if (!(a.signature() == b.signature())) throw InputError("lovasz_compare: signature mismatch");
    if (std::max(a.size(), b.size()) > kMaxCountTarget) throw GuardError("lovasz_compare: inputs exceed 8 elements");
    return lovasz_compare(a, b, enumerate_class(spec, a.signature(), max_size));
}

QuotientReport h_treedepth_check(const std::vector<Structure>& corpus) {
    QuotientReport r;
    for (const auto& x : corpus) {
        if (x.size() > static_cast<std::size_t>(kMaxClassSize))
            throw GuardError("h_treedepth_check: structures are limited to 4 elements");
        if (!x.signature().contains(kEqualitySymbol)) throw InputError("h_treedepth_check: structure lacks I");
        int before = tree_depth(x).depth, after = tree_depth(i_quotient(x)).depth;
        ++r.checked;
        if (after > before)
            r.violations.push_back(descriptor(x) + ": td " + std::to_string(before) + " -> " + std::to_string(after));
    }
    return r;
}

}  // namespace gckit
