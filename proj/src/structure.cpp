#include "gckit/structure.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace gckit {

// ---------------------------------------------------------------- signature

Signature::Signature(std::initializer_list<Symbol> symbols) : Signature(std::vector<Symbol>(symbols)) {}

Signature::Signature(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        if (symbols_[i].name.empty()) throw InputError("empty relation symbol name");
        if (symbols_[i].arity < 1) throw InputError("relation symbol " + symbols_[i].name + " has arity < 1");
        for (std::size_t j = 0; j < i; ++j)
            if (symbols_[j].name == symbols_[i].name)
                throw InputError("duplicate relation symbol " + symbols_[i].name);
    }
}

std::optional<std::size_t> Signature::find(std::string_view name) const {
    for (std::size_t i = 0; i < symbols_.size(); ++i)
        if (symbols_[i].name == name) return i;
    return std::nullopt;
}

bool Signature::is_modal() const {
    return std::all_of(symbols_.begin(), symbols_.end(), [](const Symbol& s) { return s.arity <= 2; });
}

int Signature::max_arity() const {
    int m = 0;
    for (const auto& s : symbols_) m = std::max(m, s.arity);
    return m;
}

Signature Signature::with(Symbol s) const {
    auto v = symbols_;
    v.push_back(std::move(s));
    return Signature(std::move(v));
}

std::string Signature::to_string() const {
    std::string out;
    for (const auto& s : symbols_) {
        if (!out.empty()) out += ' ';
        out += s.name + "/" + std::to_string(s.arity);
    }
    return out;
}

// ---------------------------------------------------------------- relation

std::size_t TupleHash::operator()(const Tuple& t) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (Elem e : t) {
        h ^= static_cast<std::size_t>(e) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

bool Relation::insert(const Tuple& t) {
    if (static_cast<int>(t.size()) != arity_) throw InputError("tuple arity mismatch");
    if (!index_.insert(t).second) return false;
    tuples_.insert(t);
    return true;
}

bool Relation::contains(std::span<const Elem> t) const {
    return index_.count(Tuple(t.begin(), t.end())) != 0;
}

// ---------------------------------------------------------------- structure

Structure::Structure(Signature sig, std::vector<std::string> universe)
    : sig_(std::move(sig)), universe_(std::move(universe)) {
    for (std::size_t i = 0; i < universe_.size(); ++i) {
        if (!lookup_.emplace(universe_[i], static_cast<Elem>(i)).second)
            throw InputError("duplicate element " + universe_[i]);
    }
    rels_.reserve(sig_.size());
    for (const auto& s : sig_.symbols()) rels_.emplace_back(s.arity);
}

std::optional<Elem> Structure::find(std::string_view name) const {
    auto it = lookup_.find(std::string(name));
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

Elem Structure::at(std::string_view name) const {
    auto e = find(name);
    if (!e) throw InputError("unknown element " + std::string(name));
    return *e;
}

std::size_t Structure::relation_index(std::string_view name) const {
    auto i = sig_.find(name);
    if (!i) throw InputError("unknown relation symbol " + std::string(name));
    return *i;
}

const Relation& Structure::relation(std::string_view name) const { return rels_[relation_index(name)]; }

void Structure::add(std::size_t rel, const Tuple& t) {
    if (rel >= rels_.size()) throw InputError("relation index out of range");
    if (static_cast<int>(t.size()) != sig_[rel].arity)
        throw InputError("arity mismatch for " + sig_[rel].name);
    for (Elem e : t)
        if (e < 0 || static_cast<std::size_t>(e) >= universe_.size())
            throw InputError("tuple element out of range for " + sig_[rel].name);
    rels_[rel].insert(t);
}

void Structure::add(std::string_view rel, const std::vector<std::string>& names) {
    Tuple t;
    t.reserve(names.size());
    for (const auto& n : names) t.push_back(at(n));
    add(relation_index(rel), t);
}

std::size_t Structure::tuple_count() const {
    std::size_t n = 0;
    for (const auto& r : rels_) n += r.size();
    return n;
}

bool Structure::operator==(const Structure& o) const {
    return sig_ == o.sig_ && universe_ == o.universe_ && rels_ == o.rels_;
}

PointedStructure::PointedStructure(Structure s, Elem p) : structure(std::move(s)), point(p) {
    if (!structure.signature().is_modal())
        throw InputError("pointed structures need a modal signature (arities 1 and 2)");
    if (p < 0 || static_cast<std::size_t>(p) >= structure.size())
        throw InputError("point is not an element of the universe");
}

// ---------------------------------------------------------------- raw

std::vector<std::string> validate(const RawStructure& raw) {
    std::vector<std::string> out;
    std::unordered_set<std::string> elems;
    for (const auto& s : raw.signature.symbols())
        if (s.arity < 1 || s.arity > kMaxArity)
            out.push_back("symbol " + s.name + " has arity " + std::to_string(s.arity) + " outside 1.." +
                          std::to_string(kMaxArity));
    for (const auto& e : raw.universe)
        if (!elems.insert(e).second) out.push_back("duplicate element " + e);
    for (const auto& [rel, args] : raw.tuples) {
        auto i = raw.signature.find(rel);
        if (!i) {
            out.push_back("unknown relation symbol " + rel);
            continue;
        }
        if (static_cast<int>(args.size()) != raw.signature[*i].arity)
            out.push_back("tuple for " + rel + " has " + std::to_string(args.size()) + " entries, arity is " +
                          std::to_string(raw.signature[*i].arity));
        for (const auto& a : args)
            if (!elems.count(a)) out.push_back("tuple for " + rel + " mentions unknown element " + a);
    }
    if (raw.point) {
        if (!elems.count(*raw.point)) out.push_back("point " + *raw.point + " is not in the universe");
        if (!raw.signature.is_modal()) out.push_back("pointed structure needs a modal signature");
    }
    return out;
}

Structure build(const RawStructure& raw) {
    auto problems = validate(raw);
    if (!problems.empty()) {
        std::string msg = "invalid structure " + raw.name + ":";
        for (const auto& p : problems) msg += "\n  " + p;
        throw InputError(msg);
    }
    Structure s(raw.signature, raw.universe);
    for (const auto& [rel, args] : raw.tuples) s.add(rel, args);
    return s;
}

RawStructure to_raw(const Structure& s, std::string name, std::optional<Elem> point) {
    RawStructure r;
    r.name = std::move(name);
    r.signature = s.signature();
    r.universe = s.universe();
    for (std::size_t i = 0; i < s.signature().size(); ++i)
        for (const auto& t : s.relation(i).tuples()) {
            std::vector<std::string> names;
            for (Elem e : t) names.push_back(s.name(e));
            r.tuples.emplace_back(s.signature()[i].name, std::move(names));
        }
    if (point) r.point = s.name(*point);
    return r;
}

// ---------------------------------------------------------------- homomorphisms

namespace {

void check_total(const Structure& dom, const Structure& cod, const Map& f) {
    if (f.size() != dom.size()) throw InputError("map is not total on the domain");
    for (Elem v : f)
        if (v < 0 || static_cast<std::size_t>(v) >= cod.size()) throw InputError("map value outside the codomain");
    if (!(dom.signature() == cod.signature())) throw InputError("signature mismatch");
}

Tuple image(const Tuple& t, const Map& f) {
    Tuple r(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) r[i] = f[static_cast<std::size_t>(t[i])];
    return r;
}

// Backtracking over domain elements in a fixed order; each constraint tuple is
// checked once all its elements are assigned.
class HomEngine {
public:
    HomEngine(const Structure& dom, const Structure& cod, std::vector<Elem> order, bool injective)
        : dom_(dom), cod_(cod), order_(std::move(order)), injective_(injective) {
        std::vector<int> pos(dom.size());
        for (std::size_t i = 0; i < order_.size(); ++i) pos[static_cast<std::size_t>(order_[i])] = static_cast<int>(i);
        checks_.resize(order_.size());
        for (std::size_t r = 0; r < dom.signature().size(); ++r)
            for (const auto& t : dom.relation(r).tuples()) {
                int last = 0;
                for (Elem e : t) last = std::max(last, pos[static_cast<std::size_t>(e)]);
                checks_[static_cast<std::size_t>(last)].push_back({r, &t});
            }
        f_.assign(dom.size(), -1);
        used_.assign(cod.size(), 0);
    }

    void fix(Elem x, Elem y) { fixed_.emplace_back(x, y); }

    // Visits each homomorphism; the visitor returns false to stop.
    void run(const std::function<bool(const Map&)>& visit) {
        visit_ = &visit;
        stop_ = false;
        if (dom_.size() == 0) {
            if (count_only_)
                ++counter_;
            else
                visit(f_);
            return;
        }
        if (cod_.size() == 0) return;
        rec(0);
    }

    std::uint64_t count() {
        count_only_ = true;
        counter_ = 0;
        std::function<bool(const Map&)> v = [](const Map&) { return true; };
        run(v);
        return counter_;
    }

private:
    struct Check {
        std::size_t rel;
        const Tuple* tuple;
    };

    bool ok(std::size_t depth) {
        Tuple img;
        for (const auto& c : checks_[depth]) {
            img.resize(c.tuple->size());
            for (std::size_t i = 0; i < img.size(); ++i) img[i] = f_[static_cast<std::size_t>((*c.tuple)[i])];
            if (!cod_.holds(c.rel, img)) return false;
        }
        return true;
    }

    void rec(std::size_t depth) {
        if (stop_) return;
        if (depth == order_.size()) {
            if (count_only_) {
                ++counter_;
                return;
            }
            if (!(*visit_)(f_)) stop_ = true;
            return;
        }
        Elem x = order_[depth];
        Elem lo = 0, hi = static_cast<Elem>(cod_.size()) - 1;
        for (auto [fx, fy] : fixed_)
            if (fx == x) lo = hi = fy;
        for (Elem y = lo; y <= hi && !stop_; ++y) {
            if (injective_ && used_[static_cast<std::size_t>(y)]) continue;
            f_[static_cast<std::size_t>(x)] = y;
            if (ok(depth)) {
                used_[static_cast<std::size_t>(y)] = 1;
                rec(depth + 1);
                used_[static_cast<std::size_t>(y)] = 0;
            }
        }
        f_[static_cast<std::size_t>(x)] = -1;
    }

    const Structure& dom_;
    const Structure& cod_;
    std::vector<Elem> order_;
    bool injective_;
    std::vector<std::vector<Check>> checks_;
    std::vector<std::pair<Elem, Elem>> fixed_;
    Map f_;
    std::vector<char> used_;
    const std::function<bool(const Map&)>* visit_ = nullptr;
    bool stop_ = false;
    bool count_only_ = false;
    std::uint64_t counter_ = 0;
};

std::vector<Elem> identity_order(std::size_t n) {
    std::vector<Elem> o(n);
    std::iota(o.begin(), o.end(), 0);
    return o;
}

// Breadth-first order over the Gaifman graph so constraints fire early.
std::vector<Elem> connected_order(const Structure& s) {
    auto adj = gaifman(s);
    std::vector<Elem> order;
    std::vector<char> seen(s.size(), 0);
    for (std::size_t start = 0; start < s.size(); ++start) {
        if (seen[start]) continue;
        std::vector<Elem> queue{static_cast<Elem>(start)};
        seen[start] = 1;
        for (std::size_t q = 0; q < queue.size(); ++q) {
            Elem v = queue[q];
            order.push_back(v);
            for (Elem w : adj[static_cast<std::size_t>(v)])
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    queue.push_back(w);
                }
        }
    }
    return order;
}

}  // namespace

bool hom_check(const Structure& dom, const Structure& cod, const Map& f) {
    check_total(dom, cod, f);
    for (std::size_t r = 0; r < dom.signature().size(); ++r)
        for (const auto& t : dom.relation(r).tuples())
            if (!cod.holds(r, image(t, f))) return false;
    return true;
}

bool is_injective(const Map& f) {
    std::unordered_set<Elem> seen;
    for (Elem v : f)
        if (!seen.insert(v).second) return false;
    return true;
}

bool is_embedding(const Structure& dom, const Structure& cod, const Map& f) {
    if (!hom_check(dom, cod, f) || !is_injective(f)) return false;
    std::unordered_map<Elem, Elem> inv;
    for (std::size_t i = 0; i < f.size(); ++i) inv[f[i]] = static_cast<Elem>(i);
    for (std::size_t r = 0; r < cod.signature().size(); ++r)
        for (const auto& t : cod.relation(r).tuples()) {
            Tuple pre;
            bool inside = true;
            for (Elem e : t) {
                auto it = inv.find(e);
                if (it == inv.end()) {
                    inside = false;
                    break;
                }
                pre.push_back(it->second);
            }
            if (inside && !dom.holds(r, pre)) return false;
        }
    return true;
}

std::vector<Map> find_homs(const Structure& dom, const Structure& cod, const HomSearchOptions& opt) {
    if (!(dom.signature() == cod.signature())) throw InputError("signature mismatch");
    HomEngine eng(dom, cod, identity_order(dom.size()), opt.injective);
    for (auto [x, y] : opt.fixed) {
        if (x < 0 || static_cast<std::size_t>(x) >= dom.size() || y < 0 || static_cast<std::size_t>(y) >= cod.size())
            throw InputError("fixed assignment out of range");
        eng.fix(x, y);
    }
    std::vector<Map> out;
    eng.run([&](const Map& f) {
        out.push_back(f);
        return opt.limit == 0 || out.size() < opt.limit;
    });
    return out;
}

std::optional<Map> find_hom(const Structure& dom, const Structure& cod) {
    HomSearchOptions opt;
    opt.limit = 1;
    auto v = find_homs(dom, cod, opt);
    if (v.empty()) return std::nullopt;
    return v.front();
}

std::uint64_t count_homs(const Structure& dom, const Structure& cod) {
    if (!(dom.signature() == cod.signature())) throw InputError("signature mismatch");
    HomEngine eng(dom, cod, connected_order(dom), false);
    return eng.count();
}

std::optional<Map> iso_check(const Structure& a, const Structure& b) {
    if (!(a.signature() == b.signature())) throw InputError("signature mismatch");
    if (a.size() != b.size()) return std::nullopt;
    for (std::size_t r = 0; r < a.signature().size(); ++r)
        if (a.relation(r).size() != b.relation(r).size()) return std::nullopt;
    HomSearchOptions opt;
    opt.limit = 1;
    opt.injective = true;
    auto v = find_homs(a, b, opt);
    if (v.empty()) return std::nullopt;
    return v.front();
}

// ---------------------------------------------------------------- graphs and constructions

std::vector<std::vector<Elem>> gaifman(const Structure& s) {
    std::vector<std::set<Elem>> adj(s.size());
    for (std::size_t r = 0; r < s.signature().size(); ++r)
        for (const auto& t : s.relation(r).tuples())
            for (Elem x : t)
                for (Elem y : t)
                    if (x != y) adj[static_cast<std::size_t>(x)].insert(y);
    std::vector<std::vector<Elem>> out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) out[i].assign(adj[i].begin(), adj[i].end());
    return out;
}

Structure gaifman_structure(const Structure& s) {
    Structure g(Signature{{"E", 2}}, s.universe());
    auto adj = gaifman(s);
    for (std::size_t i = 0; i < adj.size(); ++i)
        for (Elem j : adj[i]) g.add(0, {static_cast<Elem>(i), j});
    return g;
}

std::vector<std::vector<Elem>> components(const std::vector<std::vector<Elem>>& adj) {
    std::vector<std::vector<Elem>> out;
    std::vector<char> seen(adj.size(), 0);
    for (std::size_t s = 0; s < adj.size(); ++s) {
        if (seen[s]) continue;
        std::vector<Elem> comp{static_cast<Elem>(s)};
        seen[s] = 1;
        for (std::size_t q = 0; q < comp.size(); ++q)
            for (Elem w : adj[static_cast<std::size_t>(comp[q])])
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    comp.push_back(w);
                }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

Structure disjoint_union(const Structure& a, const Structure& b) {
    if (!(a.signature() == b.signature())) throw InputError("signature mismatch");
    std::vector<std::string> u;
    for (const auto& n : a.universe()) u.push_back("1." + n);
    for (const auto& n : b.universe()) u.push_back("2." + n);
    Structure s(a.signature(), u);
    Elem off = static_cast<Elem>(a.size());
    for (std::size_t r = 0; r < a.signature().size(); ++r) {
        for (const auto& t : a.relation(r).tuples()) s.add(r, t);
        for (auto t : b.relation(r).tuples()) {
            for (auto& e : t) e += off;
            s.add(r, t);
        }
    }
    return s;
}

Structure product(const Structure& a, const Structure& b) {
    if (!(a.signature() == b.signature())) throw InputError("signature mismatch");
    std::vector<std::string> u;
    for (const auto& x : a.universe())
        for (const auto& y : b.universe()) u.push_back("(" + x + "," + y + ")");
    Structure s(a.signature(), u);
    Elem nb = static_cast<Elem>(b.size());
    for (std::size_t r = 0; r < a.signature().size(); ++r)
        for (const auto& ta : a.relation(r).tuples())
            for (const auto& tb : b.relation(r).tuples()) {
                Tuple t(ta.size());
                for (std::size_t i = 0; i < t.size(); ++i) t[i] = ta[i] * nb + tb[i];
                s.add(r, t);
            }
    return s;
}

Structure induced(const Structure& s, const std::vector<Elem>& elems) {
    std::vector<std::string> u;
    std::unordered_map<Elem, Elem> pos;
    for (Elem e : elems) {
        pos[e] = static_cast<Elem>(u.size());
        u.push_back(s.name(e));
    }
    Structure out(s.signature(), u);
    for (std::size_t r = 0; r < s.signature().size(); ++r)
        for (const auto& t : s.relation(r).tuples()) {
            Tuple nt;
            bool inside = true;
            for (Elem e : t) {
                auto it = pos.find(e);
                if (it == pos.end()) {
                    inside = false;
                    break;
                }
                nt.push_back(it->second);
            }
            if (inside) out.add(r, nt);
        }
    return out;
}

Signature i_signature(const Signature& sig) {
    if (sig.contains(kEqualitySymbol))
        throw InputError("relation symbol I is reserved for equality; rename it or disable equality");
    return sig.with({kEqualitySymbol, 2});
}

Structure i_expand(const Structure& s) {
    Structure out(i_signature(s.signature()), s.universe());
    for (std::size_t r = 0; r < s.signature().size(); ++r)
        for (const auto& t : s.relation(r).tuples()) out.add(r, t);
    std::size_t ir = s.signature().size();
    for (std::size_t i = 0; i < s.size(); ++i) out.add(ir, {static_cast<Elem>(i), static_cast<Elem>(i)});
    return out;
}

Structure i_quotient(const Structure& s) {
    auto ir = s.signature().find(kEqualitySymbol);
    if (!ir) throw InputError("i_quotient needs the equality symbol I");
    std::vector<Elem> uf(s.size());
    std::iota(uf.begin(), uf.end(), 0);
    std::function<Elem(Elem)> root = [&](Elem x) {
        while (uf[static_cast<std::size_t>(x)] != x) x = uf[static_cast<std::size_t>(x)] = uf[static_cast<std::size_t>(uf[static_cast<std::size_t>(x)])];
        return x;
    };
    for (const auto& t : s.relation(*ir).tuples()) {
        Elem a = root(t[0]), b = root(t[1]);
        if (a != b) uf[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
    std::vector<Symbol> syms;
    for (std::size_t r = 0; r < s.signature().size(); ++r)
        if (r != *ir) syms.push_back(s.signature()[r]);
    std::map<Elem, std::vector<Elem>> classes;
    for (std::size_t i = 0; i < s.size(); ++i) classes[root(static_cast<Elem>(i))].push_back(static_cast<Elem>(i));
    std::vector<std::string> u;
    std::vector<Elem> cls(s.size());
    for (const auto& [rep, members] : classes) {
        std::string name;
        for (Elem m : members) {
            if (!name.empty()) name += "=";
            name += s.name(m);
            cls[static_cast<std::size_t>(m)] = static_cast<Elem>(u.size());
        }
        u.push_back(name);
    }
    Structure out(Signature(syms), u);
    std::size_t nr = 0;
    for (std::size_t r = 0; r < s.signature().size(); ++r) {
        if (r == *ir) continue;
        for (const auto& t : s.relation(r).tuples()) out.add(nr, image(t, cls));
        ++nr;
    }
    return out;
}

// ---------------------------------------------------------------- canonical forms and enumeration

std::string element_label(int i) {
    if (i < 26) return std::string(1, static_cast<char>('a' + i));
    return "e" + std::to_string(i);
}

std::string canonical_form(const Structure& s) {
    if (s.size() > 9) throw GuardError("canonical_form supports at most 9 elements");
    std::vector<Elem> perm = identity_order(s.size());
    std::string best;
    bool first = true;
    do {
        std::ostringstream os;
        os << s.size() << ';';
        for (std::size_t r = 0; r < s.signature().size(); ++r) {
            std::vector<Tuple> ts;
            for (const auto& t : s.relation(r).tuples()) ts.push_back(image(t, perm));
            std::sort(ts.begin(), ts.end());
            os << s.signature()[r].name << ':';
            for (const auto& t : ts) {
                for (Elem e : t) os << e << ',';
                os << ' ';
            }
            os << ';';
        }
        std::string c = os.str();
        if (first || c < best) {
            best = std::move(c);
            first = false;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

namespace {

struct Layout {
    int n;
    std::vector<std::pair<std::size_t, Tuple>> bits;  // bit -> (relation, tuple)
    std::vector<std::vector<int>> perms;               // perms[p][bit] = permuted bit
};

Tuple decode(std::size_t code, int arity, int n) {
    Tuple t(static_cast<std::size_t>(arity));
    for (int i = arity - 1; i >= 0; --i) {
        t[static_cast<std::size_t>(i)] = static_cast<Elem>(code % static_cast<std::size_t>(n));
        code /= static_cast<std::size_t>(n);
    }
    return t;
}

Layout make_layout(int n, const std::vector<std::pair<std::size_t, Tuple>>& bits) {
    Layout L{n, bits, {}};
    std::map<std::pair<std::size_t, Tuple>, int> where;
    for (std::size_t i = 0; i < bits.size(); ++i) where[bits[i]] = static_cast<int>(i);
    std::vector<Elem> perm = identity_order(static_cast<std::size_t>(n));
    do {
        std::vector<int> pb(bits.size());
        for (std::size_t i = 0; i < bits.size(); ++i) {
            auto key = bits[i];
            for (auto& e : key.second) e = perm[static_cast<std::size_t>(e)];
            if (bits[i].second.size() == 2 && key.second[0] > key.second[1] && !where.count(key))
                std::swap(key.second[0], key.second[1]);  // undirected layout stores i<j only
            pb[i] = where.at(key);
        }
        L.perms.push_back(std::move(pb));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return L;
}

bool is_minimal(std::uint64_t mask, const Layout& L) {
    for (std::size_t p = 1; p < L.perms.size(); ++p) {
        std::uint64_t img = 0;
        const auto& pb = L.perms[p];
        for (std::uint64_t m = mask; m; m &= m - 1) img |= 1ULL << pb[static_cast<std::size_t>(__builtin_ctzll(m))];
        if (img < mask) return false;
    }
    return true;
}

std::vector<std::string> labels(int n) {
    std::vector<std::string> u;
    for (int i = 0; i < n; ++i) u.push_back(element_label(i));
    return u;
}

constexpr int kMaxEnumerationBits = 24;

}  // namespace

void for_each_structure(const Signature& sig, int max_size, const std::function<void(const Structure&)>& fn) {
    for (int n = 1; n <= max_size; ++n) {
        std::vector<std::pair<std::size_t, Tuple>> bits;
        for (std::size_t r = 0; r < sig.size(); ++r) {
            std::size_t total = 1;
            for (int i = 0; i < sig[r].arity; ++i) total *= static_cast<std::size_t>(n);
            for (std::size_t c = 0; c < total; ++c) bits.emplace_back(r, decode(c, sig[r].arity, n));
        }
        if (bits.size() > kMaxEnumerationBits)
            throw GuardError("enumeration of size " + std::to_string(n) + " over " + sig.to_string() +
                             " needs 2^" + std::to_string(bits.size()) + " labelled structures");
        Layout L = make_layout(n, bits);
        std::uint64_t limit = 1ULL << bits.size();
        for (std::uint64_t mask = 0; mask < limit; ++mask) {
            if (!is_minimal(mask, L)) continue;
            Structure s(sig, labels(n));
            for (std::size_t b = 0; b < bits.size(); ++b)
                if (mask >> b & 1ULL) s.add(bits[b].first, bits[b].second);
            fn(s);
        }
    }
}

std::vector<Structure> enumerate_structures(const Signature& sig, int max_size) {
    std::vector<Structure> out;
    for_each_structure(sig, max_size, [&](const Structure& s) { out.push_back(s); });
    return out;
}

std::vector<Structure> enumerate_graphs(int max_size, bool connected_only) {
    std::vector<Structure> out;
    for (int n = 1; n <= max_size; ++n) {
        std::vector<std::pair<std::size_t, Tuple>> bits;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) bits.emplace_back(0, Tuple{i, j});
        if (bits.size() > kMaxEnumerationBits) throw GuardError("graph enumeration too large");
        Layout L = make_layout(n, bits);
        std::uint64_t limit = 1ULL << bits.size();
        for (std::uint64_t mask = 0; mask < limit; ++mask) {
            if (!is_minimal(mask, L)) continue;
            std::vector<std::pair<int, int>> edges;
            for (std::size_t b = 0; b < bits.size(); ++b)
                if (mask >> b & 1ULL) edges.emplace_back(bits[b].second[0], bits[b].second[1]);
            Structure g = make_graph(n, edges);
            if (connected_only && components(gaifman(g)).size() != 1) continue;
            out.push_back(std::move(g));
        }
    }
    return out;
}

Structure make_graph(int n, const std::vector<std::pair<int, int>>& edges, bool symmetric) {
    Structure g(Signature{{"E", 2}}, labels(n));
    for (auto [a, b] : edges) {
        g.add(0, {a, b});
        if (symmetric) g.add(0, {b, a});
    }
    return g;
}

Structure complete_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return make_graph(n, e);
}

Structure cycle_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return make_graph(n, e);
}

Structure path_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return make_graph(n, e);
}

}  // namespace gckit
