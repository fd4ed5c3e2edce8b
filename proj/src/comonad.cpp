#include "gckit/comonad.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>
#include <set>

namespace gckit {

std::string Flavour::to_string() const {
    switch (kind) {
        case ComonadKind::EF: return "E_" + std::to_string(k);
        case ComonadKind::Pebble: return "P_{" + std::to_string(n) + "," + std::to_string(k) + "}";
        case ComonadKind::Modal: return "M_" + std::to_string(k);
    }
    return "?";
}

std::size_t carrier_cap() {
    if (const char* env = std::getenv("GCKIT_CARRIER_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return 200000;
}

std::uint64_t carrier_size_estimate(std::size_t base_size, const Flavour& fl) {
    std::uint64_t width = base_size;
    if (fl.kind == ComonadKind::Pebble) width *= static_cast<std::uint64_t>(fl.n);
    std::uint64_t total = 0, layer = 1;
    for (int i = 1; i <= fl.k; ++i) {
        if (width != 0 && layer > (1ULL << 62) / width) return ~0ULL;
        layer *= width;
        total += layer;
    }
    return total;
}

std::uint64_t ComonadStructure::key(Elem parent, Move m) const {
    std::uint64_t base = std::max<std::uint64_t>(1, base_.size());
    std::uint64_t code = static_cast<std::uint64_t>(m.tag + 1) * base + static_cast<std::uint64_t>(m.elem);
    return static_cast<std::uint64_t>(parent + 1) * move_space_ + code;
}

std::optional<Elem> ComonadStructure::child(Elem s, Move m) const {
    if (m.elem < 0 || static_cast<std::size_t>(m.elem) >= base_.size()) return std::nullopt;
    auto it = index_.find(key(s, m));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::optional<Elem> ComonadStructure::find(const Play& p) const {
    Elem cur = -1;
    for (const auto& m : p) {
        auto c = child(cur, m);
        if (!c) return std::nullopt;
        cur = *c;
    }
    if (cur < 0) return std::nullopt;
    return cur;
}

std::vector<Elem> ComonadStructure::chain(Elem s) const {
    std::vector<Elem> c;
    for (Elem x = s; x >= 0; x = parent(x)) c.push_back(x);
    std::reverse(c.begin(), c.end());
    return c;
}

bool ComonadStructure::is_prefix(Elem s, Elem t) const {
    if (length(s) > length(t)) return false;
    while (length(t) > length(s)) t = parent(t);
    return s == t;
}

std::string ComonadStructure::play_name(const Play& p) const {
    std::string out = "[";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) out += ",";
        if (flavour_.kind == ComonadKind::Pebble) out += std::to_string(p[i].tag) + ":";
        if (flavour_.kind == ComonadKind::Modal && p[i].tag >= 0)
            out += base_.signature()[static_cast<std::size_t>(p[i].tag)].name + ":";
        out += base_.name(p[i].elem);
    }
    return out + "]";
}

namespace {

struct PlayLess {
    bool operator()(const Play& x, const Play& y) const {
        return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(), [](const Move& m, const Move& n) {
            return m.tag != n.tag ? m.tag < n.tag : m.elem < n.elem;
        });
    }
};

}  // namespace

struct ComonadBuilder {
    static ComonadStructure build(const Structure& a, std::optional<Elem> point, const Flavour& fl, std::size_t cap,
                                  const std::set<Play, PlayLess>* keep);
};

ComonadStructure ComonadBuilder::build(const Structure& a, std::optional<Elem> point, const Flavour& fl,
                                       std::size_t cap, const std::set<Play, PlayLess>* keep) {
    if (fl.k < 0) throw InputError("comonad resource must be non-negative");
    if (fl.kind == ComonadKind::Pebble && fl.n < 1) throw InputError("pebble comonad needs at least one pebble");
    if (fl.kind != ComonadKind::Modal && fl.k < 1) throw InputError("comonad resource k must be at least 1");
    if (fl.kind == ComonadKind::Modal) {
        if (!point) throw InputError("modal comonad needs a pointed structure");
        if (!a.signature().is_modal()) throw InputError("modal comonad needs a modal signature");
    } else {
        auto est = carrier_size_estimate(a.size(), fl);
        if (!keep && est > cap)
            throw GuardError("carrier of " + fl.to_string() + " over " + std::to_string(a.size()) +
                             " elements has " + std::to_string(est) + " plays, cap is " + std::to_string(cap));
    }

    ComonadStructure g;
    g.flavour_ = fl;
    g.base_ = a;
    g.point_ = point;
    const std::size_t nsym = a.signature().size();
    const std::uint64_t base = std::max<std::size_t>(1, a.size());
    g.move_space_ = (fl.kind == ComonadKind::Modal ? nsym + 1 : static_cast<std::uint64_t>(fl.n) + 1) * base + base;

    auto add_play = [&](Elem parent, Move m) {
        Elem id = static_cast<Elem>(g.plays_.size());
        Play p = parent >= 0 ? g.plays_[static_cast<std::size_t>(parent)] : Play{};
        p.push_back(m);
        if (keep && !keep->count(p)) return;
        if (g.plays_.size() >= cap) throw GuardError("carrier cap " + std::to_string(cap) + " exceeded");
        g.plays_.push_back(std::move(p));
        g.parent_.push_back(parent);
        g.children_.emplace_back();
        if (parent >= 0)
            g.children_[static_cast<std::size_t>(parent)].push_back(id);
        else
            g.roots_.push_back(id);
        g.index_.emplace(g.key(parent, m), id);
    };

    // Breadth-first generation: parents precede children, siblings in move order.
    auto moves_after = [&](Elem parent) {
        std::vector<Move> ms;
        switch (fl.kind) {
            case ComonadKind::EF:
                for (std::size_t x = 0; x < a.size(); ++x) ms.push_back({0, static_cast<Elem>(x)});
                break;
            case ComonadKind::Pebble:
                for (int p = 1; p <= fl.n; ++p)
                    for (std::size_t x = 0; x < a.size(); ++x) ms.push_back({p, static_cast<Elem>(x)});
                break;
            case ComonadKind::Modal: {
                if (parent < 0) {
                    ms.push_back({-1, *point});
                    break;
                }
                Elem x = g.plays_[static_cast<std::size_t>(parent)].back().elem;
                for (std::size_t r = 0; r < nsym; ++r) {
                    if (a.signature()[r].arity != 2) continue;
                    for (const auto& t : a.relation(r).tuples())
                        if (t[0] == x) ms.push_back({static_cast<int>(r), t[1]});
                }
                break;
            }
        }
        return ms;
    };

    const std::size_t max_len = fl.kind == ComonadKind::Modal ? static_cast<std::size_t>(fl.k) + 1
                                                                : static_cast<std::size_t>(fl.k);
    if (a.size() > 0) {
        for (const auto& m : moves_after(-1)) add_play(-1, m);
        for (std::size_t q = 0; q < g.plays_.size(); ++q) {
            if (g.plays_[q].size() >= max_len) continue;
            for (const auto& m : moves_after(static_cast<Elem>(q))) add_play(static_cast<Elem>(q), m);
        }
    }

    std::vector<std::string> names;
    names.reserve(g.plays_.size());
    for (const auto& p : g.plays_) names.push_back(g.play_name(p));
    g.carrier_ = Structure(a.signature(), std::move(names));

    // Each related tuple lies on one chain; generate it from its deepest play.
    for (std::size_t s = 0; s < g.plays_.size(); ++s) {
        const Elem sid = static_cast<Elem>(s);
        if (fl.kind == ComonadKind::Modal) {
            Elem x = g.last(sid);
            for (std::size_t r = 0; r < nsym; ++r) {
                int ar = a.signature()[r].arity;
                if (ar == 1 && a.holds(r, Tuple{x})) g.carrier_.add(r, {sid});
            }
            int tag = g.last_tag(sid);
            if (tag >= 0) g.carrier_.add(static_cast<std::size_t>(tag), {g.parent(sid), sid});
            continue;
        }
        auto ch = g.chain(sid);
        const std::size_t L = ch.size();
        std::vector<char> active(L, 1);
        if (fl.kind == ComonadKind::Pebble) {
            const Play& p = g.plays_[s];
            for (std::size_t c = 0; c < L; ++c)
                for (std::size_t d = c + 1; d < L; ++d)
                    if (p[d].tag == p[c].tag) active[c] = 0;
        }
        std::vector<std::size_t> act;
        for (std::size_t c = 0; c < L; ++c)
            if (active[c]) act.push_back(c);
        for (std::size_t r = 0; r < nsym; ++r) {
            const int ar = a.signature()[r].arity;
            std::vector<std::size_t> idx(static_cast<std::size_t>(ar), 0);
            Tuple elems(static_cast<std::size_t>(ar)), plays(static_cast<std::size_t>(ar));
            while (true) {
                bool has_top = false;
                for (int i = 0; i < ar; ++i) {
                    std::size_t c = act[idx[static_cast<std::size_t>(i)]];
                    has_top |= c == L - 1;
                    elems[static_cast<std::size_t>(i)] = g.last(ch[c]);
                    plays[static_cast<std::size_t>(i)] = ch[c];
                }
                if (has_top && a.holds(r, elems)) g.carrier_.add(r, plays);
                int i = ar - 1;
                while (i >= 0 && ++idx[static_cast<std::size_t>(i)] == act.size()) idx[static_cast<std::size_t>(i--)] = 0;
                if (i < 0) break;
            }
        }
    }
    return g;
}

ComonadStructure build_comonad(const Structure& a, std::optional<Elem> point, const Flavour& fl, std::size_t cap) {
    return ComonadBuilder::build(a, point, fl, cap, nullptr);
}

ComonadStructure generated_subcomonad(const Structure& a, const Flavour& fl, const std::vector<Play>& plays,
                                      std::size_t cap) {
    if (fl.kind == ComonadKind::Modal) throw InputError("generated subcarriers are for EF and pebble flavours");
    std::set<Play, PlayLess> keep;
    for (const auto& p : plays)
        for (std::size_t l = 1; l <= p.size(); ++l) keep.insert(Play(p.begin(), p.begin() + static_cast<long>(l)));
    ComonadStructure g = ComonadBuilder::build(a, std::nullopt, fl, cap, &keep);
    if (g.size() != keep.size()) throw InputError("generating plays are not plays of " + fl.to_string());
    return g;
}

ComonadStructure ek_build(const Structure& a, int k, std::size_t cap) {
    return build_comonad(a, std::nullopt, Flavour::ef(k), cap);
}

ComonadStructure pnk_build(const Structure& a, int n, int k, std::size_t cap) {
    return build_comonad(a, std::nullopt, Flavour::pebble(n, k), cap);
}

ComonadStructure mk_build(const PointedStructure& a, int k, std::size_t cap) {
    return build_comonad(a.structure, a.point, Flavour::modal(k), cap);
}

Map counit(const ComonadStructure& g) {
    Map m(g.size());
    for (std::size_t s = 0; s < g.size(); ++s) m[s] = g.last(static_cast<Elem>(s));
    return m;
}

bool is_kleisli_arrow(const ComonadStructure& dom, const Structure& cod, const Map& f, std::optional<Elem> cod_point) {
    if (!hom_check(dom.carrier(), cod, f)) return false;
    if (dom.flavour().kind == ComonadKind::Modal && dom.size() > 0) {
        if (!cod_point) throw InputError("modal Kleisli arrows need a pointed codomain");
        if (f[0] != *cod_point) return false;
    }
    return true;
}

Map coextend(const ComonadStructure& dom, const Map& f, const ComonadStructure& cod) {
    if (!(dom.flavour() == cod.flavour())) throw InputError("coextension across different comonads");
    if (!is_kleisli_arrow(dom, cod.base(), f, cod.base_point()))
        throw InputError("coextension of a map that is not a Kleisli arrow");
    Map out(dom.size(), -1);
    for (std::size_t s = 0; s < dom.size(); ++s) {
        const Elem sid = static_cast<Elem>(s);
        const Elem par = dom.parent(sid);
        const Elem from = par >= 0 ? out[static_cast<std::size_t>(par)] : -1;
        auto img = cod.child(from, Move{dom.last_tag(sid), f[s]});
        if (!img) throw InputError("coextension leaves the codomain carrier");
        out[s] = *img;
    }
    return out;
}

Play coextend_play(const ComonadStructure& dom, const Map& f, Elem s) {
    Play p;
    for (Elem c : dom.chain(s)) p.push_back(Move{dom.last_tag(c), f[static_cast<std::size_t>(c)]});
    return p;
}

Map kleisli_compose(const ComonadStructure& ga, const Map& f, const ComonadStructure& gb, const Map& g) {
    Map fs = coextend(ga, f, gb);
    Map h(fs.size());
    for (std::size_t s = 0; s < fs.size(); ++s) h[s] = g[static_cast<std::size_t>(fs[s])];
    return h;
}

bool is_i_morphism(const ComonadStructure& dom, const Map& f) {
    if (dom.flavour().kind == ComonadKind::Modal) throw InputError("I-morphisms are defined for E_k and P_{n,k}");
    for (std::size_t t = 0; t < dom.size(); ++t) {
        const Elem tid = static_cast<Elem>(t);
        auto ch = dom.chain(tid);
        const Play& p = dom.play(tid);
        for (std::size_t c = 0; c + 1 < ch.size(); ++c) {
            if (p[c].elem != p.back().elem) continue;
            if (dom.flavour().kind == ComonadKind::Pebble) {
                bool active = true;
                for (std::size_t d = c + 1; d < p.size(); ++d)
                    if (p[d].tag == p[c].tag) active = false;
                if (!active) continue;
            }
            if (f[static_cast<std::size_t>(ch[c])] != f[t]) return false;
        }
    }
    return true;
}

namespace {

struct Incidence {
    std::vector<std::vector<std::pair<std::size_t, const Tuple*>>> of;
    explicit Incidence(const Structure& s) : of(s.size()) {
        for (std::size_t r = 0; r < s.signature().size(); ++r)
            for (const auto& t : s.relation(r).tuples()) {
                std::vector<Elem> seen;
                for (Elem e : t)
                    if (std::find(seen.begin(), seen.end(), e) == seen.end()) {
                        seen.push_back(e);
                        of[static_cast<std::size_t>(e)].push_back({r, &t});
                    }
            }
    }
};

bool locally_ok(const Structure& cod, const Incidence& inc, const Map& f, Elem s) {
    Tuple img;
    for (auto [r, t] : inc.of[static_cast<std::size_t>(s)]) {
        img.resize(t->size());
        for (std::size_t i = 0; i < img.size(); ++i) img[i] = f[static_cast<std::size_t>((*t)[i])];
        if (!cod.holds(r, img)) return false;
    }
    return true;
}

}  // namespace

std::vector<Map> sample_kleisli_arrows(const ComonadStructure& g, std::size_t count, std::uint64_t seed) {
    const Structure& a = g.base();
    std::vector<Map> out;
    if (g.size() == 0) {
        out.assign(count, Map{});
        return out;
    }
    HomSearchOptions opt;
    opt.limit = 64;
    if (g.base_point()) opt.fixed.push_back({*g.base_point(), *g.base_point()});
    auto homs = find_homs(a, a, opt);
    std::mt19937_64 rng(seed);
    Incidence inc(g.carrier());
    Map eps = counit(g);
    const bool modal = g.flavour().kind == ComonadKind::Modal;
    for (std::size_t i = 0; i < count; ++i) {
        const Map& h = homs[rng() % homs.size()];
        Map f(g.size());
        for (std::size_t s = 0; s < g.size(); ++s) f[s] = h[static_cast<std::size_t>(eps[s])];
        // Even-indexed samples stay close to h∘ε, odd ones are perturbed heavily.
        std::size_t attempts = (i % 2 == 0) ? g.size() / 4 + 1 : 4 * g.size();
        for (std::size_t t = 0; t < attempts; ++t) {
            Elem s = static_cast<Elem>(rng() % g.size());
            if (modal && s == g.root()) continue;
            Elem old = f[static_cast<std::size_t>(s)];
            f[static_cast<std::size_t>(s)] = static_cast<Elem>(rng() % a.size());
            if (!locally_ok(a, inc, f, s)) f[static_cast<std::size_t>(s)] = old;
        }
        out.push_back(std::move(f));
    }
    return out;
}

LawReport check_comonad_laws(const Structure& a, std::optional<Elem> point, const Flavour& fl, std::size_t samples,
                             std::uint64_t seed, const Coextender& coext) {
    LawReport rep;
    ComonadStructure g = build_comonad(a, point, fl);
    const std::size_t N = g.size();
    Map eps = counit(g);
    auto violation = [&](const std::string& what) { rep.violations.push_back(fl.to_string() + ": " + what); };
    auto safe_coext = [&](const Map& f, Map& out) {
        try {
            out = coext(g, f, g);
        } catch (const std::exception& e) {
            violation(std::string("coextension failed: ") + e.what());
            return false;
        }
        if (out.size() != N) {
            violation("coextension has wrong size");
            return false;
        }
        for (Elem v : out)
            if (v < 0 || static_cast<std::size_t>(v) >= N) {
                violation("coextension leaves the carrier");
                return false;
            }
        return true;
    };

    Map id;
    ++rep.checks;
    if (safe_coext(eps, id)) {
        for (std::size_t s = 0; s < N; ++s)
            if (id[s] != static_cast<Elem>(s)) {
                violation("counit coextension is not the identity at " + g.carrier().name(static_cast<Elem>(s)));
                break;
            }
    }

    auto arrows = sample_kleisli_arrows(g, samples, seed);
    std::vector<Map> stars(arrows.size());
    std::vector<char> valid(arrows.size(), 0);
    for (std::size_t i = 0; i < arrows.size(); ++i) {
        const Map& f = arrows[i];
        ++rep.arrows;
        ++rep.checks;
        if (!safe_coext(f, stars[i])) continue;
        valid[i] = 1;
        if (!hom_check(g.carrier(), g.carrier(), stars[i])) violation("coextension is not a homomorphism");
        for (std::size_t s = 0; s < N; ++s)
            if (eps[static_cast<std::size_t>(stars[i][s])] != f[s]) {
                violation("counit after coextension differs from the arrow");
                break;
            }
    }
    for (std::size_t i = 0; i < arrows.size(); ++i) {
        std::size_t j = (i + 1) % arrows.size();
        if (!valid[i] || !valid[j]) continue;
        ++rep.checks;
        const Map& fs = stars[i];
        const Map& gs = stars[j];
        Map gf(N);
        for (std::size_t s = 0; s < N; ++s) gf[s] = arrows[j][static_cast<std::size_t>(fs[s])];
        Map lhs;
        if (!safe_coext(gf, lhs)) continue;
        for (std::size_t s = 0; s < N; ++s)
            if (lhs[s] != gs[static_cast<std::size_t>(fs[s])]) {
                violation("coextension of a composite differs from the composite of coextensions");
                break;
            }
    }
    return rep;
}

}  // namespace gckit
