#include "gckit/coalgebra.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <unordered_map>

namespace gckit {

// ---------------------------------------------------------------- forest orders

bool is_forest(const ForestOrder& order, std::size_t n) {
    if (order.parent.size() != n) return false;
    for (std::size_t v = 0; v < n; ++v) {
        std::size_t steps = 0;
        for (Elem x = static_cast<Elem>(v); x >= 0; x = order.parent[static_cast<std::size_t>(x)]) {
            if (static_cast<std::size_t>(x) >= n) return false;
            if (++steps > n) return false;
        }
    }
    return true;
}

bool forest_leq(const ForestOrder& order, Elem x, Elem y) {
    for (Elem z = y; z >= 0; z = order.parent[static_cast<std::size_t>(z)])
        if (z == x) return true;
    return false;
}

std::vector<Elem> down_chain(const ForestOrder& order, Elem x) {
    std::vector<Elem> c;
    for (Elem z = x; z >= 0; z = order.parent[static_cast<std::size_t>(z)]) c.push_back(z);
    std::reverse(c.begin(), c.end());
    return c;
}

int forest_height(const ForestOrder& order) {
    int h = 0;
    for (std::size_t v = 0; v < order.parent.size(); ++v)
        h = std::max(h, static_cast<int>(down_chain(order, static_cast<Elem>(v)).size()));
    return h;
}

namespace {

void require_forest(const Structure& a, const ForestOrder& order) {
    if (!is_forest(order, a.size())) throw InputError("order is not a forest on the universe");
}

}  // namespace

bool check_forest_cover(const Structure& a, const ForestOrder& order) {
    require_forest(a, order);
    auto adj = gaifman(a);
    for (std::size_t x = 0; x < adj.size(); ++x)
        for (Elem y : adj[x])
            if (!forest_leq(order, static_cast<Elem>(x), y) && !forest_leq(order, y, static_cast<Elem>(x)))
                return false;
    return true;
}

bool check_pebble_forest_cover(const Structure& a, const ForestOrder& order, const std::vector<int>& pebbles, int n) {
    if (pebbles.size() != a.size()) throw InputError("pebbling is not total");
    for (int p : pebbles)
        if (p < 1 || p > n) throw InputError("pebble index outside 1.." + std::to_string(n));
    if (!check_forest_cover(a, order)) return false;
    auto adj = gaifman(a);
    for (std::size_t b = 0; b < adj.size(); ++b)
        for (Elem x = order.parent[b]; x >= 0; x = order.parent[static_cast<std::size_t>(x)]) {
            // x is a strict ancestor of b; if adjacent, nothing strictly between may reuse p(x).
            if (std::find(adj[b].begin(), adj[b].end(), x) == adj[b].end()) continue;
            for (Elem z = static_cast<Elem>(b); z != x; z = order.parent[static_cast<std::size_t>(z)])
                if (pebbles[static_cast<std::size_t>(z)] == pebbles[static_cast<std::size_t>(x)]) return false;
        }
    return true;
}

std::optional<ForestOrder> modal_tree_order(const PointedStructure& pa) {
    const Structure& a = pa.structure;
    ForestOrder order{std::vector<Elem>(a.size(), -1)};
    std::vector<int> indeg(a.size(), 0);
    for (std::size_t r = 0; r < a.signature().size(); ++r) {
        if (a.signature()[r].arity != 2) continue;
        for (const auto& t : a.relation(r).tuples()) {
            ++indeg[static_cast<std::size_t>(t[1])];
            order.parent[static_cast<std::size_t>(t[1])] = t[0];
        }
    }
    if (indeg[static_cast<std::size_t>(pa.point)] != 0) return std::nullopt;
    for (std::size_t v = 0; v < a.size(); ++v)
        if (static_cast<Elem>(v) != pa.point && indeg[v] != 1) return std::nullopt;
    // Every state must reach back to the point.
    for (std::size_t v = 0; v < a.size(); ++v) {
        std::size_t steps = 0;
        Elem x = static_cast<Elem>(v);
        while (x != pa.point) {
            x = order.parent[static_cast<std::size_t>(x)];
            if (x < 0 || ++steps > a.size()) return std::nullopt;
        }
    }
    return order;
}

// ---------------------------------------------------------------- tree-depth

namespace {

using Mask = std::uint64_t;

struct Graph {
    std::size_t n = 0;
    std::vector<Mask> adj;
    explicit Graph(const Structure& a) : n(a.size()), adj(a.size(), 0) {
        if (n > 62) throw GuardError("structure too large for exact width parameters (at most 62 elements)");
        auto g = gaifman(a);
        for (std::size_t v = 0; v < n; ++v)
            for (Elem w : g[v]) adj[v] |= Mask{1} << w;
    }
    std::vector<Mask> components(Mask s) const {
        std::vector<Mask> out;
        while (s) {
            Mask comp = s & (~s + 1), frontier = comp;
            while (frontier) {
                Mask next = 0;
                for (Mask f = frontier; f; f &= f - 1) next |= adj[static_cast<std::size_t>(std::countr_zero(f))];
                next &= s & ~comp;
                comp |= next;
                frontier = next;
            }
            out.push_back(comp);
            s &= ~comp;
        }
        return out;
    }
    Mask neighbourhood(Mask s) const {
        Mask nb = 0;
        for (Mask f = s; f; f &= f - 1) nb |= adj[static_cast<std::size_t>(std::countr_zero(f))];
        return nb & ~s;
    }
};

constexpr std::size_t kMaxExactElements = 30;

class TreeDepthSolver {
public:
    explicit TreeDepthSolver(const Graph& g) : g_(g) {}

    // Tree-depth of a connected vertex set.
    int connected(Mask s) {
        if (std::popcount(s) == 1) return 1;
        auto it = memo_.find(s);
        if (it != memo_.end()) return it->second.first;
        int best = std::popcount(s);
        int choice = std::countr_zero(s);
        for (Mask f = s; f; f &= f - 1) {
            int v = std::countr_zero(f);
            int worst = 0;
            for (Mask c : g_.components(s & ~(Mask{1} << v))) {
                if (worst + 1 >= best) break;
                worst = std::max(worst, connected(c));
            }
            if (worst + 1 < best) {
                best = worst + 1;
                choice = v;
            }
        }
        memo_[s] = {best, choice};
        return best;
    }

    void build(Mask s, Elem parent, ForestOrder& order) {
        connected(s);
        int v = std::popcount(s) == 1 ? std::countr_zero(s) : memo_.at(s).second;
        order.parent[static_cast<std::size_t>(v)] = parent;
        for (Mask c : g_.components(s & ~(Mask{1} << v))) build(c, v, order);
    }

private:
    const Graph& g_;
    std::unordered_map<Mask, std::pair<int, int>> memo_;
};

}  // namespace

TreeDepthResult tree_depth(const Structure& a) {
    TreeDepthResult res;
    res.cover.parent.assign(a.size(), -1);
    if (a.size() == 0) return res;
    if (a.size() > kMaxExactElements) throw GuardError("tree-depth is computed exactly only up to 30 elements");
    Graph g(a);
    TreeDepthSolver solver(g);
    Mask all = a.size() == 64 ? ~Mask{0} : (Mask{1} << a.size()) - 1;
    for (Mask c : g.components(all)) {
        res.depth = std::max(res.depth, solver.connected(c));
        solver.build(c, -1, res.cover);
    }
    return res;
}

// ---------------------------------------------------------------- tree-width via pebble covers

namespace {

// A connected set S hanging below a chain can be covered with n pebbles iff its
// boundary (all chain elements adjacent to S) uses at most n-1 pebbles and some
// top element v leaves components of S - v that are coverable in turn.
class PebbleCoverSolver {
public:
    PebbleCoverSolver(const Graph& g, int n) : g_(g), n_(n) {}

    bool feasible(Mask s) {
        if (std::popcount(g_.neighbourhood(s)) > n_ - 1) return false;
        auto it = memo_.find(s);
        if (it != memo_.end()) return it->second >= 0;
        int choice = -1;
        for (Mask f = s; f && choice < 0; f &= f - 1) {
            int v = std::countr_zero(f);
            bool ok = true;
            for (Mask c : g_.components(s & ~(Mask{1} << v)))
                if (!feasible(c)) {
                    ok = false;
                    break;
                }
            if (ok) choice = v;
        }
        memo_[s] = choice;
        return choice >= 0;
    }

    void build(Mask s, Elem parent, TreeWidthResult& out) {
        int v = memo_.at(s);
        out.cover.parent[static_cast<std::size_t>(v)] = parent;
        std::vector<char> used(static_cast<std::size_t>(n_) + 1, 0);
        for (Mask f = g_.neighbourhood(s); f; f &= f - 1)
            used[static_cast<std::size_t>(out.pebbling[static_cast<std::size_t>(std::countr_zero(f))])] = 1;
        int p = 1;
        while (used[static_cast<std::size_t>(p)]) ++p;
        out.pebbling[static_cast<std::size_t>(v)] = p;
        for (Mask c : g_.components(s & ~(Mask{1} << v))) build(c, v, out);
    }

private:
    const Graph& g_;
    int n_;
    std::unordered_map<Mask, int> memo_;
};

}  // namespace

TreeWidthResult tree_width(const Structure& a) {
    TreeWidthResult res;
    res.cover.parent.assign(a.size(), -1);
    res.pebbling.assign(a.size(), 1);
    if (a.size() == 0) return res;
    if (a.size() > kMaxExactElements) throw GuardError("tree-width is computed exactly only up to 30 elements");
    Graph g(a);
    Mask all = (Mask{1} << a.size()) - 1;
    auto comps = g.components(all);
    for (int n = 1; n <= static_cast<int>(a.size()); ++n) {
        PebbleCoverSolver solver(g, n);
        bool ok = std::all_of(comps.begin(), comps.end(), [&](Mask c) { return solver.feasible(c); });
        if (!ok) continue;
        for (Mask c : comps) solver.build(c, -1, res);
        res.pebbles = n;
        res.width = n - 1;
        return res;
    }
    throw std::logic_error("no pebble forest cover found");
}

int tree_width_oracle(const Structure& a) {
    if (a.size() > 9) throw GuardError("elimination-ordering oracle supports at most 9 elements");
    const std::size_t n = a.size();
    auto g = gaifman(a);
    std::vector<Elem> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    int best = static_cast<int>(n);
    if (n == 0) return 0;
    do {
        std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
        for (std::size_t v = 0; v < n; ++v)
            for (Elem w : g[v]) adj[v][static_cast<std::size_t>(w)] = 1;
        std::vector<char> gone(n, 0);
        int width = 0;
        for (Elem v : perm) {
            std::vector<std::size_t> nb;
            for (std::size_t w = 0; w < n; ++w)
                if (!gone[w] && adj[static_cast<std::size_t>(v)][w]) nb.push_back(w);
            width = std::max(width, static_cast<int>(nb.size()));
            if (width >= best) break;
            for (std::size_t x : nb)
                for (std::size_t y : nb)
                    if (x != y) adj[x][y] = 1;
            gone[static_cast<std::size_t>(v)] = 1;
        }
        best = std::min(best, width);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// ---------------------------------------------------------------- coalgebras from covers

namespace {

CoalgebraCheck finish(const Structure& a, ComonadStructure g, Map alpha) {
    CoalgebraCheck out{std::move(g), std::move(alpha)};
    const ComonadStructure& G = out.carrier;
    out.homomorphism = hom_check(a, G.carrier(), out.alpha);
    out.counit_law = true;
    for (std::size_t x = 0; x < a.size(); ++x)
        if (G.last(out.alpha[x]) != static_cast<Elem>(x)) out.counit_law = false;
    // delta(alpha(x)) and G(alpha)(alpha(x)) as sequences of carrier plays.
    Map identity(G.size());
    std::iota(identity.begin(), identity.end(), 0);
    Map alpha_eps(G.size());
    for (std::size_t s = 0; s < G.size(); ++s) alpha_eps[s] = out.alpha[static_cast<std::size_t>(G.last(static_cast<Elem>(s)))];
    out.comultiplication_law = out.counit_law;
    for (std::size_t x = 0; x < a.size() && out.comultiplication_law; ++x) {
        Play lhs = coextend_play(G, identity, out.alpha[x]);
        Play rhs = coextend_play(G, alpha_eps, out.alpha[x]);
        if (!(lhs == rhs)) out.comultiplication_law = false;
    }
    return out;
}

void require_depth(const ForestOrder& order, int k) {
    if (forest_height(order) > k)
        throw InputError("cover has a chain of " + std::to_string(forest_height(order)) +
                         " elements, longer than k = " + std::to_string(k));
}

}  // namespace

CoalgebraCheck cover_to_coalgebra(const Structure& a, const ForestOrder& order, int k) {
    require_forest(a, order);
    require_depth(order, k);
    std::vector<Play> chains(a.size());
    for (std::size_t x = 0; x < a.size(); ++x)
        for (Elem c : down_chain(order, static_cast<Elem>(x))) chains[x].push_back({0, c});
    ComonadStructure g = generated_subcomonad(a, Flavour::ef(k), chains);
    Map alpha(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) alpha[x] = *g.find(chains[x]);
    return finish(a, std::move(g), std::move(alpha));
}

CoalgebraCheck cover_to_coalgebra(const Structure& a, const ForestOrder& order, const std::vector<int>& pebbles,
                                  int n, int k) {
    require_forest(a, order);
    require_depth(order, k);
    if (pebbles.size() != a.size()) throw InputError("pebbling is not total");
    for (int p : pebbles)
        if (p < 1 || p > n) throw InputError("pebble index outside 1.." + std::to_string(n));
    std::vector<Play> chains(a.size());
    for (std::size_t x = 0; x < a.size(); ++x)
        for (Elem c : down_chain(order, static_cast<Elem>(x))) chains[x].push_back({pebbles[static_cast<std::size_t>(c)], c});
    ComonadStructure g = generated_subcomonad(a, Flavour::pebble(n, k), chains);
    Map alpha(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) alpha[x] = *g.find(chains[x]);
    return finish(a, std::move(g), std::move(alpha));
}

CoalgebraCheck cover_to_coalgebra(const PointedStructure& pa, int k) {
    auto order = modal_tree_order(pa);
    if (!order) throw InputError("structure is not a synchronization tree rooted at its point");
    if (forest_height(*order) > k + 1)
        throw InputError("tree is deeper than the modal depth " + std::to_string(k));
    const Structure& a = pa.structure;
    ComonadStructure g = mk_build(pa, k);
    Map alpha(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) {
        auto ch = down_chain(*order, static_cast<Elem>(x));
        Play p{{-1, ch[0]}};
        for (std::size_t i = 1; i < ch.size(); ++i) {
            int label = -1;
            for (std::size_t r = 0; r < a.signature().size(); ++r)
                if (a.signature()[r].arity == 2 && a.holds(r, Tuple{ch[i - 1], ch[i]})) label = static_cast<int>(r);
            p.push_back({label, ch[i]});
        }
        alpha[x] = *g.find(p);
    }
    return finish(a, std::move(g), std::move(alpha));
}

// ---------------------------------------------------------------- forest structures and paths

ForestStructure cofree(const ComonadStructure& g) {
    ForestStructure x;
    x.structure = g.carrier();
    x.order.parent.resize(g.size());
    for (std::size_t s = 0; s < g.size(); ++s) x.order.parent[s] = g.parent(static_cast<Elem>(s));
    if (g.flavour().kind == ComonadKind::Pebble) {
        x.pebbles.resize(g.size());
        for (std::size_t s = 0; s < g.size(); ++s) x.pebbles[s] = g.last_tag(static_cast<Elem>(s));
    }
    if (g.flavour().kind == ComonadKind::Modal && g.size() > 0) x.point = g.root();
    return x;
}

ForestStructure forest_structure(const Structure& a, const ForestOrder& order) {
    require_forest(a, order);
    return ForestStructure{a, order, {}, std::nullopt};
}

PathPoset path_poset(const ForestStructure& x, std::size_t cap) {
    const std::size_t n = x.structure.size();
    const bool formal = !x.point.has_value();
    const std::size_t nodes = n + (formal ? 1 : 0);
    if (nodes > cap) throw GuardError("path poset has " + std::to_string(nodes) + " paths, cap is " + std::to_string(cap));
    PathPoset p;
    p.parent.assign(nodes, -1);
    p.elem.assign(nodes, -1);
    p.children.assign(nodes, {});
    const int off = formal ? 1 : 0;
    for (std::size_t e = 0; e < n; ++e) {
        const int node = static_cast<int>(e) + off;
        p.elem[static_cast<std::size_t>(node)] = static_cast<Elem>(e);
        Elem par = x.order.parent[e];
        if (par >= 0)
            p.parent[static_cast<std::size_t>(node)] = par + off;
        else if (formal)
            p.parent[static_cast<std::size_t>(node)] = 0;
    }
    for (std::size_t v = 0; v < nodes; ++v)
        if (p.parent[v] >= 0) p.children[static_cast<std::size_t>(p.parent[v])].push_back(static_cast<int>(v));
    p.root = formal ? 0 : *x.point;
    return p;
}

// ---------------------------------------------------------------- morphism properties

namespace {

// Every relation among images of the chain holds among the chain itself.
bool reflects_on_chain(const ForestStructure& x, const ForestStructure& y, const Map& f, const std::vector<Elem>& chain) {
    const Structure& X = x.structure;
    const Structure& Y = y.structure;
    for (std::size_t i = 0; i < chain.size(); ++i)
        for (std::size_t j = i + 1; j < chain.size(); ++j)
            if (f[static_cast<std::size_t>(chain[i])] == f[static_cast<std::size_t>(chain[j])]) return false;
    for (std::size_t r = 0; r < X.signature().size(); ++r) {
        const int ar = X.signature()[r].arity;
        std::vector<std::size_t> idx(static_cast<std::size_t>(ar), 0);
        Tuple src(static_cast<std::size_t>(ar)), img(static_cast<std::size_t>(ar));
        if (chain.empty()) break;
        while (true) {
            for (int i = 0; i < ar; ++i) {
                src[static_cast<std::size_t>(i)] = chain[idx[static_cast<std::size_t>(i)]];
                img[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(src[static_cast<std::size_t>(i)])];
            }
            if (Y.holds(r, img) && !X.holds(r, src)) return false;
            int i = ar - 1;
            while (i >= 0 && ++idx[static_cast<std::size_t>(i)] == chain.size()) idx[static_cast<std::size_t>(i--)] = 0;
            if (i < 0) break;
        }
    }
    return true;
}

}  // namespace

bool is_coalgebra_morphism(const ForestStructure& x, const ForestStructure& y, const Map& f) {
    if (!hom_check(x.structure, y.structure, f)) return false;
    for (std::size_t e = 0; e < f.size(); ++e) {
        Elem p = x.order.parent[e];
        Elem fp = y.order.parent[static_cast<std::size_t>(f[e])];
        if (p < 0 ? fp >= 0 : fp != f[static_cast<std::size_t>(p)]) return false;
        if (!x.pebbles.empty() && !y.pebbles.empty() && x.pebbles[e] != y.pebbles[static_cast<std::size_t>(f[e])])
            return false;
    }
    if (x.point && y.point && !f.empty() && f[static_cast<std::size_t>(*x.point)] != *y.point) return false;
    return true;
}

bool is_pathwise_embedding(const ForestStructure& x, const ForestStructure& y, const Map& f) {
    if (!is_coalgebra_morphism(x, y, f)) throw InputError("map is not a morphism of forest-ordered structures");
    std::vector<int> child_count(x.structure.size(), 0);
    for (Elem p : x.order.parent)
        if (p >= 0) ++child_count[static_cast<std::size_t>(p)];
    for (std::size_t e = 0; e < x.structure.size(); ++e)
        if (child_count[e] == 0 &&
            !reflects_on_chain(x, y, f, down_chain(x.order, static_cast<Elem>(e))))
            return false;
    return true;
}

bool is_open(const ForestStructure& x, const ForestStructure& y, const Map& f) {
    if (!is_coalgebra_morphism(x, y, f)) throw InputError("map is not a morphism of forest-ordered structures");
    const std::size_t nx = x.structure.size(), ny = y.structure.size();
    std::vector<std::vector<Elem>> xchains(nx);
    std::vector<char> embeds(nx, 0);
    for (std::size_t e = 0; e < nx; ++e) {
        xchains[e] = down_chain(x.order, static_cast<Elem>(e));
        embeds[e] = reflects_on_chain(x, y, f, xchains[e]);
    }
    // Squares start at a path embedding P -> X (the empty path or the down-set of an
    // element) and a longer path Q in Y over f(P); a filler is an element of X above
    // P whose down-set maps isomorphically onto Q.
    auto has_filler = [&](Elem from, Elem target) {
        for (std::size_t e = 0; e < nx; ++e) {
            if (f[e] != target || !embeds[e]) continue;
            if (from < 0 || forest_leq(x.order, from, static_cast<Elem>(e))) return true;
        }
        return false;
    };
    if (!x.point) {
        for (std::size_t t = 0; t < ny; ++t)
            if (!has_filler(-1, static_cast<Elem>(t))) return false;
    }
    for (std::size_t e = 0; e < nx; ++e) {
        if (!embeds[e]) continue;
        for (std::size_t t = 0; t < ny; ++t)
            if (forest_leq(y.order, f[e], static_cast<Elem>(t)) && !has_filler(static_cast<Elem>(e), static_cast<Elem>(t)))
                return false;
    }
    return true;
}

bool is_p_morphism(const PointedStructure& pa, const PointedStructure& pb, const Map& f) {
    const Structure& a = pa.structure;
    const Structure& b = pb.structure;
    if (!hom_check(a, b, f)) return false;
    if (f[static_cast<std::size_t>(pa.point)] != pb.point) return false;
    for (std::size_t r = 0; r < a.signature().size(); ++r) {
        if (a.signature()[r].arity == 1) {
            for (std::size_t e = 0; e < a.size(); ++e)
                if (b.holds(r, Tuple{f[e]}) && !a.holds(r, Tuple{static_cast<Elem>(e)})) return false;
            continue;
        }
        for (std::size_t e = 0; e < a.size(); ++e)
            for (const auto& t : b.relation(r).tuples()) {
                if (t[0] != f[e]) continue;
                bool back = false;
                for (const auto& u : a.relation(r).tuples())
                    if (u[0] == static_cast<Elem>(e) && f[static_cast<std::size_t>(u[1])] == t[1]) back = true;
                if (!back) return false;
            }
    }
    return true;
}

}  // namespace gckit
