// Brute-force reference computations used to cross-check the library.
// Deliberately naive: full enumeration of maps, permutations and orders.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include "gckit/structure.hpp"

namespace oracle {

using gckit::Elem;
using gckit::Map;
using gckit::Structure;
using gckit::Tuple;

inline bool preserves(const Structure& c, const Structure& a, const Map& f) {
    for (std::size_t r = 0; r < c.signature().size(); ++r)
        for (const auto& t : c.relation(r).tuples()) {
            Tuple img;
            for (Elem e : t) img.push_back(f[static_cast<std::size_t>(e)]);
            if (!a.relation(r).contains(img)) return false;
        }
    return true;
}

inline void for_each_map(std::size_t n, std::size_t m, const std::function<void(const Map&)>& fn) {
    if (n > 0 && m == 0) return;
    Map f(n, 0);
    while (true) {
        fn(f);
        std::size_t i = 0;
        while (i < n && ++f[i] == static_cast<Elem>(m)) f[i++] = 0;
        if (i == n) return;
    }
}

inline std::uint64_t hom_count(const Structure& c, const Structure& a) {
    std::uint64_t n = 0;
    for_each_map(c.size(), a.size(), [&](const Map& f) { n += preserves(c, a, f); });
    return n;
}

inline bool isomorphic(const Structure& a, const Structure& b) {
    if (a.size() != b.size()) return false;
    Map p(a.size());
    std::iota(p.begin(), p.end(), 0);
    do {
        bool ok = true;
        for (std::size_t r = 0; r < a.signature().size() && ok; ++r) {
            if (a.relation(r).size() != b.relation(r).size()) return false;
            ok = preserves(a, b, p);
        }
        if (ok) return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
}

// All labelled structures of exactly n elements.
inline std::vector<Structure> labelled(const gckit::Signature& sig, int n) {
    std::vector<std::pair<std::size_t, Tuple>> slots;
    for (std::size_t r = 0; r < sig.size(); ++r) {
        std::size_t total = 1;
        for (int i = 0; i < sig[r].arity; ++i) total *= static_cast<std::size_t>(n);
        for (std::size_t c = 0; c < total; ++c) {
            Tuple t(static_cast<std::size_t>(sig[r].arity));
            std::size_t x = c;
            for (int i = sig[r].arity - 1; i >= 0; --i) {
                t[static_cast<std::size_t>(i)] = static_cast<Elem>(x % static_cast<std::size_t>(n));
                x /= static_cast<std::size_t>(n);
            }
            slots.emplace_back(r, t);
        }
    }
    std::vector<std::string> u;
    for (int i = 0; i < n; ++i) u.push_back("v" + std::to_string(i));
    std::vector<Structure> out;
    for (std::uint64_t mask = 0; mask < (1ULL << slots.size()); ++mask) {
        Structure s(sig, u);
        for (std::size_t b = 0; b < slots.size(); ++b)
            if (mask >> b & 1ULL) s.add(slots[b].first, slots[b].second);
        out.push_back(std::move(s));
    }
    return out;
}

// Number of isomorphism classes of size 1..max_size, by pairwise isomorphism tests.
inline std::size_t class_count(const gckit::Signature& sig, int max_size) {
    std::size_t total = 0;
    for (int n = 1; n <= max_size; ++n) {
        std::vector<Structure> reps;
        for (auto& s : labelled(sig, n)) {
            bool fresh = true;
            for (const auto& r : reps)
                if (isomorphic(s, r)) {
                    fresh = false;
                    break;
                }
            if (fresh) reps.push_back(std::move(s));
        }
        total += reps.size();
    }
    return total;
}

// Undirected adjacency of the Gaifman graph, computed directly from the tuples.
inline std::vector<std::vector<char>> adjacency(const Structure& s) {
    std::vector<std::vector<char>> adj(s.size(), std::vector<char>(s.size(), 0));
    for (std::size_t r = 0; r < s.signature().size(); ++r)
        for (const auto& t : s.relation(r).tuples())
            for (Elem x : t)
                for (Elem y : t)
                    if (x != y) adj[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = 1;
    return adj;
}

// Visits every forest order on n elements as a parent array (-1 = root).
inline void for_each_forest(std::size_t n, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> parent(n, -1);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == n) {
            for (std::size_t v = 0; v < n; ++v) {
                std::size_t steps = 0;
                for (int x = static_cast<int>(v); x >= 0; x = parent[static_cast<std::size_t>(x)])
                    if (++steps > n) return;
            }
            fn(parent);
            return;
        }
        for (int p = -1; p < static_cast<int>(n); ++p) {
            if (p == static_cast<int>(i)) continue;
            parent[i] = p;
            rec(i + 1);
        }
    };
    rec(0);
}

inline bool below(const std::vector<int>& parent, int x, int y) {  // x <= y
    for (int z = y; z >= 0; z = parent[static_cast<std::size_t>(z)])
        if (z == x) return true;
    return false;
}

inline int height(const std::vector<int>& parent) {
    int best = 0;
    for (std::size_t v = 0; v < parent.size(); ++v) {
        int h = 0;
        for (int x = static_cast<int>(v); x >= 0; x = parent[static_cast<std::size_t>(x)]) ++h;
        best = std::max(best, h);
    }
    return best;
}

// Minimum height over all forest orders whose comparability covers the Gaifman graph.
inline int min_cover_height(const Structure& s) {
    if (s.size() == 0) return 0;
    auto adj = adjacency(s);
    int best = static_cast<int>(s.size());
    for_each_forest(s.size(), [&](const std::vector<int>& parent) {
        for (std::size_t x = 0; x < s.size(); ++x)
            for (std::size_t y = 0; y < s.size(); ++y)
                if (adj[x][y] && !below(parent, static_cast<int>(x), static_cast<int>(y)) &&
                    !below(parent, static_cast<int>(y), static_cast<int>(x)))
                    return;
        best = std::min(best, height(parent));
    });
    return best;
}

// ---------------------------------------------------------------- games, by plain recursion

// Relation determined by the pairs: both ways (iso) or A to B only; equality
// compared directly rather than through an expansion.
inline bool pairs_respect(const Structure& a, const Structure& b, const std::vector<std::pair<Elem, Elem>>& pairs,
                          bool iso, bool equality) {
    const std::size_t m = pairs.size();
    if (equality)
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                bool ea = pairs[i].first == pairs[j].first, eb = pairs[i].second == pairs[j].second;
                if (ea && !eb) return false;
                if (iso && eb && !ea) return false;
            }
    if (m == 0) return true;
    for (std::size_t r = 0; r < a.signature().size(); ++r) {
        const std::size_t ar = static_cast<std::size_t>(a.signature()[r].arity);
        std::vector<std::size_t> idx(ar, 0);
        while (true) {
            Tuple ta, tb;
            for (auto i : idx) {
                ta.push_back(pairs[i].first);
                tb.push_back(pairs[i].second);
            }
            bool ha = a.relation(r).contains(ta), hb = b.relation(r).contains(tb);
            if (ha && !hb) return false;
            if (iso && hb && !ha) return false;
            std::size_t i = 0;
            while (i < ar && ++idx[i] == m) idx[i++] = 0;
            if (i == ar) break;
        }
    }
    return true;
}

struct NaiveGame {
    bool two_sided = true;
    bool iso = true;
    bool equality = true;
    int pebbles = 0;  // 0: EF (every move uses a fresh slot)
};

// Duplicator survives `rounds` more rounds from the given slots.
inline bool naive_play(const Structure& a, const Structure& b, const NaiveGame& g,
                       std::vector<std::pair<Elem, Elem>> slots, std::vector<char> used, int rounds) {
    std::vector<std::pair<Elem, Elem>> live;
    for (std::size_t i = 0; i < slots.size(); ++i)
        if (used[i]) live.push_back(slots[i]);
    if (!pairs_respect(a, b, live, g.iso, g.equality)) return false;
    if (rounds == 0) return true;
    const std::size_t choices = g.pebbles == 0 ? 1 : static_cast<std::size_t>(g.pebbles);
    for (std::size_t p = 0; p < choices; ++p) {
        const std::size_t slot = g.pebbles == 0 ? slots.size() : p;
        for (int side = 0; side < (g.two_sided ? 2 : 1); ++side) {
            const Structure& sx = side == 0 ? a : b;
            const Structure& sy = side == 0 ? b : a;
            for (std::size_t x = 0; x < sx.size(); ++x) {
                bool answered = false;
                for (std::size_t y = 0; y < sy.size() && !answered; ++y) {
                    auto s2 = slots;
                    auto u2 = used;
                    std::pair<Elem, Elem> pr = side == 0 ? std::pair<Elem, Elem>{static_cast<Elem>(x), static_cast<Elem>(y)}
                                                         : std::pair<Elem, Elem>{static_cast<Elem>(y), static_cast<Elem>(x)};
                    if (slot == s2.size()) {
                        s2.push_back(pr);
                        u2.push_back(1);
                    } else {
                        s2[slot] = pr;
                        u2[slot] = 1;
                    }
                    answered = naive_play(a, b, g, s2, u2, rounds - 1);
                }
                if (!answered) return false;
            }
        }
    }
    return true;
}

inline bool naive_game(const Structure& a, const Structure& b, const NaiveGame& g, int rounds) {
    std::size_t n = static_cast<std::size_t>(g.pebbles);
    return naive_play(a, b, g, std::vector<std::pair<Elem, Elem>>(n, {0, 0}), std::vector<char>(n, 0), rounds);
}

}  // namespace oracle
