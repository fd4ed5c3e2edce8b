#include <doctest.h>

#include "generators.hpp"
#include "gckit/coalgebra.hpp"
#include "oracles.hpp"

using namespace gckit;

namespace {

// Minimal number of pebbles over all forest orders and pebblings (tiny structures only).
int min_pebbles_exhaustive(const Structure& a) {
    const std::size_t n = a.size();
    for (int k = 1; k <= static_cast<int>(n); ++k) {
        bool found = false;
        oracle::for_each_forest(n, [&](const std::vector<int>& parent) {
            if (found) return;
            ForestOrder order{parent};
            if (!check_forest_cover(a, order)) return;
            std::vector<int> peb(n, 1);
            while (!found) {
                if (check_pebble_forest_cover(a, order, peb, k)) found = true;
                std::size_t i = 0;
                while (i < n && ++peb[i] > k) peb[i++] = 1;
                if (i == n) break;
            }
        });
        if (found) return k;
    }
    return static_cast<int>(n);
}

Structure sync_tree() {
    // r -A-> x, r -B-> y, x -A-> z
    Structure s(Signature{{"A", 2}, {"B", 2}, {"P", 1}}, {"r", "x", "y", "z"});
    s.add("A", {"r", "x"});
    s.add("B", {"r", "y"});
    s.add("A", {"x", "z"});
    s.add("P", {"z"});
    return s;
}

}  // namespace

TEST_SUITE("coalgebra") {

TEST_CASE("tree-depth of named graphs") {
    CHECK(tree_depth(complete_graph(3)).depth == 3);
    CHECK(tree_depth(path_graph(4)).depth == 3);
    CHECK(tree_depth(make_graph(3, {})).depth == 1);
    CHECK(tree_depth(Structure(Signature{{"E", 2}}, {})).depth == 0);
    CHECK(tree_depth(path_graph(7)).depth == 3);
    CHECK(tree_depth(complete_graph(5)).depth == 5);
}

TEST_CASE("tree-depth agrees with exhaustive minimum covers") {
    for (const auto& g : enumerate_graphs(5, true)) {
        auto td = tree_depth(g);
        CHECK(td.depth == oracle::min_cover_height(g));
        CHECK(check_forest_cover(g, td.cover));
        CHECK(forest_height(td.cover) == td.depth);
    }
}

TEST_CASE("tree-width of named graphs") {
    CHECK(tree_width(cycle_graph(4)).width == 2);
    CHECK(tree_width(complete_graph(4)).width == 3);
    CHECK(tree_width(path_graph(5)).width == 1);
    CHECK(tree_width(make_graph(4, {{0, 1}, {0, 2}, {0, 3}})).width == 1);
    CHECK(tree_width(make_graph(3, {})).width == 0);
    CHECK(tree_width_oracle(cycle_graph(4)) == 2);
    CHECK(tree_width_oracle(complete_graph(4)) == 3);
}

TEST_CASE("tree-width agrees with elimination orderings and its cover checks") {
    for (const auto& g : enumerate_graphs(6)) {
        auto tw = tree_width(g);
        CHECK(tw.width == tree_width_oracle(g));
        CHECK(check_pebble_forest_cover(g, tw.cover, tw.pebbling, tw.pebbles));
    }
}

TEST_CASE("minimal pebble covers agree with exhaustive search") {
    for (const auto& g : enumerate_graphs(4)) CHECK(tree_width(g).pebbles == min_pebbles_exhaustive(g));
}

TEST_CASE("property: parameters on random structures with higher arity") {
    gen::Rng rng(21);
    const Signature sig{{"E", 2}, {"T", 3}};
    for (int trial = 0; trial < 40; ++trial) {
        auto a = gen::random_structure(rng, sig, 1 + rng.below(6), 0.08);
        auto td = tree_depth(a);
        auto tw = tree_width(a);
        CHECK(check_forest_cover(a, td.cover));
        CHECK(tw.width == tree_width_oracle(a));
        CHECK(tw.width + 1 <= td.depth);
        if (a.size() <= 5) CHECK(td.depth == oracle::min_cover_height(a));
    }
}

TEST_CASE("covers give coalgebras exactly from their depth") {
    gen::Rng rng(22);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = gen::random_graph(rng, 1 + rng.below(4), 0.5);
        auto td = tree_depth(g);
        for (int k = 1; k <= 4; ++k) {
            if (k >= td.depth) {
                auto c = cover_to_coalgebra(g, td.cover, k);
                CHECK(c.ok());
            } else {
                CHECK_THROWS_AS(cover_to_coalgebra(g, td.cover, k), InputError);
                CHECK(oracle::min_cover_height(g) > k);
            }
        }
        auto tw = tree_width(g);
        auto pc = cover_to_coalgebra(g, tw.cover, tw.pebbling, tw.pebbles, forest_height(tw.cover));
        CHECK(pc.ok());
    }
}

TEST_CASE("a non-cover fails the homomorphism law") {
    auto p3 = path_graph(3);
    ForestOrder bad{{-1, -1, -1}};
    auto c = cover_to_coalgebra(p3, bad, 2);
    CHECK_FALSE(c.homomorphism);
    CHECK(c.counit_law);
}

TEST_CASE("pebble condition") {
    auto p3 = path_graph(3);  // a - b - c
    ForestOrder chain{{-1, 0, 1}};
    CHECK(check_pebble_forest_cover(p3, chain, {1, 2, 1}, 2));
    auto k3 = complete_graph(3);
    CHECK_FALSE(check_pebble_forest_cover(k3, chain, {1, 2, 1}, 2));
    CHECK(check_pebble_forest_cover(k3, chain, {1, 2, 3}, 3));
    CHECK_THROWS_AS(check_pebble_forest_cover(k3, chain, {1, 2, 4}, 3), InputError);
}

TEST_CASE("synchronization trees") {
    PointedStructure t(sync_tree(), 0);
    auto order = modal_tree_order(t);
    REQUIRE(order.has_value());
    CHECK(forest_height(*order) == 3);
    CHECK(cover_to_coalgebra(t, 2).ok());
    CHECK_THROWS_AS(cover_to_coalgebra(t, 1), InputError);

    Structure loop(Signature{{"R", 2}}, {"a"});
    loop.add("R", {"a", "a"});
    CHECK_FALSE(modal_tree_order(PointedStructure(loop, 0)).has_value());

    Structure diamond(Signature{{"R", 2}}, {"a", "b", "c", "d"});
    diamond.add("R", {"a", "b"});
    diamond.add("R", {"a", "c"});
    diamond.add("R", {"b", "d"});
    diamond.add("R", {"c", "d"});
    CHECK_FALSE(modal_tree_order(PointedStructure(diamond, 0)).has_value());

    Structure two(Signature{{"A", 2}, {"B", 2}}, {"a", "b"});
    two.add("A", {"a", "b"});
    two.add("B", {"a", "b"});
    CHECK_FALSE(modal_tree_order(PointedStructure(two, 0)).has_value());
}

TEST_CASE("path posets") {
    Structure one(Signature{{"E", 2}}, {"a"});
    auto x = forest_structure(one, ForestOrder{{-1}});
    auto p = path_poset(x);
    CHECK(p.size() == 2);
    CHECK(p.parent[1] == 0);
    auto g = ek_build(complete_graph(2), 2);
    auto pp = path_poset(cofree(g));
    CHECK(pp.size() == 7);
    CHECK(pp.children[0].size() == 2);
    CHECK_THROWS_AS(path_poset(cofree(g), 5), GuardError);
}

TEST_CASE("identity and counit on cofree coalgebras") {
    auto g = ek_build(cycle_graph(3), 2);
    auto x = cofree(g);
    Map id(g.size());
    for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<Elem>(i);
    CHECK(is_pathwise_embedding(x, x, id));
    CHECK(is_open(x, x, id));
}

TEST_CASE("open maps and p-morphisms on unravellings") {
    // Every point-preserving homomorphism between small unravellings: open
    // pathwise embedding exactly when p-morphism.
    auto models = enumerate_structures(Signature{{"R", 2}, {"P", 1}}, 2);
    std::vector<std::pair<PointedStructure, ForestStructure>> trees;
    for (const auto& m : models)
        for (std::size_t pt = 0; pt < m.size(); ++pt) {
            auto g = mk_build(PointedStructure(m, static_cast<Elem>(pt)), 2);
            if (g.size() > 8) continue;
            trees.push_back({PointedStructure(g.carrier(), g.root()), cofree(g)});
        }
    std::size_t checked = 0, pmorph = 0;
    for (const auto& [pa, fa] : trees)
        for (const auto& [pb, fb] : trees) {
            HomSearchOptions opt;
            opt.fixed.push_back({pa.point, pb.point});
            for (const auto& f : find_homs(pa.structure, pb.structure, opt)) {
                if (!is_coalgebra_morphism(fa, fb, f)) continue;
                bool open_emb = is_pathwise_embedding(fa, fb, f) && is_open(fa, fb, f);
                bool pm = is_p_morphism(pa, pb, f);
                CHECK(open_emb == pm);
                ++checked;
                pmorph += pm;
            }
        }
    CHECK(checked > 100);
    CHECK(pmorph > 10);
}

}  // TEST_SUITE
