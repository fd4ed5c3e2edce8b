#include <doctest.h>

#include "generators.hpp"
#include "gckit/structure.hpp"
#include "oracles.hpp"

using namespace gckit;

TEST_SUITE("structure") {

TEST_CASE("brute force class counts match the enumerator") {
    // Values frozen from oracle::class_count.
    const Signature E{{"E", 2}};
    const Signature P{{"P", 1}};
    CHECK(oracle::class_count(E, 1) == 2);
    CHECK(oracle::class_count(E, 2) == 12);
    CHECK(oracle::class_count(P, 2) == 5);
    CHECK(enumerate_structures(E, 1).size() == 2);
    CHECK(enumerate_structures(E, 2).size() == 12);
    CHECK(enumerate_structures(P, 2).size() == 5);
    CHECK(enumerate_structures(E, 3).size() == 116);
    CHECK(enumerate_structures(Signature{{"E", 2}, {"P", 1}}, 2).size() == oracle::class_count(Signature{{"E", 2}, {"P", 1}}, 2));
}

TEST_CASE("enumerated structures are pairwise non-isomorphic") {
    auto all = enumerate_structures(Signature{{"E", 2}}, 3);
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
            if (all[i].size() == all[j].size()) CHECK_FALSE(oracle::isomorphic(all[i], all[j]));
}

TEST_CASE("graph enumeration counts") {
    // Unlabelled simple graphs: 1, 2, 4, 11, 34; connected: 1, 1, 2, 6, 21.
    CHECK(enumerate_graphs(5).size() == 1 + 2 + 4 + 11 + 34);
    CHECK(enumerate_graphs(5, true).size() == 1 + 1 + 2 + 6 + 21);
}

TEST_CASE("homomorphisms between small graphs") {
    auto k3 = complete_graph(3);
    auto k2 = complete_graph(2);
    CHECK(oracle::hom_count(k3, k3) == 6);
    CHECK(count_homs(k3, k3) == 6);
    CHECK(find_homs(k3, k3).size() == 6);
    CHECK_FALSE(find_hom(k3, k2).has_value());
    CHECK(find_hom(k2, k3).has_value());
    auto homs = find_homs(k3, k3);
    CHECK(std::is_sorted(homs.begin(), homs.end()));
    HomSearchOptions opt;
    opt.limit = 2;
    CHECK(find_homs(k3, k3, opt) == std::vector<Map>(homs.begin(), homs.begin() + 2));
}

TEST_CASE("hom_check rejects partial tables") {
    auto k2 = complete_graph(2);
    CHECK_THROWS_AS(hom_check(k2, k2, Map{0}), InputError);
    CHECK(hom_check(k2, k2, Map{1, 0}));
    CHECK_FALSE(hom_check(k2, k2, Map{0, 0}));
}

TEST_CASE("embeddings reflect relations") {
    auto p2 = path_graph(2);
    auto k3 = complete_graph(3);
    CHECK(is_embedding(p2, k3, Map{0, 1}));
    auto e2 = make_graph(2, {});
    CHECK_FALSE(is_embedding(e2, k3, Map{0, 1}));
    CHECK_FALSE(is_embedding(p2, k3, Map{0, 0}));
}

TEST_CASE("isomorphism check") {
    auto c4 = cycle_graph(4);
    gen::Rng rng(7);
    auto s = gen::shuffled(rng, c4);
    auto iso = iso_check(c4, s);
    REQUIRE(iso.has_value());
    CHECK(is_embedding(c4, s, *iso));
    CHECK_FALSE(iso_check(c4, path_graph(4)).has_value());
}

TEST_CASE("property: homomorphism counts agree with brute force") {
    gen::Rng rng(11);
    const Signature sig{{"E", 2}, {"P", 1}};
    for (int trial = 0; trial < 60; ++trial) {
        auto c = gen::random_structure(rng, sig, 1 + rng.below(4), 0.3);
        auto a = gen::random_structure(rng, sig, 1 + rng.below(4), 0.5);
        CHECK(count_homs(c, a) == oracle::hom_count(c, a));
        CHECK(find_homs(c, a).size() == oracle::hom_count(c, a));
    }
}

TEST_CASE("property: isomorphism is invariant under relabelling") {
    gen::Rng rng(12);
    const Signature sig{{"E", 2}, {"R", 3}};
    for (int trial = 0; trial < 40; ++trial) {
        auto a = gen::random_structure(rng, sig, 1 + rng.below(5), 0.25);
        auto b = gen::shuffled(rng, a);
        CHECK(iso_check(a, b).has_value());
        CHECK(canonical_form(a) == canonical_form(b));
    }
}

TEST_CASE("disjoint union and product") {
    auto k2 = complete_graph(2);
    auto u = disjoint_union(k2, k2);
    CHECK(u.size() == 4);
    CHECK(u.relation("E").size() == 4);
    auto p = product(k2, k2);
    CHECK(p.size() == 4);
    CHECK(p.relation("E").size() == 4);
    // Homomorphism counts are additive and multiplicative.
    auto c3 = cycle_graph(3);
    CHECK(count_homs(u, c3) == count_homs(k2, c3) * count_homs(k2, c3));
    CHECK(count_homs(k2, product(c3, c3)) == count_homs(k2, c3) * count_homs(k2, c3));
}

TEST_CASE("equality expansion and quotient") {
    auto k2 = complete_graph(2);
    auto j = i_expand(k2);
    CHECK(j.signature().contains("I"));
    CHECK(j.relation("I").size() == 2);
    CHECK(iso_check(i_quotient(j), k2).has_value());

    Structure s(Signature{{"E", 2}, {"I", 2}}, {"a", "b", "c"});
    s.add("E", {"a", "c"});
    s.add("I", {"a", "b"});
    auto q = i_quotient(s);
    CHECK(q.size() == 2);
    CHECK(q.universe()[0] == "a=b");
    CHECK(q.relation("E").size() == 1);

    Structure bad(Signature{{"I", 2}}, {"a"});
    CHECK_THROWS_AS(i_expand(bad), InputError);
}

TEST_CASE("validation lists every violation") {
    RawStructure raw;
    raw.name = "A";
    raw.signature = Signature{{"E", 2}};
    raw.universe = {"a", "b", "a"};
    raw.tuples = {{"E", {"a", "z"}}, {"F", {"a"}}, {"E", {"a"}}};
    auto v = validate(raw);
    CHECK(v.size() == 4);
    CHECK_THROWS_AS(build(raw), InputError);
}

TEST_CASE("empty structures") {
    Structure empty(Signature{{"E", 2}}, {});
    auto k2 = complete_graph(2);
    CHECK(count_homs(empty, k2) == 1);
    CHECK(count_homs(k2, empty) == 0);
    CHECK(count_homs(empty, empty) == 1);
    CHECK(gaifman(empty).empty());
}

TEST_CASE("pointed structures need a modal signature") {
    Structure s(Signature{{"R", 3}}, {"a"});
    CHECK_THROWS_AS(PointedStructure(s, 0), InputError);
    Structure m(Signature{{"R", 2}}, {"a"});
    CHECK_THROWS_AS(PointedStructure(m, 3), InputError);
    CHECK_NOTHROW(PointedStructure(m, 0));
}

}  // TEST_SUITE
