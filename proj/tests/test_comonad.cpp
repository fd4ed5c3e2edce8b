#include <doctest.h>

#include <algorithm>
#include <functional>

#include "generators.hpp"
#include "gckit/comonad.hpp"
#include "mutants.hpp"

using namespace gckit;

namespace {

bool prefix_of(const Play& s, const Play& t) {
    return s.size() <= t.size() && std::equal(s.begin(), s.end(), t.begin());
}

// Direct reading of the carrier relations, over all tuples of plays.
bool related_reference(const ComonadStructure& g, std::size_t r, const Tuple& plays) {
    const Structure& a = g.base();
    for (Elem x : plays)
        for (Elem y : plays)
            if (!prefix_of(g.play(x), g.play(y)) && !prefix_of(g.play(y), g.play(x))) return false;
    if (g.flavour().kind == ComonadKind::Pebble) {
        for (Elem x : plays)
            for (Elem y : plays) {
                const Play& s = g.play(x);
                const Play& t = g.play(y);
                if (s.size() >= t.size() || !prefix_of(s, t)) continue;
                for (std::size_t i = s.size(); i < t.size(); ++i)
                    if (t[i].tag == s.back().tag) return false;
            }
    }
    Tuple last;
    for (Elem x : plays) last.push_back(g.last(x));
    return a.holds(r, last);
}

void check_carrier_against_reference(const ComonadStructure& g) {
    const Structure& c = g.carrier();
    for (std::size_t r = 0; r < c.signature().size(); ++r) {
        const int ar = c.signature()[r].arity;
        std::size_t total = 1;
        for (int i = 0; i < ar; ++i) total *= g.size();
        std::size_t count = 0;
        for (std::size_t code = 0; code < total; ++code) {
            Tuple t(static_cast<std::size_t>(ar));
            std::size_t x = code;
            for (int i = ar - 1; i >= 0; --i) {
                t[static_cast<std::size_t>(i)] = static_cast<Elem>(x % g.size());
                x /= g.size();
            }
            bool ref = related_reference(g, r, t);
            count += ref;
            if (ref != c.holds(r, t)) {
                FAIL("carrier relation mismatch on " << c.signature()[r].name);
                return;
            }
        }
        CHECK(count == c.relation(r).size());
    }
}

}  // namespace

TEST_SUITE("comonad") {

TEST_CASE("carrier sizes") {
    auto k3 = complete_graph(3);
    CHECK(ek_build(k3, 1).size() == 3);
    CHECK(ek_build(k3, 2).size() == 3 + 9);
    CHECK(ek_build(k3, 3).size() == 3 + 9 + 27);
    CHECK(pnk_build(k3, 2, 2).size() == 6 + 36);
    Structure empty(Signature{{"E", 2}}, {});
    CHECK(ek_build(empty, 3).size() == 0);
}

TEST_CASE("Ek relations match the direct reading") {
    gen::Rng rng(3);
    const Signature sig{{"E", 2}, {"P", 1}, {"T", 3}};
    for (int trial = 0; trial < 8; ++trial) {
        auto a = gen::random_structure(rng, sig, 1 + rng.below(3), 0.4);
        check_carrier_against_reference(ek_build(a, 2));
    }
}

TEST_CASE("Pnk relations respect the active pebble condition") {
    gen::Rng rng(4);
    const Signature sig{{"E", 2}, {"P", 1}};
    for (int trial = 0; trial < 6; ++trial) {
        auto a = gen::random_structure(rng, sig, 1 + rng.below(3), 0.5);
        check_carrier_against_reference(pnk_build(a, 2, 2));
        check_carrier_against_reference(pnk_build(a, 1, 3));
    }
    // Pebble 1 moved: [1:a, 1:b] no longer sees [1:a].
    auto k2 = complete_graph(2);
    auto g = pnk_build(k2, 1, 2);
    Elem s = *g.find({{1, 0}});
    Elem t = *g.find({{1, 0}, {1, 1}});
    CHECK_FALSE(g.carrier().holds(0, Tuple{s, t}));
    auto g2 = pnk_build(k2, 2, 2);
    Elem s2 = *g2.find({{1, 0}});
    Elem t2 = *g2.find({{1, 0}, {2, 1}});
    CHECK(g2.carrier().holds(0, Tuple{s2, t2}));
}

TEST_CASE("modal unravelling") {
    // a -R-> b, b -R-> a, P at b.
    Structure s(Signature{{"R", 2}, {"P", 1}}, {"a", "b"});
    s.add("R", {"a", "b"});
    s.add("R", {"b", "a"});
    s.add("P", {"b"});
    PointedStructure m(s, 0);
    auto g0 = mk_build(m, 0);
    CHECK(g0.size() == 1);
    auto g = mk_build(m, 3);
    CHECK(g.size() == 4);
    CHECK(g.carrier().relation("R").size() == 3);
    CHECK(g.carrier().relation("P").size() == 2);
    CHECK(g.carrier().name(g.root()) == "[a]");
    CHECK(g.carrier().name(3) == "[a,R:b,R:a,R:b]");
}

TEST_CASE("counit is a homomorphism and coextending it gives the identity") {
    gen::Rng rng(5);
    const Signature sig{{"E", 2}, {"P", 1}};
    for (int trial = 0; trial < 10; ++trial) {
        auto a = gen::random_structure(rng, sig, 1 + rng.below(3), 0.4);
        for (auto fl : {Flavour::ef(2), Flavour::pebble(2, 2)}) {
            auto g = build_comonad(a, std::nullopt, fl);
            auto eps = counit(g);
            CHECK(hom_check(g.carrier(), a, eps));
            auto id = coextend(g, eps, g);
            for (std::size_t s = 0; s < id.size(); ++s) CHECK(id[s] == static_cast<Elem>(s));
        }
    }
}

TEST_CASE("comonad laws hold on random arrows") {
    gen::Rng rng(6);
    const Signature sig{{"E", 2}, {"P", 1}};
    for (int trial = 0; trial < 12; ++trial) {
        auto a = gen::random_structure(rng, sig, 1 + rng.below(3), 0.5);
        for (auto fl : {Flavour::ef(1), Flavour::ef(3), Flavour::pebble(2, 2), Flavour::pebble(1, 3)}) {
            auto rep = check_comonad_laws(a, std::nullopt, fl, 20, rng.next());
            CHECK_MESSAGE(rep.ok(), (rep.violations.empty() ? "" : rep.violations.front()));
            CHECK(rep.arrows == 20);
        }
        for (std::size_t p = 0; p < a.size(); ++p) {
            auto rep = check_comonad_laws(a, static_cast<Elem>(p), Flavour::modal(2), 20, rng.next());
            CHECK(rep.ok());
        }
    }
}

TEST_CASE("sampled arrows are Kleisli arrows") {
    auto c3 = cycle_graph(3);
    auto g = ek_build(c3, 2);
    auto arrows = sample_kleisli_arrows(g, 30, 99);
    auto eps = counit(g);
    std::size_t differs = 0;
    for (const auto& f : arrows) {
        CHECK(hom_check(g.carrier(), c3, f));
        differs += f != eps;
    }
    CHECK(differs > 0);
}

TEST_CASE("every mutant coextension is caught") {
    std::vector<std::pair<Structure, std::optional<Elem>>> corpus;
    Structure s(Signature{{"E", 2}, {"P", 1}}, {"a", "b", "c"});
    s.add("E", {"a", "b"});
    s.add("E", {"b", "c"});
    s.add("E", {"c", "a"});
    s.add("E", {"a", "a"});
    s.add("P", {"b"});
    corpus.push_back({s, std::nullopt});
    corpus.push_back({complete_graph(3), std::nullopt});
    int caught = 0;
    for (int m = 0; m < mutants::kCount; ++m) {
        bool hit = false;
        for (const auto& [a, pt] : corpus)
            for (auto fl : {Flavour::ef(2), Flavour::pebble(2, 2)})
                if (!hit && !check_comonad_laws(a, pt, fl, 10, 1000 + static_cast<std::uint64_t>(m), mutants::make(m)).ok())
                    hit = true;
        CHECK_MESSAGE(hit, mutants::describe(m));
        caught += hit;
    }
    CHECK(caught == mutants::kCount);
}

TEST_CASE("I-morphisms") {
    auto k2 = complete_graph(2);
    auto g = ek_build(k2, 2);
    CHECK(is_i_morphism(g, counit(g)));
    // A strategy answering the repeated move [a,b,...] differently is not an I-morphism.
    auto j = i_expand(k2);
    auto gj = ek_build(j, 2);
    Map f = counit(gj);
    Elem aa = *gj.find({{0, 0}, {0, 0}});
    f[static_cast<std::size_t>(aa)] = 1;
    CHECK_FALSE(is_i_morphism(gj, f));
}

TEST_CASE("generated subcarriers are induced substructures") {
    gen::Rng rng(8);
    const Signature sig{{"E", 2}, {"P", 1}};
    for (int trial = 0; trial < 20; ++trial) {
        auto a = gen::random_structure(rng, sig, 1 + rng.below(3), 0.5);
        auto full = trial % 2 ? pnk_build(a, 2, 3) : ek_build(a, 3);
        std::vector<Play> picked;
        for (int i = 0; i < 4; ++i) picked.push_back(full.play(static_cast<Elem>(rng.below(static_cast<int>(full.size())))));
        auto sub = generated_subcomonad(a, full.flavour(), picked);
        for (const auto& p : picked) CHECK(sub.find(p).has_value());
        std::vector<Elem> emb(sub.size());
        for (std::size_t s = 0; s < sub.size(); ++s) {
            auto f = full.find(sub.play(static_cast<Elem>(s)));
            REQUIRE(f.has_value());
            emb[s] = *f;
            if (sub.parent(static_cast<Elem>(s)) >= 0) CHECK(sub.find(sub.play(sub.parent(static_cast<Elem>(s)))).has_value());
        }
        for (std::size_t r = 0; r < sig.size(); ++r) {
            std::size_t inside = 0;
            for (const auto& t : sub.carrier().relation(r).tuples()) {
                Tuple u;
                for (Elem x : t) u.push_back(emb[static_cast<std::size_t>(x)]);
                CHECK(full.carrier().holds(r, u));
            }
            for (const auto& t : full.carrier().relation(r).tuples())
                inside += std::all_of(t.begin(), t.end(), [&](Elem x) {
                    return std::find(emb.begin(), emb.end(), x) != emb.end();
                });
            CHECK(inside == sub.carrier().relation(r).size());
        }
    }
    auto k2 = complete_graph(2);
    CHECK_THROWS_AS(generated_subcomonad(k2, Flavour::ef(1), {{{0, 0}, {0, 1}}}), InputError);
    CHECK(generated_subcomonad(complete_graph(5), Flavour::pebble(5, 5), {{{1, 0}, {2, 1}, {3, 2}, {4, 3}, {5, 4}}}).size() == 5);
}

TEST_CASE("carrier cap") {
    auto k3 = complete_graph(3);
    CHECK_THROWS_AS(ek_build(k3, 3, 10), GuardError);
}

}  // TEST_SUITE
