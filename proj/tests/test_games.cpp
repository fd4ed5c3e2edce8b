#include <doctest.h>

#include "generators.hpp"
#include "gckit/games.hpp"
#include "gckit/logic.hpp"
#include "oracles.hpp"

using namespace gckit;

namespace {

Structure directed_path(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
    return make_graph(n, e, false);
}

Structure with_loop() {
    Structure s(Signature{{"E", 2}}, {"a"});
    s.add("E", {"a", "a"});
    return s;
}

oracle::NaiveGame naive_for(Variant v, bool eq, int pebbles = 0) {
    oracle::NaiveGame g;
    g.two_sided = v == Variant::Full || v == Variant::Positive;
    g.iso = v == Variant::Full || v == Variant::Existential;
    g.equality = eq;
    g.pebbles = pebbles;
    return g;
}

bool dup(const Structure& a, const Structure& b, const GameSpec& s) { return solve(a, b, s).duplicator_wins(); }

const Variant kPlain[] = {Variant::Full, Variant::Existential, Variant::Positive, Variant::ExistentialPositive};

Fragment vars_fragment(int n) {
    Fragment f;
    f.family = FragmentFamily::Vars;
    f.resource = n;
    return f;
}

}  // namespace

TEST_SUITE("games") {

TEST_CASE("worked examples") {
    auto e2 = make_graph(2, {}), e3 = make_graph(3, {});
    CHECK(dup(e2, e3, GameSpec::ef(2)));
    CHECK_FALSE(dup(e2, e3, GameSpec::ef(3)));
    CHECK(dup(e2, e3, GameSpec::ef(3, Variant::Full, false)));
    CHECK(dup(e2, e3, GameSpec::ef(0)));

    CHECK_FALSE(dup(directed_path(3), directed_path(4), GameSpec::pebble(3)));
    CHECK(dup(directed_path(3), directed_path(4), GameSpec::pebble(2, Variant::ExistentialPositive)));

    auto k3 = complete_graph(3), k2 = complete_graph(2);
    CHECK(dup(k3, k2, GameSpec::ef(2, Variant::ExistentialPositive)));
    CHECK_FALSE(dup(k3, k2, GameSpec::ef(3, Variant::ExistentialPositive)));
    CHECK(dup(k3, k3, GameSpec::ef(3, Variant::ExistentialPositive)));

    auto c6 = cycle_graph(6);
    auto two_c3 = disjoint_union(cycle_graph(3), cycle_graph(3));
    CHECK_FALSE(dup(c6, two_c3, GameSpec::ef(3, Variant::Bijective)));
    CHECK(dup(c6, two_c3, GameSpec::ef(2, Variant::Bijective)));
    CHECK(dup(c6, two_c3, GameSpec::pebble(2, Variant::Bijective)));
    CHECK_FALSE(dup(c6, two_c3, GameSpec::pebble(3, Variant::Bijective)));

    auto r = solve(e2, e3, GameSpec::ef(0, Variant::Bijective));
    CHECK(r.winner == Player::Spoiler);
    CHECK(dup(k3, induced(k3, {0, 2}), GameSpec::ef(3, Variant::Bijective)) == false);

    CHECK_FALSE(dup(with_loop(), make_graph(2, {}), GameSpec::ef(1, Variant::Existential)));
    CHECK(dup(induced(cycle_graph(5), {0, 1, 3}), cycle_graph(5), GameSpec::ef(4, Variant::Existential)));

    // B = A plus extra tuples on the same universe.
    auto p3 = path_graph(3);
    CHECK(dup(p3, k3, GameSpec::ef(3, Variant::Positive)));
    CHECK_FALSE(dup(k3, p3, GameSpec::ef(2, Variant::Positive)));
}

TEST_CASE("empty structures") {
    Structure empty(Signature{{"E", 2}}, {});
    auto one = make_graph(1, {});
    CHECK(dup(empty, empty, GameSpec::ef(3)));
    CHECK_FALSE(dup(empty, one, GameSpec::ef(1)));
    CHECK(dup(empty, one, GameSpec::ef(0)));
    CHECK(dup(empty, one, GameSpec::ef(2, Variant::ExistentialPositive)));
    CHECK_FALSE(dup(one, empty, GameSpec::ef(1, Variant::ExistentialPositive)));
    CHECK_FALSE(dup(one, empty, GameSpec::pebble(1)));
    CHECK(dup(empty, empty, GameSpec::pebble(2)));
}

TEST_CASE("input errors") {
    auto g = complete_graph(2);
    Structure other(Signature{{"R", 2}}, {"a"});
    CHECK_THROWS_AS(solve(g, other, GameSpec::ef(1)), InputError);
    CHECK_THROWS_AS(solve(g, g, GameSpec::bisim(1)), InputError);
    Structure has_i(Signature{{"I", 2}}, {"a"});
    CHECK_THROWS_AS(solve(has_i, has_i, GameSpec::ef(1)), InputError);
    CHECK_NOTHROW(solve(has_i, has_i, GameSpec::ef(1, Variant::Full, false)));
    CHECK_THROWS_AS(parse_variant("both"), InputError);
}

TEST_CASE("EF solver agrees with plain recursion") {
    const Signature sig{{"E", 2}, {"P", 1}};
    auto corpus = enumerate_structures(sig, 2);
    for (const auto& a : corpus)
        for (const auto& b : corpus)
            for (auto v : kPlain)
                for (bool eq : {true, false})
                    for (int k = 0; k <= 2; ++k)
                        REQUIRE(dup(a, b, GameSpec::ef(k, v, eq)) == oracle::naive_game(a, b, naive_for(v, eq), k));
}

TEST_CASE("pebble rounds agree with plain recursion") {
    auto corpus = enumerate_structures(Signature{{"E", 2}}, 3);
    gen::Rng rng(41);
    for (int trial = 0; trial < 150; ++trial) {
        const auto& a = corpus[static_cast<std::size_t>(rng.below(static_cast<int>(corpus.size())))];
        const auto& b = corpus[static_cast<std::size_t>(rng.below(static_cast<int>(corpus.size())))];
        auto v = kPlain[rng.below(4)];
        bool eq = rng.chance(0.5);
        int n = 1 + rng.below(2), k = rng.below(4);
        CHECK(dup(a, b, GameSpec::pebble_rounds(n, k, v, eq)) == oracle::naive_game(a, b, naive_for(v, eq, n), k));
    }
}

TEST_CASE("pebble fixpoint matches round-bounded games past stabilization") {
    auto corpus = enumerate_structures(Signature{{"E", 2}}, 3);
    for (std::size_t i = 0; i < corpus.size(); i += 3)
        for (std::size_t j = 0; j < corpus.size(); j += 5)
            for (auto v : {Variant::Full, Variant::ExistentialPositive})
                for (int n = 1; n <= 2; ++n) {
                    auto r = solve(corpus[i], corpus[j], GameSpec::pebble(n, v));
                    REQUIRE(r.stabilization_round >= 0);
                    const int k = std::max(r.stabilization_round, 0);
                    CHECK(r.duplicator_wins() == dup(corpus[i], corpus[j], GameSpec::pebble_rounds(n, k, v)));
                    CHECK(r.duplicator_wins() == dup(corpus[i], corpus[j], GameSpec::pebble_rounds(n, k + 2, v)));
                    if (!r.duplicator_wins()) {
                        CHECK(r.spoiler_round >= 1);
                        CHECK_FALSE(dup(corpus[i], corpus[j], GameSpec::pebble_rounds(n, r.spoiler_round, v)));
                        CHECK(dup(corpus[i], corpus[j], GameSpec::pebble_rounds(n, r.spoiler_round - 1, v)));
                    }
                }
}

TEST_CASE("two pebbles match two-variable logic") {
    auto corpus = enumerate_structures(Signature{{"E", 2}}, 3);
    SentenceOracle o(corpus, vars_fragment(2));
    REQUIRE(o.complete());
    for (std::size_t i = 0; i < corpus.size(); ++i)
        for (std::size_t j = i + 1; j < corpus.size(); ++j)
            REQUIRE(dup(corpus[i], corpus[j], GameSpec::pebble(2)) == !o.separated(i, j));
}

TEST_CASE("variant lattice and resource monotonicity") {
    auto corpus = enumerate_structures(Signature{{"E", 2}}, 3);
    gen::Rng rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        const auto& a = corpus[static_cast<std::size_t>(rng.below(static_cast<int>(corpus.size())))];
        const auto& b = corpus[static_cast<std::size_t>(rng.below(static_cast<int>(corpus.size())))];
        for (int k = 0; k <= 2; ++k) {
            bool full = dup(a, b, GameSpec::ef(k)), ex = dup(a, b, GameSpec::ef(k, Variant::Existential));
            bool pos = dup(a, b, GameSpec::ef(k, Variant::Positive));
            bool ep = dup(a, b, GameSpec::ef(k, Variant::ExistentialPositive));
            bool bij = dup(a, b, GameSpec::ef(k, Variant::Bijective));
            CHECK((!full || ex));
            CHECK((!ex || ep));
            CHECK((!full || pos));
            CHECK((!pos || ep));
            CHECK((!bij || full));
            CHECK(full == dup(b, a, GameSpec::ef(k)));
            CHECK(bij == dup(b, a, GameSpec::ef(k, Variant::Bijective)));
            if (dup(a, b, GameSpec::ef(k + 1))) CHECK(full);
        }
        for (int n = 1; n <= 2; ++n)
            if (dup(a, b, GameSpec::pebble(n + 1))) CHECK(dup(a, b, GameSpec::pebble(n)));
        CHECK(dup(a, a, GameSpec::ef(3)));
    }
}

TEST_CASE("emitted strategies survive adversarial replay") {
    auto corpus = enumerate_structures(Signature{{"E", 2}}, 3);
    gen::Rng rng(43);
    std::size_t checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const auto& a = corpus[static_cast<std::size_t>(rng.below(static_cast<int>(corpus.size())))];
        const auto& b = rng.chance(0.3) ? a : corpus[static_cast<std::size_t>(rng.below(static_cast<int>(corpus.size())))];
        GameSpec spec;
        switch (rng.below(3)) {
            case 0: spec = GameSpec::ef(1 + rng.below(3), Variant(rng.below(5))); break;
            case 1: spec = GameSpec::pebble(1 + rng.below(2), Variant(rng.below(5))); break;
            default: spec = GameSpec::pebble_rounds(1 + rng.below(2), 1 + rng.below(3), Variant(rng.below(5))); break;
        }
        auto r = solve(a, b, spec, true);
        if (!r.duplicator_wins()) {
            CHECK_FALSE(r.strategy.has_value());
            continue;
        }
        REQUIRE(r.strategy.has_value());
        auto bad = verify_strategy(a, b, *r.strategy);
        CHECK(bad.empty());
        ++checked;
    }
    CHECK(checked > 80);
}

TEST_CASE("corrupted strategies are rejected") {
    auto a = path_graph(3), b = path_graph(3);
    auto r = solve(a, b, GameSpec::ef(2), true);
    REQUIRE(r.strategy);
    std::size_t caught = 0, tried = 0;
    for (std::size_t i = 0; i < r.strategy->entries.size(); ++i) {
        auto s = *r.strategy;
        auto& e = s.entries[i];
        // Send the middle vertex to an end or an end to the middle.
        e.response = e.response == 1 ? 0 : 1;
        ++tried;
        caught += !verify_strategy(a, b, s).empty();
    }
    CHECK(caught == tried);
    auto s = *r.strategy;
    s.entries.pop_back();
    CHECK_FALSE(verify_strategy(a, b, s).empty());

    auto bij = solve(cycle_graph(4), cycle_graph(4), GameSpec::ef(2, Variant::Bijective), true);
    REQUIRE(bij.strategy);
    auto t = *bij.strategy;
    t.entries[0].bijection[0] = t.entries[0].bijection[1];
    CHECK_FALSE(verify_strategy(cycle_graph(4), cycle_graph(4), t).empty());
}

TEST_CASE("ep strategies and Kleisli arrows") {
    auto corpus = enumerate_structures(Signature{{"E", 2}}, 2);
    for (const auto& a : corpus)
        for (const auto& b : corpus)
            for (int k = 1; k <= 2; ++k)
                for (bool eq : {true, false}) {
                    auto spec = GameSpec::ef(k, Variant::ExistentialPositive, eq);
                    auto r = solve(a, b, spec, true);
                    auto g = ek_build(eq ? i_expand(a) : a, k);
                    const Structure bb = eq ? i_expand(b) : b;
                    auto arrow = find_kleisli_arrow(g, bb);
                    REQUIRE(r.duplicator_wins() == arrow.has_value());
                    if (!arrow) continue;
                    CHECK(is_kleisli_arrow(g, bb, *arrow));
                    auto f = strategy_to_kleisli(*r.strategy, g);
                    CHECK(is_kleisli_arrow(g, bb, f));
                    if (eq) CHECK(is_i_morphism(g, f));
                    auto back = kleisli_to_strategy(g, bb, f, eq);
                    CHECK(verify_strategy(a, b, back).empty());
                    CHECK(strategy_to_kleisli(back, g) == f);
                    auto from_search = kleisli_to_strategy(g, bb, *arrow, eq);
                    CHECK(verify_strategy(a, b, from_search).empty());
                }
    // A homomorphism composed with the counit is a strategy.
    auto k3 = complete_graph(3), c5 = cycle_graph(5);
    auto h = *find_hom(c5, k3);
    auto g = ek_build(i_expand(c5), 3);
    Map f(g.size());
    for (std::size_t s = 0; s < g.size(); ++s) f[s] = h[static_cast<std::size_t>(g.last(static_cast<Elem>(s)))];
    auto st = kleisli_to_strategy(g, i_expand(k3), f, false);
    CHECK(verify_strategy(c5, k3, st).empty());
    CHECK_THROWS_AS(kleisli_to_strategy(g, i_expand(k3), Map(g.size(), 0), false), InputError);
}

TEST_CASE("pebble ep strategies as Kleisli arrows") {
    auto corpus = enumerate_structures(Signature{{"E", 2}}, 2);
    for (const auto& a : corpus)
        for (const auto& b : corpus) {
            auto spec = GameSpec::pebble_rounds(2, 2, Variant::ExistentialPositive);
            auto r = solve(a, b, spec, true);
            auto g = pnk_build(i_expand(a), 2, 2);
            auto arrow = find_kleisli_arrow(g, i_expand(b));
            REQUIRE(r.duplicator_wins() == arrow.has_value());
            if (!arrow) continue;
            auto f = strategy_to_kleisli(*r.strategy, g);
            CHECK(is_kleisli_arrow(g, i_expand(b), f));
            CHECK(is_i_morphism(g, f));
            CHECK(verify_strategy(a, b, kleisli_to_strategy(g, i_expand(b), *arrow, true)).empty());
        }
}

TEST_CASE("bijective games and Kleisli isomorphisms") {
    auto corpus = enumerate_structures(Signature{{"E", 2}}, 2);
    for (const auto& a : corpus)
        for (const auto& b : corpus)
            for (int k = 1; k <= 2; ++k) {
                bool game = dup(a, b, GameSpec::ef(k, Variant::Bijective));
                auto iso = find_kleisli_iso(a, b, Flavour::ef(k));
                CHECK(game == iso.has_value());
            }
}

TEST_CASE("bisimulation games match modal types") {
    auto models = enumerate_structures(Signature{{"R", 2}, {"p", 1}}, 2);
    std::vector<PointedStructure> pts;
    for (const auto& m : models)
        for (std::size_t s = 0; s < m.size(); ++s) pts.emplace_back(m, static_cast<Elem>(s));
    for (const auto& x : pts)
        for (const auto& y : pts)
            for (int k = 0; k <= 3; ++k) {
                bool same = modal_type(x.structure, x.point, k) == modal_type(y.structure, y.point, k);
                bool graded = modal_type(x.structure, x.point, k, true) == modal_type(y.structure, y.point, k, true);
                REQUIRE(solve(x, y, GameSpec::bisim(k)).duplicator_wins() == same);
                REQUIRE(solve(x, y, GameSpec::bisim(k, Variant::Bijective)).duplicator_wins() == graded);
                if (solve(x, y, GameSpec::bisim(k)).duplicator_wins())
                    CHECK(solve(x, y, GameSpec::bisim(k, Variant::ExistentialPositive)).duplicator_wins());
            }
    for (std::size_t i = 0; i < pts.size(); i += 3)
        for (auto v : {Variant::Full, Variant::Positive, Variant::ExistentialPositive, Variant::Bijective}) {
            auto r = solve(pts[i], pts[(i * 7 + 1) % pts.size()], GameSpec::bisim(2, v), true);
            if (r.duplicator_wins())
                CHECK(verify_strategy(pts[i].structure, pts[(i * 7 + 1) % pts.size()].structure, *r.strategy, pts[i].point,
                                      pts[(i * 7 + 1) % pts.size()].point)
                          .empty());
        }
}

TEST_CASE("arboreal game on path posets matches EF") {
    auto corpus = enumerate_structures(Signature{{"E", 2}}, 2);
    for (const auto& a : corpus)
        for (const auto& b : corpus)
            for (int k = 1; k <= 2; ++k) {
                auto x = cofree(ek_build(i_expand(a), k)), y = cofree(ek_build(i_expand(b), k));
                auto px = path_poset(x), py = path_poset(y);
                for (auto v : kPlain)
                    CHECK(arboreal_game(x, px, y, py, v).duplicator_wins() == dup(a, b, GameSpec::ef(k, v)));
                auto span = winning_span(x, y);
                CHECK(span.has_value() == dup(a, b, GameSpec::ef(k)));
                if (span) {
                    CHECK(is_coalgebra_morphism(span->w, x, span->left));
                    CHECK(is_pathwise_embedding(span->w, x, span->left));
                    CHECK(is_open(span->w, x, span->left));
                    CHECK(is_pathwise_embedding(span->w, y, span->right));
                    CHECK(is_open(span->w, y, span->right));
                }
            }
    auto x = cofree(ek_build(path_graph(3), 2));
    auto px = path_poset(x);
    CHECK(arboreal_game(x, px, x, px, Variant::Full).duplicator_wins());
}

}  // TEST_SUITE
