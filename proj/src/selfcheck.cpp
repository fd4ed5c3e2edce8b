#include "gckit/selfcheck.hpp"

#include <algorithm>
#include <chrono>
#include <functional>

#include "gckit/coalgebra.hpp"
#include "gckit/comonad.hpp"
#include "gckit/counting.hpp"
#include "gckit/games.hpp"
#include "gckit/logic.hpp"

namespace gckit {

bool SelfCheckReport::ok() const {
    return std::all_of(sweeps.begin(), sweeps.end(), [](const SweepResult& s) { return s.failed == 0; });
}

namespace {

class Sweep {
public:
    explicit Sweep(std::string name) : start_(std::chrono::steady_clock::now()) { r_.name = std::move(name); }
    void expect(bool ok, const std::function<std::string()>& what) {
        ++r_.checked;
        if (ok) return;
        ++r_.failed;
        if (r_.examples.size() < 5) r_.examples.push_back(what());
    }
    SweepResult done() {
        r_.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
        return r_;
    }

private:
    SweepResult r_;
    std::chrono::steady_clock::time_point start_;
};

std::string pair_label(std::size_t i, std::size_t j, int k) {
    return "pair " + std::to_string(i) + "," + std::to_string(j) + " k=" + std::to_string(k);
}

Fragment fragment(FragmentFamily fam, int r, Polarity p = Polarity::Full, bool eq = true) {
    Fragment f;
    f.family = fam;
    f.resource = r;
    f.polarity = p;
    f.equality = eq;
    return f;
}

}  // namespace

SelfCheckReport selfcheck(int size, std::uint64_t seed) {
    if (size < 1 || size > 3) throw InputError("selfcheck size must be between 1 and 3");
    SelfCheckReport rep{size, seed, {}};
    const Signature graph{{"E", 2}};
    const auto corpus = enumerate_structures(graph, size);
    const auto small = enumerate_structures(graph, std::min(size, 2));

    {
        Sweep s("comonad-laws");
        for (const auto& a : corpus)
            for (auto fl : {Flavour::ef(2), Flavour::pebble(2, 2)}) {
                auto r = check_comonad_laws(a, std::nullopt, fl, 5, seed);
                s.expect(r.ok(), [&] { return fl.to_string() + ": " + r.violations.front(); });
            }
        rep.sweeps.push_back(s.done());
    }
    {
        Sweep s("ef-game-vs-sentences-vs-types");
        for (bool eq : {true, false})
            for (int k = 1; k <= 2; ++k) {
                SentenceOracle o(corpus, fragment(FragmentFamily::Rank, k, Polarity::Full, eq));
                std::vector<RankType> types;
                for (const auto& a : corpus) types.push_back(rank_type(a, {}, k, eq, false));
                for (std::size_t i = 0; i < corpus.size(); ++i)
                    for (std::size_t j = i + 1; j < corpus.size(); ++j) {
                        bool game = solve(corpus[i], corpus[j], GameSpec::ef(k, Variant::Full, eq)).duplicator_wins();
                        bool same = !o.separated(i, j);
                        s.expect(game == same && same == (types[i] == types[j]), [&] { return pair_label(i, j, k); });
                    }
            }
        rep.sweeps.push_back(s.done());
    }
    {
        Sweep s("pebble-game-vs-two-variable-logic");
        SentenceOracle o(corpus, fragment(FragmentFamily::Vars, 2));
        s.expect(o.complete(), [] { return std::string("two-variable closure incomplete"); });
        for (std::size_t i = 0; i < corpus.size(); ++i)
            for (std::size_t j = i + 1; j < corpus.size(); ++j) {
                bool game = solve(corpus[i], corpus[j], GameSpec::pebble(2)).duplicator_wins();
                s.expect(game == !o.separated(i, j), [&] { return pair_label(i, j, 2); });
            }
        rep.sweeps.push_back(s.done());
    }
    {
        Sweep s("ep-game-vs-kleisli-arrows");
        for (int k = 1; k <= 2; ++k) {
            std::vector<ComonadStructure> carriers;
            std::vector<Structure> expanded;
            for (const auto& a : corpus) {
                carriers.push_back(ek_build(i_expand(a), k));
                expanded.push_back(i_expand(a));
            }
            for (std::size_t i = 0; i < corpus.size(); ++i)
                for (std::size_t j = 0; j < corpus.size(); ++j) {
                    bool game = solve(corpus[i], corpus[j], GameSpec::ef(k, Variant::ExistentialPositive)).duplicator_wins();
                    auto arrow = find_kleisli_arrow(carriers[i], expanded[j]);
                    bool ok = game == arrow.has_value() &&
                              (!arrow || (is_kleisli_arrow(carriers[i], expanded[j], *arrow) && is_i_morphism(carriers[i], *arrow)));
                    s.expect(ok, [&] { return pair_label(i, j, k); });
                }
        }
        rep.sweeps.push_back(s.done());
    }
    {
        Sweep s("bijective-game-vs-kleisli-iso");
        for (int k = 1; k <= 2; ++k)
            for (std::size_t i = 0; i < small.size(); ++i)
                for (std::size_t j = 0; j < small.size(); ++j) {
                    bool game = solve(small[i], small[j], GameSpec::ef(k, Variant::Bijective)).duplicator_wins();
                    s.expect(game == find_kleisli_iso(small[i], small[j], Flavour::ef(k)).has_value(),
                             [&] { return pair_label(i, j, k); });
                }
        rep.sweeps.push_back(s.done());
    }
    {
        Sweep s("coalgebra-numbers");
        for (const auto& g : enumerate_graphs(size + 2)) {
            auto td = tree_depth(g);
            s.expect(check_forest_cover(g, td.cover) && forest_height(td.cover) == td.depth &&
                         cover_to_coalgebra(g, td.cover, td.depth).ok(),
                     [&] { return "tree-depth witness on " + std::to_string(g.size()) + " vertices"; });
            auto tw = tree_width(g);
            s.expect(tw.width == tree_width_oracle(g) && check_pebble_forest_cover(g, tw.cover, tw.pebbling, tw.pebbles),
                     [&] { return "tree-width on " + std::to_string(g.size()) + " vertices"; });
        }
        rep.sweeps.push_back(s.done());
    }
    {
        Sweep s("arboreal-game-vs-ef");
        for (int k = 1; k <= 2; ++k) {
            std::vector<ForestStructure> xs;
            std::vector<PathPoset> ps;
            for (const auto& a : small) {
                xs.push_back(cofree(ek_build(i_expand(a), k)));
                ps.push_back(path_poset(xs.back()));
            }
            for (std::size_t i = 0; i < small.size(); ++i)
                for (std::size_t j = 0; j < small.size(); ++j) {
                    bool game = solve(small[i], small[j], GameSpec::ef(k)).duplicator_wins();
                    bool arb = arboreal_game(xs[i], ps[i], xs[j], ps[j], Variant::Full).duplicator_wins();
                    s.expect(game == arb, [&] { return pair_label(i, j, k); });
                }
        }
        rep.sweeps.push_back(s.done());
    }
    {
        Sweep s("bisimulation-vs-modal-logic");
        std::vector<PointedStructure> models;
        for (const auto& m : enumerate_structures(Signature{{"R", 2}, {"p", 1}}, std::min(size, 2)))
            for (std::size_t p = 0; p < m.size(); ++p) models.emplace_back(m, static_cast<Elem>(p));
        for (int k = 0; k <= 2; ++k) {
            SentenceOracle o(models, fragment(FragmentFamily::Modal, k, Polarity::Full, false));
            for (std::size_t i = 0; i < models.size(); ++i)
                for (std::size_t j = i + 1; j < models.size(); ++j) {
                    bool game = solve(models[i], models[j], GameSpec::bisim(k)).duplicator_wins();
                    bool types = modal_type(models[i].structure, models[i].point, k) ==
                                 modal_type(models[j].structure, models[j].point, k);
                    s.expect(game == !o.separated(i, j) && game == types, [&] { return pair_label(i, j, k); });
                }
        }
        rep.sweeps.push_back(s.done());
    }
    {
        Sweep s("homomorphism-counting");
        for (std::size_t i = 0; i < corpus.size(); ++i)
            for (std::size_t j = i + 1; j < corpus.size(); ++j)
                s.expect(!lovasz_compare(corpus[i], corpus[j], corpus).agree, [&] { return pair_label(i, j, 0); });
        for (int k = 1; k <= 2; ++k) {
            auto td = enumerate_class(ClassSpec::td(k), graph, size);
            for (std::size_t i = 0; i < corpus.size(); ++i)
                for (std::size_t j = i + 1; j < corpus.size(); ++j)
                    if (solve(corpus[i], corpus[j], GameSpec::ef(k, Variant::Bijective)).duplicator_wins())
                        s.expect(lovasz_compare(corpus[i], corpus[j], td).agree, [&] { return pair_label(i, j, k); });
        }
        rep.sweeps.push_back(s.done());
    }
    return rep;
}

}  // namespace gckit
