#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "gckit/coalgebra.hpp"
#include "gckit/comonad.hpp"
#include "gckit/structure.hpp"

namespace gckit {

enum class GameFamily { EF, Pebble, PebbleRounds, Bisim };
enum class Variant { Full, Existential, Positive, ExistentialPositive, Bijective };
enum class Player { Spoiler, Duplicator };

std::string variant_name(Variant v);
Variant parse_variant(const std::string& s);  // full | exists | pos | ep | bij
std::string player_name(Player p);

struct GameSpec {
    GameFamily family = GameFamily::EF;
    int k = 1;  // rounds (EF, PebbleRounds, Bisim)
    int n = 1;  // pebbles (Pebble, PebbleRounds)
    Variant variant = Variant::Full;
    bool equality = true;  // play over the equality expansion (ignored by Bisim)

    static GameSpec ef(int k, Variant v = Variant::Full, bool eq = true) { return {GameFamily::EF, k, 0, v, eq}; }
    static GameSpec pebble(int n, Variant v = Variant::Full, bool eq = true) { return {GameFamily::Pebble, 0, n, v, eq}; }
    static GameSpec pebble_rounds(int n, int k, Variant v = Variant::Full, bool eq = true) {
        return {GameFamily::PebbleRounds, k, n, v, eq};
    }
    static GameSpec bisim(int k, Variant v = Variant::Full) { return {GameFamily::Bisim, k, 0, v, false}; }
    std::string to_string() const;
};

// One round: Spoiler's element on `side` (0 = A, 1 = B) and Duplicator's answer.
// `label` is the pebble (1..n) for pebble games and the relation index for Bisim.
struct Round {
    int side = 0;
    int label = 0;
    Elem a = 0;
    Elem b = 0;
    auto operator<=>(const Round&) const = default;
};

struct SpoilerMove {
    int side = 0;
    int label = 0;
    Elem elem = 0;
    bool operator==(const SpoilerMove&) const = default;
};

// position: rounds played so far (EF, PebbleRounds, Bisim) or the current
// placement of pebbles sorted by pebble (Pebble). Bijective variants record the
// bijection Duplicator committed to (indexed by elements of A, -1 off-domain).
struct StrategyEntry {
    std::vector<Round> position;
    SpoilerMove move;
    Elem response = 0;
    std::vector<Elem> bijection;
};

struct Strategy {
    GameSpec spec;
    std::vector<StrategyEntry> entries;
    const StrategyEntry* find(const std::vector<Round>& position, const SpoilerMove& m) const;
};

struct GameResult {
    Player winner = Player::Spoiler;
    std::optional<Strategy> strategy;
    std::optional<std::string> certificate;  // distinguishing formula, filled by callers
    std::size_t positions_explored = 0;
    int stabilization_round = -1;  // Pebble: first round where the winning set stops shrinking
    int spoiler_round = -1;        // Pebble: rounds after which Spoiler wins from the start, -1 if never
    bool duplicator_wins() const { return winner == Player::Duplicator; }
};

// Bisim needs pointed inputs; pass the points through `pa`/`pb` (ignored otherwise).
GameResult solve(const Structure& a, const Structure& b, const GameSpec& spec, bool want_strategy = false,
                 std::optional<Elem> pa = {}, std::optional<Elem> pb = {});
GameResult solve(const PointedStructure& a, const PointedStructure& b, const GameSpec& spec, bool want_strategy = false);

// Exhaustive adversarial replay: every Spoiler line is answered and stays winning.
// Returns the violations found (empty when the strategy is winning).
std::vector<std::string> verify_strategy(const Structure& a, const Structure& b, const Strategy& s,
                                         std::optional<Elem> pa = {}, std::optional<Elem> pb = {});

// Existential-positive strategies (EF or PebbleRounds) as Kleisli arrows G(A) -> B.
Map strategy_to_kleisli(const Strategy& s, const ComonadStructure& g);
Strategy kleisli_to_strategy(const ComonadStructure& g, const Structure& b, const Map& f, bool equality);

// Exhaustive search for a Kleisli arrow G(A) -> B (an I-morphism when the
// carrier was built over the equality expansion and B is expanded too).
std::optional<Map> find_kleisli_arrow(const ComonadStructure& g, const Structure& b);
// Kleisli isomorphism between G(A) and G(B) over the equality expansions (tiny inputs).
struct KleisliIso {
    Map forward;   // G(A^I) -> B^I
    Map backward;  // G(B^I) -> A^I
};
std::optional<KleisliIso> find_kleisli_iso(const Structure& a, const Structure& b, const Flavour& fl);

// Game on path posets: Spoiler extends a path along the covering relation in
// one poset, Duplicator answers in the other; positions must stay isomorphic
// (full, existential) or homomorphic left to right (positive, ep).
GameResult arboreal_game(const ForestStructure& x, const PathPoset& px, const ForestStructure& y, const PathPoset& py,
                         Variant variant);

// Span X <- W -> Y built from the winning positions of the back-and-forth game.
struct Span {
    ForestStructure w;
    Map left;
    Map right;
};
std::optional<Span> winning_span(const ForestStructure& x, const ForestStructure& y);

}  // namespace gckit
