#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gckit/structure.hpp"

namespace gckit {

enum class ComonadKind { EF, Pebble, Modal };

struct Flavour {
    ComonadKind kind = ComonadKind::EF;
    int k = 1;  // rounds / modal depth
    int n = 0;  // pebbles (Pebble only)

    static Flavour ef(int k) { return {ComonadKind::EF, k, 0}; }
    static Flavour pebble(int n, int k) { return {ComonadKind::Pebble, k, n}; }
    static Flavour modal(int k) { return {ComonadKind::Modal, k, 0}; }
    std::string to_string() const;
    bool operator==(const Flavour&) const = default;
};

// tag: 0 for EF, pebble index 1..n for Pebble, relation index for Modal (-1 on the initial move).
struct Move {
    int tag = 0;
    Elem elem = 0;
    bool operator==(const Move&) const = default;
};
using Play = std::vector<Move>;

std::size_t carrier_cap();  // GCKIT_CARRIER_CAP or 200000

// A comonad applied to a structure: the carrier is a structure whose elements are plays.
struct ComonadBuilder;

class ComonadStructure {
public:
    const Flavour& flavour() const { return flavour_; }
    const Structure& base() const { return base_; }
    std::optional<Elem> base_point() const { return point_; }
    const Structure& carrier() const { return carrier_; }
    std::size_t size() const { return plays_.size(); }

    const Play& play(Elem s) const { return plays_[static_cast<std::size_t>(s)]; }
    Elem parent(Elem s) const { return parent_[static_cast<std::size_t>(s)]; }
    const std::vector<Elem>& children(Elem s) const { return children_[static_cast<std::size_t>(s)]; }
    const std::vector<Elem>& roots() const { return roots_; }
    Elem last(Elem s) const { return plays_[static_cast<std::size_t>(s)].back().elem; }
    int last_tag(Elem s) const { return plays_[static_cast<std::size_t>(s)].back().tag; }
    std::size_t length(Elem s) const { return plays_[static_cast<std::size_t>(s)].size(); }
    std::optional<Elem> child(Elem s, Move m) const;  // s = -1 for initial moves
    std::optional<Elem> find(const Play& p) const;
    std::vector<Elem> chain(Elem s) const;  // root .. s
    bool is_prefix(Elem s, Elem t) const;   // s below-or-equal t in prefix order
    Elem root() const { return 0; }         // modal: the trivial path

    std::string play_name(const Play& p) const;

private:
    friend struct ComonadBuilder;

    Flavour flavour_;
    Structure base_;
    std::optional<Elem> point_;
    Structure carrier_;
    std::vector<Play> plays_;
    std::vector<Elem> parent_;
    std::vector<std::vector<Elem>> children_;
    std::vector<Elem> roots_;
    std::unordered_map<std::uint64_t, Elem> index_;
    std::uint64_t move_space_ = 1;
    std::uint64_t key(Elem parent, Move m) const;
};

ComonadStructure build_comonad(const Structure& a, std::optional<Elem> point, const Flavour& fl,
                               std::size_t cap = carrier_cap());
// Smallest prefix-closed subcarrier containing the given plays, as an induced substructure.
ComonadStructure generated_subcomonad(const Structure& a, const Flavour& fl, const std::vector<Play>& plays,
                                      std::size_t cap = carrier_cap());
ComonadStructure ek_build(const Structure& a, int k, std::size_t cap = carrier_cap());
ComonadStructure pnk_build(const Structure& a, int n, int k, std::size_t cap = carrier_cap());
ComonadStructure mk_build(const PointedStructure& a, int k, std::size_t cap = carrier_cap());
std::uint64_t carrier_size_estimate(std::size_t base_size, const Flavour& fl);

// Kleisli arrows are tables indexed by carrier plays.
Map counit(const ComonadStructure& g);
bool is_kleisli_arrow(const ComonadStructure& dom, const Structure& cod, const Map& f,
                      std::optional<Elem> cod_point = {});
Map coextend(const ComonadStructure& dom, const Map& f, const ComonadStructure& cod);
Map kleisli_compose(const ComonadStructure& ga, const Map& f, const ComonadStructure& gb, const Map& g);
// Image of one play under the coextension, as a sequence of codomain moves.
Play coextend_play(const ComonadStructure& dom, const Map& f, Elem s);
bool is_i_morphism(const ComonadStructure& dom, const Map& f);

using Coextender = std::function<Map(const ComonadStructure&, const Map&, const ComonadStructure&)>;

struct LawReport {
    std::size_t arrows = 0;
    std::size_t checks = 0;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// Random Kleisli arrows G(A) -> A: homomorphisms composed with the counit, then
// perturbed one play at a time while the table stays a homomorphism.
std::vector<Map> sample_kleisli_arrows(const ComonadStructure& g, std::size_t count, std::uint64_t seed);

LawReport check_comonad_laws(const Structure& a, std::optional<Elem> point, const Flavour& fl, std::size_t samples,
                             std::uint64_t seed, const Coextender& coext = coextend);

}  // namespace gckit
