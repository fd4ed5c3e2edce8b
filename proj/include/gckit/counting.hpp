#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gckit/structure.hpp"

namespace gckit {

inline constexpr std::size_t kMaxCountSource = 6;
inline constexpr std::size_t kMaxCountTarget = 8;
inline constexpr int kMaxClassSize = 4;

// Number of homomorphisms C -> A; guarded by |C| <= 6 and |A| <= 8.
std::uint64_t hom_count(const Structure& c, const Structure& a);

enum class ClassKind { All, TreeDepth, TreeWidth };

// all | td <= k | tw < n
struct ClassSpec {
    ClassKind kind = ClassKind::All;
    int bound = 0;
    static ClassSpec all() { return {}; }
    static ClassSpec td(int k) { return {ClassKind::TreeDepth, k}; }
    static ClassSpec tw(int n) { return {ClassKind::TreeWidth, n}; }
    std::string to_string() const;  // "all", "td 2", "tw 3"
    bool contains(const Structure& c) const;
    bool operator==(const ClassSpec&) const = default;
};
ClassSpec parse_class(const std::string& kind, int bound = 0);

std::vector<Structure> enumerate_class(const ClassSpec& spec, const Signature& sig, int max_size);

struct HomEntry {
    std::string structure;  // canonical text
    std::uint64_t count = 0;
};

struct HomVector {
    Structure query;
    ClassSpec spec;
    int max_size = 0;
    std::vector<HomEntry> entries;
};

HomVector hom_vector(const Structure& a, const ClassSpec& spec, int max_size);
// Same, over precomputed class representatives.
HomVector hom_vector(const Structure& a, const ClassSpec& spec, int max_size, const std::vector<Structure>& reps);

struct LovaszReport {
    bool agree = true;
    std::size_t compared = 0;
    std::optional<Structure> separator;  // first C in class order with different counts
    std::uint64_t count_a = 0;
    std::uint64_t count_b = 0;
    std::string to_string() const;
};

LovaszReport lovasz_compare(const Structure& a, const Structure& b, const ClassSpec& spec, int max_size);
LovaszReport lovasz_compare(const Structure& a, const Structure& b, const std::vector<Structure>& reps);

// tree_depth(i_quotient(X)) <= tree_depth(X) over structures carrying I.
struct QuotientReport {
    std::size_t checked = 0;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};
QuotientReport h_treedepth_check(const std::vector<Structure>& corpus);

}  // namespace gckit
