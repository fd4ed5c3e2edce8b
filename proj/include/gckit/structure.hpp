#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace gckit {

// Malformed input: unknown symbols, bad arities, missing elements, exceeded guards.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A resource guard was exceeded (carrier cap, enumeration size, ...).
class GuardError : public InputError {
public:
    using InputError::InputError;
};

using Elem = int;
using Tuple = std::vector<Elem>;
using Map = std::vector<Elem>;  // total function on element indices

inline constexpr int kMaxArity = 4;
inline constexpr const char* kEqualitySymbol = "I";

struct Symbol {
    std::string name;
    int arity = 0;
    bool operator==(const Symbol&) const = default;
};

class Signature {
public:
    Signature() = default;
    Signature(std::initializer_list<Symbol> symbols);
    explicit Signature(std::vector<Symbol> symbols);

    const std::vector<Symbol>& symbols() const { return symbols_; }
    std::size_t size() const { return symbols_.size(); }
    const Symbol& operator[](std::size_t i) const { return symbols_[i]; }
    std::optional<std::size_t> find(std::string_view name) const;
    bool contains(std::string_view name) const { return find(name).has_value(); }
    bool is_modal() const;
    int max_arity() const;
    Signature with(Symbol s) const;
    std::string to_string() const;  // "E/2 P/1"

    bool operator==(const Signature& o) const { return symbols_ == o.symbols_; }

private:
    std::vector<Symbol> symbols_;
};

struct TupleHash {
    std::size_t operator()(const Tuple& t) const noexcept;
};

class Relation {
public:
    explicit Relation(int arity = 1) : arity_(arity) {}
    int arity() const { return arity_; }
    bool insert(const Tuple& t);
    bool contains(std::span<const Elem> t) const;
    bool contains(const Tuple& t) const { return index_.count(t) != 0; }
    const std::set<Tuple>& tuples() const { return tuples_; }
    std::size_t size() const { return tuples_.size(); }
    bool operator==(const Relation& o) const { return arity_ == o.arity_ && tuples_ == o.tuples_; }

private:
    int arity_;
    std::set<Tuple> tuples_;
    std::unordered_set<Tuple, TupleHash> index_;
};

class Structure {
public:
    Structure() = default;
    Structure(Signature sig, std::vector<std::string> universe);

    const Signature& signature() const { return sig_; }
    std::size_t size() const { return universe_.size(); }
    bool empty() const { return universe_.empty(); }
    const std::vector<std::string>& universe() const { return universe_; }
    const std::string& name(Elem e) const { return universe_.at(static_cast<std::size_t>(e)); }
    std::optional<Elem> find(std::string_view name) const;
    Elem at(std::string_view name) const;  // throws InputError

    const Relation& relation(std::size_t i) const { return rels_[i]; }
    const Relation& relation(std::string_view name) const;
    std::size_t relation_index(std::string_view name) const;  // throws InputError

    void add(std::size_t rel, const Tuple& t);
    void add(std::string_view rel, const std::vector<std::string>& names);
    bool holds(std::size_t rel, std::span<const Elem> t) const { return rels_[rel].contains(t); }
    bool holds(std::size_t rel, const Tuple& t) const { return rels_[rel].contains(t); }

    std::size_t tuple_count() const;
    bool operator==(const Structure& o) const;

private:
    Signature sig_;
    std::vector<std::string> universe_;
    std::unordered_map<std::string, Elem> lookup_;
    std::vector<Relation> rels_;
};

struct PointedStructure {
    Structure structure;
    Elem point = 0;

    PointedStructure() = default;
    PointedStructure(Structure s, Elem p);  // requires modal signature and point in range
    const std::string& point_name() const { return structure.name(point); }
};

// Unvalidated structure as read from text; `validate` lists every problem.
struct RawStructure {
    std::string name;
    Signature signature;
    std::vector<std::string> universe;
    std::vector<std::pair<std::string, std::vector<std::string>>> tuples;
    std::optional<std::string> point;
};

std::vector<std::string> validate(const RawStructure& raw);
Structure build(const RawStructure& raw);  // throws InputError carrying all violations
RawStructure to_raw(const Structure& s, std::string name = "A", std::optional<Elem> point = {});

// Homomorphisms

bool hom_check(const Structure& dom, const Structure& cod, const Map& f);
bool is_embedding(const Structure& dom, const Structure& cod, const Map& f);
bool is_injective(const Map& f);

struct HomSearchOptions {
    std::size_t limit = 0;                 // 0 = unlimited
    bool injective = false;
    std::vector<std::pair<Elem, Elem>> fixed;  // forced assignments
};

// All homomorphisms dom -> cod in lexicographic order of their tables.
std::vector<Map> find_homs(const Structure& dom, const Structure& cod, const HomSearchOptions& opt = {});
std::optional<Map> find_hom(const Structure& dom, const Structure& cod);
std::uint64_t count_homs(const Structure& dom, const Structure& cod);
std::optional<Map> iso_check(const Structure& a, const Structure& b);

// Gaifman graph as adjacency lists (irreflexive, symmetric).
std::vector<std::vector<Elem>> gaifman(const Structure& s);
// Gaifman graph as a structure over {E/2}, symmetric and loop-free.
Structure gaifman_structure(const Structure& s);
std::vector<std::vector<Elem>> components(const std::vector<std::vector<Elem>>& adj);

Structure disjoint_union(const Structure& a, const Structure& b);
Structure product(const Structure& a, const Structure& b);
Structure induced(const Structure& s, const std::vector<Elem>& elems);

// Equality expansion over the reserved symbol I.
Structure i_expand(const Structure& s);
Structure i_quotient(const Structure& s);
Signature i_signature(const Signature& sig);

// Canonical form: minimal relabelled encoding over all permutations (small structures).
std::string canonical_form(const Structure& s);

// One representative per isomorphism class, sizes 1..max_size, deterministic order.
std::vector<Structure> enumerate_structures(const Signature& sig, int max_size);
void for_each_structure(const Signature& sig, int max_size, const std::function<void(const Structure&)>& fn);
// Undirected loop-free graphs over {E/2} up to isomorphism, sizes 1..max_size.
std::vector<Structure> enumerate_graphs(int max_size, bool connected_only = false);

Structure make_graph(int n, const std::vector<std::pair<int, int>>& edges, bool symmetric = true);
Structure complete_graph(int n);
Structure cycle_graph(int n);
Structure path_graph(int n);

std::string element_label(int i);  // a, b, ..., z, e26, ...

}  // namespace gckit
