#pragma once

#include <optional>
#include <vector>

#include "gckit/comonad.hpp"
#include "gckit/structure.hpp"

namespace gckit {

// Forest order as a parent array; -1 marks a root.
struct ForestOrder {
    std::vector<Elem> parent;
    bool operator==(const ForestOrder&) const = default;
};

bool is_forest(const ForestOrder& order, std::size_t n);
bool forest_leq(const ForestOrder& order, Elem x, Elem y);   // x below-or-equal y
std::vector<Elem> down_chain(const ForestOrder& order, Elem x);  // root .. x
int forest_height(const ForestOrder& order);                 // longest chain, counted in elements

// Adjacent elements of the Gaifman graph are comparable.
bool check_forest_cover(const Structure& a, const ForestOrder& order);
// Forest cover plus: adjacent a < b implies p(a) differs from p(x) for a < x <= b.
bool check_pebble_forest_cover(const Structure& a, const ForestOrder& order, const std::vector<int>& pebbles, int n);
// Tree order of a synchronization tree rooted at the point; absent otherwise.
std::optional<ForestOrder> modal_tree_order(const PointedStructure& a);

struct TreeDepthResult {
    int depth = 0;
    ForestOrder cover;
};
TreeDepthResult tree_depth(const Structure& a);

struct TreeWidthResult {
    int width = 0;
    int pebbles = 0;
    ForestOrder cover;
    std::vector<int> pebbling;  // 1-based pebble per element
};
TreeWidthResult tree_width(const Structure& a);
int tree_width_oracle(const Structure& a);  // minimum over elimination orderings, small structures only

struct CoalgebraCheck {
    ComonadStructure carrier;  // generated by the image of alpha
    Map alpha;
    bool homomorphism = false;
    bool counit_law = false;
    bool comultiplication_law = false;
    bool ok() const { return homomorphism && counit_law && comultiplication_law; }
};

CoalgebraCheck cover_to_coalgebra(const Structure& a, const ForestOrder& order, int k);
CoalgebraCheck cover_to_coalgebra(const Structure& a, const ForestOrder& order, const std::vector<int>& pebbles,
                                  int n, int k);
CoalgebraCheck cover_to_coalgebra(const PointedStructure& a, int k);

// Forest-ordered structures: coalgebras presented by their order.
struct ForestStructure {
    Structure structure;
    ForestOrder order;
    std::vector<int> pebbles;    // empty when not pebbled
    std::optional<Elem> point;   // pointed trees: the point is the unique root
};

ForestStructure cofree(const ComonadStructure& g);
ForestStructure forest_structure(const Structure& a, const ForestOrder& order);

// Poset of paths: a path is a down-set of one element. Forests get a formal
// root (the empty path); pointed trees use the point.
struct PathPoset {
    std::vector<int> parent;   // node -> parent node, -1 for the root
    std::vector<Elem> elem;    // node -> element, -1 for the formal root
    std::vector<std::vector<int>> children;
    int root = 0;
    std::size_t size() const { return parent.size(); }
};
PathPoset path_poset(const ForestStructure& x, std::size_t cap = 10000);

bool is_coalgebra_morphism(const ForestStructure& x, const ForestStructure& y, const Map& f);
bool is_pathwise_embedding(const ForestStructure& x, const ForestStructure& y, const Map& f);
bool is_open(const ForestStructure& x, const ForestStructure& y, const Map& f);
bool is_p_morphism(const PointedStructure& a, const PointedStructure& b, const Map& f);

}  // namespace gckit
