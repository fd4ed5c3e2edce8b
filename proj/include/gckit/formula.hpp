#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "gckit/structure.hpp"

namespace gckit {

// First-order formulas over relational signatures, variables x1, x2, ...
class Formula {
public:
    enum class Kind { True, False, Atom, Equal, Not, And, Or, Implies, Exists, Forall, CountExists };

    static Formula top();
    static Formula bottom();
    static Formula atom(std::string rel, std::vector<int> vars);
    static Formula equal(int x, int y);
    static Formula negate(Formula f);
    static Formula conj(std::vector<Formula> fs);
    static Formula disj(std::vector<Formula> fs);
    static Formula implies(Formula a, Formula b);
    static Formula exists(int var, Formula body);
    static Formula forall(int var, Formula body);
    static Formula count_exists(int threshold, int var, Formula body);

    Kind kind() const { return node_->kind; }
    const std::string& relation() const { return node_->rel; }
    const std::vector<int>& vars() const { return node_->vars; }
    int var() const { return node_->vars.at(0); }
    int threshold() const { return node_->threshold; }
    const std::vector<Formula>& children() const { return node_->kids; }
    const Formula& body() const { return node_->kids.at(0); }

    std::string to_string() const;
    std::size_t size() const;
    bool operator==(const Formula& o) const { return to_string() == o.to_string(); }

private:
    struct Node {
        Kind kind;
        std::string rel;
        std::vector<int> vars;
        int threshold = 0;
        std::vector<Formula> kids;
    };
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static Formula make(Node n);
    std::shared_ptr<const Node> node_;
};

// Modal formulas; propositional atoms are unary symbols, modalities binary ones.
class ModalFormula {
public:
    enum class Kind { True, False, Prop, Not, And, Or, Dia, Box, GradedDia };

    static ModalFormula top();
    static ModalFormula bottom();
    static ModalFormula prop(std::string p);
    static ModalFormula negate(ModalFormula f);
    static ModalFormula conj(std::vector<ModalFormula> fs);
    static ModalFormula disj(std::vector<ModalFormula> fs);
    static ModalFormula dia(std::string rel, ModalFormula f);
    static ModalFormula box(std::string rel, ModalFormula f);
    static ModalFormula graded_dia(int threshold, std::string rel, ModalFormula f);

    Kind kind() const { return node_->kind; }
    const std::string& name() const { return node_->name; }
    int threshold() const { return node_->threshold; }
    const std::vector<ModalFormula>& children() const { return node_->kids; }
    const ModalFormula& body() const { return node_->kids.at(0); }

    std::string to_string() const;
    std::size_t size() const;
    bool operator==(const ModalFormula& o) const { return to_string() == o.to_string(); }

private:
    struct Node {
        Kind kind;
        std::string name;
        int threshold = 0;
        std::vector<ModalFormula> kids;
    };
    explicit ModalFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static ModalFormula make(Node n);
    std::shared_ptr<const Node> node_;
};

// S-expression syntax, e.g. (exists x1 (and (R x1 x2) (not (= x1 x2)))),
// (exists>= 2 x1 (P x1)), (dia alpha (box alpha p)), (dia>= 2 alpha p).
Formula parse_formula(std::string_view text);
ModalFormula parse_modal_formula(std::string_view text);

using Assignment = std::vector<std::optional<Elem>>;  // index = variable number

bool eval(const Structure& a, const Formula& f, const Assignment& env = {});
bool eval(const Structure& a, Elem state, const ModalFormula& f);
bool eval(const PointedStructure& a, const ModalFormula& f);

struct FormulaMetrics {
    int quantifier_rank = 0;
    int variable_count = 0;
    std::set<int> variables;
    std::set<int> free_variables;
    bool positive = false;              // no negation after NNF
    bool existential = false;           // no universal quantifier after NNF
    bool existential_positive = false;  // both
    bool uses_equality = false;
    bool uses_counting = false;
};
FormulaMetrics metrics(const Formula& f);

struct ModalMetrics {
    int depth = 0;
    bool positive = false;
    bool existential = false;
    bool existential_positive = false;
    bool uses_counting = false;
};
ModalMetrics metrics(const ModalFormula& f);

Formula nnf(const Formula& f);
ModalFormula nnf(const ModalFormula& f);

// Standard translation with free variable x1; depth d uses variable x(d+1).
Formula standard_translation(const ModalFormula& f, int var = 1);

// The path formulas phi_l = exists x1 x2 . psi_l, built with three variables.
Formula path_formula(int length, const std::string& rel = "E");

}  // namespace gckit
