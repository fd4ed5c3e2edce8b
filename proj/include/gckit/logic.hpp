#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gckit/formula.hpp"
#include "gckit/structure.hpp"

namespace gckit {

enum class Polarity { Full, Existential, Positive, ExistentialPositive };
enum class FragmentFamily { Rank, Vars, Modal };

struct Fragment {
    FragmentFamily family = FragmentFamily::Rank;
    int resource = 1;  // quantifier rank, variable count or modal depth
    Polarity polarity = Polarity::Full;
    bool counting = false;
    bool equality = true;
    std::string to_string() const;
};

std::string polarity_name(Polarity p);
Polarity parse_polarity(const std::string& s);  // full | exists | pos | ep
void validate_fragment(const Fragment& fr);       // throws InputError on unsupported combinations

// Quantifier-rank types as nested canonical sets (multisets when counting).
struct RankType {
    std::string atomic;
    std::vector<RankType> children;
    bool operator==(const RankType& o) const;
    bool operator<(const RankType& o) const;
};
RankType rank_type(const Structure& a, const Tuple& tuple, int k, bool equality = true, bool counting = false);
RankType modal_type(const Structure& a, Elem state, int k, bool counting = false);

struct OracleBudget {
    int max_iterations = 64;             // refinement rounds for the variable-count family
    std::size_t max_generators = 2000000;
};

// Sentences of a fragment generated over a corpus, deduplicated by truth
// vectors over every assignment into the corpus. Complete for the fragment
// relative to the corpus: two corpus members agree on all sentences of the
// fragment iff they agree on the generated ones.
class SentenceOracle {
public:
    SentenceOracle(std::vector<Structure> corpus, const Fragment& fr, const OracleBudget& budget = {});
    SentenceOracle(std::vector<PointedStructure> corpus, const Fragment& fr, const OracleBudget& budget = {});

    std::size_t corpus_size() const { return truth_.size(); }
    // A sentence true in member i and false in member j.
    std::optional<Formula> distinguish(std::size_t i, std::size_t j) const;
    std::optional<ModalFormula> distinguish_modal(std::size_t i, std::size_t j) const;
    bool separated(std::size_t i, std::size_t j) const;
    const std::vector<Formula>& sentences() const { return sentences_; }
    const std::vector<ModalFormula>& modal_sentences() const { return modal_sentences_; }
    bool complete() const { return complete_; }
    int rounds() const { return rounds_; }

private:
    std::optional<std::size_t> witness(std::size_t i, std::size_t j, bool& negated) const;

    Fragment fragment_;
    std::vector<Formula> sentences_;
    std::vector<ModalFormula> modal_sentences_;
    std::vector<std::vector<char>> truth_;  // truth_[member][sentence]
    bool complete_ = true;
    int rounds_ = 0;
};

// Default corpus: every structure of size at most 3 over the signature when
// that enumeration is small, plus the query structures.
std::vector<Structure> pinned_corpus(const Signature& sig);

std::vector<Formula> enumerate_sentences(const Fragment& fr, const Signature& sig, const OracleBudget& budget = {});

struct DistinguisherResult {
    std::optional<Formula> formula;
    std::optional<ModalFormula> modal;
    bool complete = true;  // false when the budget cut the closure short
    bool found() const { return formula || modal; }
    std::string to_string() const;
};

// A sentence of the fragment true in a and false in b (verified by evaluation).
DistinguisherResult find_distinguisher(const Structure& a, const Structure& b, const Fragment& fr,
                                       const OracleBudget& budget = {});
DistinguisherResult find_distinguisher(const PointedStructure& a, const PointedStructure& b, const Fragment& fr,
                                       const OracleBudget& budget = {});

}  // namespace gckit
