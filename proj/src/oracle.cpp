#include <algorithm>
#include <functional>
#include <numeric>
#include <unordered_map>

#include "gckit/logic.hpp"

namespace gckit {

namespace {

// ---------------------------------------------------------------- bitsets

using Bits = std::vector<std::uint64_t>;

struct BitsHash {
    std::size_t operator()(const Bits& b) const noexcept {
        std::size_t h = 0x84222325cbf29ce4ULL;
        for (auto w : b) h = (h ^ w) * 0x100000001b3ULL;
        return h;
    }
};

Bits empty_bits(std::size_t n) { return Bits((n + 63) / 64, 0); }
Bits full_bits(std::size_t n) {
    Bits b = empty_bits(n);
    for (std::size_t i = 0; i < n; ++i) b[i / 64] |= 1ULL << (i % 64);
    return b;
}
bool test(const Bits& b, std::size_t i) { return b[i / 64] >> (i % 64) & 1ULL; }
void set(Bits& b, std::size_t i) { b[i / 64] |= 1ULL << (i % 64); }
bool subset(const Bits& a, const Bits& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] & ~b[i]) return false;
    return true;
}
std::size_t count_and_not(const Bits& a, const Bits& b) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.size(); ++i) n += static_cast<std::size_t>(__builtin_popcountll(a[i] & ~b[i]));
    return n;
}

using Succ = std::vector<std::vector<std::uint32_t>>;  // from-point -> successor points

// ---------------------------------------------------------------- formula operations

struct FoOps {
    using F = Formula;
    F top() const { return Formula::top(); }
    F bottom() const { return Formula::bottom(); }
    F neg(const F& f) const { return Formula::negate(f); }
    F conj(std::vector<F> fs) const { return Formula::conj(std::move(fs)); }
    F disj(std::vector<F> fs) const { return Formula::disj(std::move(fs)); }
    // option = variable number
    F exists(int option, const F& b) const { return Formula::exists(option, b); }
    F forall(int option, const F& b) const { return Formula::forall(option, b); }
    F at_least(int m, int option, const F& b) const { return Formula::count_exists(m, option, b); }
};

struct ModalOps {
    using F = ModalFormula;
    std::vector<std::string> labels;  // option -> modality name
    F top() const { return ModalFormula::top(); }
    F bottom() const { return ModalFormula::bottom(); }
    F neg(const F& f) const { return ModalFormula::negate(f); }
    F conj(std::vector<F> fs) const { return ModalFormula::conj(std::move(fs)); }
    F disj(std::vector<F> fs) const { return ModalFormula::disj(std::move(fs)); }
    F exists(int option, const F& b) const { return ModalFormula::dia(labels[static_cast<std::size_t>(option)], b); }
    F forall(int option, const F& b) const { return ModalFormula::box(labels[static_cast<std::size_t>(option)], b); }
    F at_least(int m, int option, const F& b) const {
        return ModalFormula::graded_dia(m, labels[static_cast<std::size_t>(option)], b);
    }
};

template <class F>
struct Gen {
    Bits bits;
    F formula;
};

// Generators deduplicated by truth vector; earlier (simpler) formulas win.
template <class F>
class GenSet {
public:
    explicit GenSet(std::size_t points) : points_(points) {}
    bool add(Bits bits, F f) {
        if (index_.count(bits)) return false;
        index_.emplace(bits, items_.size());
        items_.push_back({std::move(bits), std::move(f)});
        return true;
    }
    const std::vector<Gen<F>>& items() const { return items_; }
    std::size_t size() const { return items_.size(); }
    std::size_t points() const { return points_; }

private:
    std::size_t points_;
    std::vector<Gen<F>> items_;
    std::unordered_map<Bits, std::size_t, BitsHash> index_;
};

// Points grouped by the generators they satisfy.
template <class F>
std::vector<std::vector<std::size_t>> point_classes(const GenSet<F>& gens) {
    const std::size_t n = gens.points();
    std::vector<std::uint32_t> cls(n, 0), remap(2 * n + 2);
    for (const auto& g : gens.items()) {
        std::fill(remap.begin(), remap.end(), 0);
        std::uint32_t next = 0;
        for (std::size_t p = 0; p < n; ++p) {
            std::size_t key = static_cast<std::size_t>(cls[p]) * 2 + (test(g.bits, p) ? 1 : 0);
            if (!remap[key]) remap[key] = ++next;
            cls[p] = remap[key] - 1;
        }
    }
    std::unordered_map<std::uint32_t, std::size_t> slot;
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t p = 0; p < n; ++p) {
        auto it = slot.find(cls[p]);
        if (it == slot.end()) {
            it = slot.emplace(cls[p], out.size()).first;
            out.emplace_back();
        }
        out[it->second].push_back(p);
    }
    return out;
}

// Greedy conjunction of candidate generators (all supersets of `target`)
// cutting every point down to `target`.
template <class Ops>
typename Ops::F cut_down(const Ops& ops, const GenSet<typename Ops::F>& gens, const Bits& target,
                         std::vector<std::size_t> cand) {
    Bits cur = full_bits(gens.points());
    std::vector<typename Ops::F> lits;
    while (cur != target) {
        std::size_t best_gain = 0, best = 0;
        std::size_t keep = 0;
        for (std::size_t i : cand) {
            std::size_t gain = count_and_not(cur, gens.items()[i].bits);
            if (gain == 0) continue;
            cand[keep++] = i;
            if (gain > best_gain) best_gain = gain, best = i;
        }
        cand.resize(keep);
        if (best_gain == 0) throw std::logic_error("oracle: type is not an intersection of generators");
        const Bits& b = gens.items()[best].bits;
        for (std::size_t w = 0; w < cur.size(); ++w) cur[w] &= b[w];
        lits.push_back(gens.items()[best].formula);
    }
    return ops.conj(std::move(lits));
}

// Greedy disjunction of generators covering `target` exactly.
template <class Ops>
typename Ops::F build_up(const Ops& ops, const GenSet<typename Ops::F>& gens, const Bits& target) {
    Bits cur = empty_bits(gens.points());
    std::vector<typename Ops::F> parts;
    while (cur != target) {
        std::size_t best_gain = 0, best = 0;
        for (std::size_t i = 0; i < gens.items().size(); ++i) {
            const Bits& b = gens.items()[i].bits;
            if (!subset(b, target)) continue;
            std::size_t gain = count_and_not(b, cur);
            if (gain > best_gain) best_gain = gain, best = i;
        }
        if (best_gain == 0) throw std::logic_error("oracle: set is not a union of generators");
        const Bits& b = gens.items()[best].bits;
        for (std::size_t w = 0; w < cur.size(); ++w) cur[w] |= b[w];
        parts.push_back(gens.items()[best].formula);
    }
    return ops.disj(std::move(parts));
}

// Full polarity: the partition into classes, each defined by the literals
// along its branch of the refinement (a generator only counts where it splits).
template <class Ops>
std::vector<Gen<typename Ops::F>> classes(const Ops& ops, const GenSet<typename Ops::F>& gens) {
    using F = typename Ops::F;
    const std::size_t n = gens.points();
    std::vector<std::uint32_t> cls(n, 0);
    std::vector<std::vector<F>> lits(1);
    std::vector<std::uint32_t> remap;
    for (const auto& g : gens.items()) {
        const std::size_t m = lits.size();
        remap.assign(2 * m, 0);
        for (std::size_t p = 0; p < n; ++p) remap[cls[p] * 2 + (test(g.bits, p) ? 1 : 0)] = 1;
        std::vector<std::vector<F>> next;
        for (std::size_t c = 0; c < m; ++c) {
            const bool both = remap[2 * c] && remap[2 * c + 1];
            for (int bit = 0; bit < 2; ++bit) {
                if (!remap[2 * c + static_cast<std::size_t>(bit)]) continue;
                std::vector<F> l = both ? lits[c] : std::move(lits[c]);
                if (both) l.push_back(bit ? g.formula : ops.neg(g.formula));
                remap[2 * c + static_cast<std::size_t>(bit)] = static_cast<std::uint32_t>(next.size()) + 1;
                next.push_back(std::move(l));
            }
        }
        for (std::size_t p = 0; p < n; ++p) cls[p] = remap[cls[p] * 2 + (test(g.bits, p) ? 1 : 0)] - 1;
        lits = std::move(next);
    }
    std::vector<Gen<F>> out;
    for (auto& l : lits) out.push_back({empty_bits(n), ops.conj(std::move(l))});
    for (std::size_t p = 0; p < n; ++p) set(out[cls[p]].bits, p);
    if (n == 0) out.clear();
    return out;
}

// Up-types: for each point, the intersection of the generators containing it.
template <class Ops>
std::vector<Gen<typename Ops::F>> up_types(const Ops& ops, const GenSet<typename Ops::F>& gens) {
    std::vector<Gen<typename Ops::F>> out;
    std::unordered_map<Bits, bool, BitsHash> seen;
    for (const auto& members : point_classes(gens)) {
        Bits t = full_bits(gens.points());
        std::vector<std::size_t> cand;
        for (std::size_t i = 0; i < gens.size(); ++i) {
            const Bits& g = gens.items()[i].bits;
            if (!test(g, members.front())) continue;
            cand.push_back(i);
            for (std::size_t w = 0; w < t.size(); ++w) t[w] &= g[w];
        }
        if (seen.emplace(t, true).second) out.push_back({t, cut_down(ops, gens, t, std::move(cand))});
    }
    return out;
}

// Complements of down-sets: for each point q, the union of generators missing q.
template <class Ops>
std::vector<Gen<typename Ops::F>> down_cotypes(const Ops& ops, const GenSet<typename Ops::F>& gens) {
    std::vector<Gen<typename Ops::F>> out;
    std::unordered_map<Bits, bool, BitsHash> seen;
    for (const auto& members : point_classes(gens)) {
        Bits d = empty_bits(gens.points());
        for (const auto& g : gens.items())
            if (!test(g.bits, members.front()))
                for (std::size_t w = 0; w < d.size(); ++w) d[w] |= g.bits[w];
        if (seen.emplace(d, true).second) out.push_back({d, build_up(ops, gens, d)});
    }
    return out;
}

Bits quantify_bits(const Succ& succ, const Bits& body, int mode, int threshold) {
    // mode 0: exists, 1: forall, 2: at least `threshold`
    Bits out = empty_bits(succ.size());
    for (std::size_t p = 0; p < succ.size(); ++p) {
        int hits = 0;
        bool all = true;
        for (auto q : succ[p]) {
            if (test(body, q))
                ++hits;
            else
                all = false;
        }
        bool v = mode == 0 ? hits > 0 : mode == 1 ? all : hits >= threshold;
        if (v) set(out, p);
    }
    return out;
}

struct StepConfig {
    Polarity polarity;
    bool counting;
    int max_count;
};

// Quantified generators at the upper level from the algebra generated below.
// options[o] = (formula option tag, successor lists from upper to lower points).
template <class Ops>
void add_quantified(const Ops& ops, const StepConfig& cfg, const GenSet<typename Ops::F>& lower,
                    const std::vector<std::pair<int, const Succ*>>& options, GenSet<typename Ops::F>& upper) {
    if (cfg.polarity == Polarity::Full) {
        auto cls = classes(ops, lower);
        std::vector<std::uint32_t> of(lower.points(), 0);
        for (std::size_t c = 0; c < cls.size(); ++c)
            for (std::size_t p = 0; p < of.size(); ++p)
                if (test(cls[c].bits, p)) of[p] = static_cast<std::uint32_t>(c);
        const int top_m = cfg.counting ? cfg.max_count : 1;
        for (const auto& [tag, succ] : options) {
            // hits[m-1][c]: points with at least m successors in class c
            std::vector<std::vector<Bits>> hits(static_cast<std::size_t>(top_m),
                                                std::vector<Bits>(cls.size(), empty_bits(succ->size())));
            std::unordered_map<std::uint32_t, int> tally;
            for (std::size_t p = 0; p < succ->size(); ++p) {
                tally.clear();
                for (auto q : (*succ)[p]) {
                    int t = ++tally[of[q]];
                    if (t <= top_m) set(hits[static_cast<std::size_t>(t - 1)][of[q]], p);
                }
            }
            for (std::size_t c = 0; c < cls.size(); ++c) {
                upper.add(hits[0][c], ops.exists(tag, cls[c].formula));
                for (int m = 2; m <= top_m; ++m)
                    upper.add(hits[static_cast<std::size_t>(m - 1)][c], ops.at_least(m, tag, cls[c].formula));
            }
        }
        return;
    }
    auto types = up_types(ops, lower);
    for (const auto& [tag, succ] : options)
        for (const auto& t : types) upper.add(quantify_bits(*succ, t.bits, 0, 1), ops.exists(tag, t.formula));
    if (cfg.polarity == Polarity::Positive) {
        auto downs = down_cotypes(ops, lower);
        for (const auto& [tag, succ] : options)
            for (const auto& d : downs) upper.add(quantify_bits(*succ, d.bits, 1, 1), ops.forall(tag, d.formula));
    }
}

template <class Ops>
void add_constants(const Ops& ops, Polarity pol, GenSet<typename Ops::F>& g) {
    g.add(full_bits(g.points()), ops.top());
    if (pol == Polarity::Positive) g.add(empty_bits(g.points()), ops.bottom());
}

template <class Ops>
void add_atom(const Ops& ops, Polarity pol, GenSet<typename Ops::F>& g, const Bits& b, const typename Ops::F& f) {
    g.add(b, f);
    if (pol == Polarity::Existential) {
        Bits nb = b;
        Bits all = full_bits(g.points());
        for (std::size_t w = 0; w < nb.size(); ++w) nb[w] = ~nb[w] & all[w];
        g.add(nb, ops.neg(f));
    }
}

std::size_t ipow(std::size_t b, int e) {
    std::size_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

constexpr std::size_t kMaxOraclePoints = 4000000;

// Atoms over variables x1..xm at points (structure, tuple-code).
void add_fo_atoms(const FoOps& ops, Polarity pol, bool equality, const std::vector<Structure>& corpus,
                  const std::vector<std::size_t>& offsets, int m, GenSet<Formula>& g) {
    if (m == 0 || corpus.empty()) return;
    const Signature& sig = corpus.front().signature();
    const std::size_t npts = g.points();
    auto eval_points = [&](const std::function<bool(std::size_t s, const Tuple& t)>& pred) {
        Bits b = empty_bits(npts);
        for (std::size_t s = 0; s < corpus.size(); ++s) {
            const std::size_t n = corpus[s].size();
            const std::size_t total = ipow(n, m);
            Tuple t(static_cast<std::size_t>(m));
            for (std::size_t code = 0; code < total; ++code) {
                std::size_t x = code;
                for (int i = m - 1; i >= 0; --i) {
                    t[static_cast<std::size_t>(i)] = static_cast<Elem>(x % n);
                    x /= n;
                }
                if (pred(s, t)) set(b, offsets[s] + code);
            }
        }
        return b;
    };
    for (std::size_t r = 0; r < sig.size(); ++r) {
        const int ar = sig[r].arity;
        const std::size_t combos = ipow(static_cast<std::size_t>(m), ar);
        for (std::size_t c = 0; c < combos; ++c) {
            std::vector<int> vars(static_cast<std::size_t>(ar));
            std::size_t x = c;
            for (int i = ar - 1; i >= 0; --i) {
                vars[static_cast<std::size_t>(i)] = static_cast<int>(x % static_cast<std::size_t>(m));
                x /= static_cast<std::size_t>(m);
            }
            Bits b = eval_points([&](std::size_t s, const Tuple& t) {
                Tuple img(vars.size());
                for (std::size_t i = 0; i < vars.size(); ++i) img[i] = t[static_cast<std::size_t>(vars[i])];
                return corpus[s].holds(r, img);
            });
            std::vector<int> named(vars.size());
            for (std::size_t i = 0; i < vars.size(); ++i) named[i] = vars[i] + 1;
            add_atom(ops, pol, g, b, Formula::atom(sig[r].name, named));
        }
    }
    if (equality)
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) {
                Bits b = eval_points([&](std::size_t, const Tuple& t) {
                    return t[static_cast<std::size_t>(i)] == t[static_cast<std::size_t>(j)];
                });
                add_atom(ops, pol, g, b, Formula::equal(i + 1, j + 1));
            }
}

int max_size(const std::vector<Structure>& corpus) {
    std::size_t m = 1;
    for (const auto& s : corpus) m = std::max(m, s.size());
    return static_cast<int>(m);
}

}  // namespace

// ---------------------------------------------------------------- first-order families

SentenceOracle::SentenceOracle(std::vector<Structure> corpus, const Fragment& fr, const OracleBudget& budget)
    : fragment_(fr) {
    validate_fragment(fr);
    if (fr.family == FragmentFamily::Modal) throw InputError("modal fragments need pointed structures");
    for (const auto& s : corpus)
        if (!(s.signature() == corpus.front().signature())) throw InputError("corpus mixes signatures");
    if (!corpus.empty() && fr.equality && corpus.front().signature().contains(kEqualitySymbol))
        throw InputError("relation symbol I is reserved for equality; rename it or disable equality");
    FoOps ops;
    const StepConfig cfg{fr.polarity, fr.counting, max_size(corpus)};
    const int k = fr.resource;
    truth_.assign(corpus.size(), {});

    if (fr.family == FragmentFamily::Rank) {
        // Level j holds every assignment of x1..xj; quantifying x(j+1) moves up a level.
        std::vector<std::vector<std::size_t>> offsets(static_cast<std::size_t>(k) + 1);
        std::vector<std::size_t> npts(static_cast<std::size_t>(k) + 1, 0);
        for (int j = 0; j <= k; ++j)
            for (const auto& s : corpus) {
                offsets[static_cast<std::size_t>(j)].push_back(npts[static_cast<std::size_t>(j)]);
                npts[static_cast<std::size_t>(j)] += ipow(s.size(), j);
                if (npts[static_cast<std::size_t>(j)] > kMaxOraclePoints)
                    throw GuardError("sentence oracle: too many assignments at rank " + std::to_string(k));
            }
        GenSet<Formula> lower(npts[static_cast<std::size_t>(k)]);
        add_constants(ops, fr.polarity, lower);
        add_fo_atoms(ops, fr.polarity, fr.equality, corpus, offsets[static_cast<std::size_t>(k)], k, lower);
        for (int j = k - 1; j >= 0; --j) {
            const std::size_t J = static_cast<std::size_t>(j);
            Succ succ(npts[J]);
            for (std::size_t s = 0; s < corpus.size(); ++s) {
                const std::size_t n = corpus[s].size();
                for (std::size_t code = 0; code < ipow(n, j); ++code)
                    for (std::size_t b = 0; b < n; ++b)
                        succ[offsets[J][s] + code].push_back(static_cast<std::uint32_t>(offsets[J + 1][s] + code * n + b));
            }
            GenSet<Formula> upper(npts[J]);
            add_constants(ops, fr.polarity, upper);
            add_fo_atoms(ops, fr.polarity, fr.equality, corpus, offsets[J], j, upper);
            add_quantified(ops, cfg, lower, {{j + 1, &succ}}, upper);
            if (upper.size() > budget.max_generators) throw GuardError("sentence oracle: generator budget exceeded");
            lower = std::move(upper);
        }
        for (const auto& g : lower.items()) sentences_.push_back(g.formula);
        for (std::size_t s = 0; s < corpus.size(); ++s)
            for (const auto& g : lower.items()) truth_[s].push_back(test(g.bits, s));
        rounds_ = k;
        return;
    }

    // Variable-count family: all n variables always assigned; refine until stable.
    const int n = k;
    std::vector<std::size_t> offsets;
    std::size_t npts = 0;
    for (const auto& s : corpus) {
        offsets.push_back(npts);
        npts += ipow(s.size(), n);
        if (npts > kMaxOraclePoints) throw GuardError("sentence oracle: too many assignments for " + std::to_string(n) + " variables");
    }
    std::vector<Succ> succs(static_cast<std::size_t>(n), Succ(npts));
    for (std::size_t s = 0; s < corpus.size(); ++s) {
        const std::size_t sz = corpus[s].size();
        const std::size_t total = ipow(sz, n);
        for (int i = 0; i < n; ++i) {
            const std::size_t place = ipow(sz, n - 1 - i);
            for (std::size_t code = 0; code < total; ++code) {
                const std::size_t digit = (code / place) % sz;
                const std::size_t base = code - digit * place;
                for (std::size_t b = 0; b < sz; ++b)
                    succs[static_cast<std::size_t>(i)][offsets[s] + code].push_back(
                        static_cast<std::uint32_t>(offsets[s] + base + b * place));
            }
        }
    }
    std::vector<std::pair<int, const Succ*>> options;
    for (int i = 0; i < n; ++i) options.push_back({i + 1, &succs[static_cast<std::size_t>(i)]});
    GenSet<Formula> gens(npts);
    add_constants(ops, fr.polarity, gens);
    add_fo_atoms(ops, fr.polarity, fr.equality, corpus, offsets, n, gens);
    complete_ = false;
    for (int round = 1; round <= budget.max_iterations; ++round) {
        rounds_ = round;
        GenSet<Formula> next = gens;
        add_quantified(ops, cfg, gens, options, next);
        if (next.size() > budget.max_generators) break;
        bool stable = next.size() == gens.size();
        gens = std::move(next);
        if (stable) {
            complete_ = true;
            break;
        }
    }
    // Sentences: the closure of each class or type under all n variables.
    auto close = [&](const Formula& f, bool universal) {
        Formula out = f;
        for (int i = n; i >= 1; --i) out = universal ? Formula::forall(i, out) : Formula::exists(i, out);
        return out;
    };
    std::vector<std::uint32_t> owner(npts);
    for (std::size_t s = 0; s < corpus.size(); ++s)
        for (std::size_t p = offsets[s]; p < offsets[s] + ipow(corpus[s].size(), n); ++p) owner[p] = static_cast<std::uint32_t>(s);
    std::vector<std::size_t> hits(corpus.size());
    auto record = [&](const Bits& bits, const Formula& f, bool universal) {
        sentences_.push_back(close(f, universal));
        std::fill(hits.begin(), hits.end(), 0);
        for (std::size_t w = 0; w < bits.size(); ++w)
            for (std::uint64_t x = bits[w]; x; x &= x - 1)
                ++hits[owner[w * 64 + static_cast<std::size_t>(__builtin_ctzll(x))]];
        for (std::size_t s = 0; s < corpus.size(); ++s)
            truth_[s].push_back(universal ? hits[s] == ipow(corpus[s].size(), n) : hits[s] > 0);
    };
    if (fr.polarity == Polarity::Full) {
        for (const auto& c : classes(ops, gens)) record(c.bits, c.formula, false);
    } else {
        for (const auto& t : up_types(ops, gens)) record(t.bits, t.formula, false);
        if (fr.polarity == Polarity::Positive)
            for (const auto& d : down_cotypes(ops, gens)) record(d.bits, d.formula, true);
    }
}

// ---------------------------------------------------------------- modal family

SentenceOracle::SentenceOracle(std::vector<PointedStructure> corpus, const Fragment& fr, const OracleBudget& budget)
    : fragment_(fr) {
    validate_fragment(fr);
    if (fr.family != FragmentFamily::Modal) throw InputError("pointed corpora are for modal fragments");
    for (const auto& s : corpus)
        if (!(s.structure.signature() == corpus.front().structure.signature()))
            throw InputError("corpus mixes signatures");
    truth_.assign(corpus.size(), {});
    if (corpus.empty()) return;
    const Signature& sig = corpus.front().structure.signature();
    ModalOps ops;
    std::vector<std::size_t> offsets;
    std::size_t npts = 0;
    for (const auto& s : corpus) {
        offsets.push_back(npts);
        npts += s.structure.size();
    }
    std::vector<Succ> succs;
    std::vector<std::pair<int, const Succ*>> options;
    int max_deg = 1;
    for (std::size_t r = 0; r < sig.size(); ++r) {
        if (sig[r].arity != 2) continue;
        ops.labels.push_back(sig[r].name);
        Succ succ(npts);
        for (std::size_t s = 0; s < corpus.size(); ++s)
            for (const auto& t : corpus[s].structure.relation(r).tuples())
                succ[offsets[s] + static_cast<std::size_t>(t[0])].push_back(
                    static_cast<std::uint32_t>(offsets[s] + static_cast<std::size_t>(t[1])));
        for (const auto& l : succ) max_deg = std::max(max_deg, static_cast<int>(l.size()));
        succs.push_back(std::move(succ));
    }
    for (std::size_t o = 0; o < succs.size(); ++o) options.push_back({static_cast<int>(o), &succs[o]});
    const StepConfig cfg{fr.polarity, fr.counting, max_deg};

    GenSet<ModalFormula> gens(npts);
    add_constants(ops, fr.polarity, gens);
    for (std::size_t r = 0; r < sig.size(); ++r) {
        if (sig[r].arity != 1) continue;
        Bits b = empty_bits(npts);
        for (std::size_t s = 0; s < corpus.size(); ++s)
            for (const auto& t : corpus[s].structure.relation(r).tuples()) set(b, offsets[s] + static_cast<std::size_t>(t[0]));
        add_atom(ops, fr.polarity, gens, b, ModalFormula::prop(sig[r].name));
    }
    for (int d = 1; d <= fr.resource; ++d) {
        GenSet<ModalFormula> next = gens;
        add_quantified(ops, cfg, gens, options, next);
        if (next.size() > budget.max_generators) throw GuardError("sentence oracle: generator budget exceeded");
        gens = std::move(next);
    }
    rounds_ = fr.resource;
    for (const auto& g : gens.items()) modal_sentences_.push_back(g.formula);
    for (std::size_t s = 0; s < corpus.size(); ++s)
        for (const auto& g : gens.items())
            truth_[s].push_back(test(g.bits, offsets[s] + static_cast<std::size_t>(corpus[s].point)));
}

// ---------------------------------------------------------------- queries

std::optional<std::size_t> SentenceOracle::witness(std::size_t i, std::size_t j, bool& negated) const {
    const auto& ti = truth_.at(i);
    const auto& tj = truth_.at(j);
    for (std::size_t g = 0; g < ti.size(); ++g)
        if (ti[g] && !tj[g]) {
            negated = false;
            return g;
        }
    if (fragment_.polarity == Polarity::Full)
        for (std::size_t g = 0; g < ti.size(); ++g)
            if (!ti[g] && tj[g]) {
                negated = true;
                return g;
            }
    return std::nullopt;
}

bool SentenceOracle::separated(std::size_t i, std::size_t j) const {
    bool neg = false;
    return witness(i, j, neg).has_value();
}

std::optional<Formula> SentenceOracle::distinguish(std::size_t i, std::size_t j) const {
    if (fragment_.family == FragmentFamily::Modal) throw InputError("use distinguish_modal for modal fragments");
    bool neg = false;
    auto g = witness(i, j, neg);
    if (!g) return std::nullopt;
    return neg ? Formula::negate(sentences_[*g]) : sentences_[*g];
}

std::optional<ModalFormula> SentenceOracle::distinguish_modal(std::size_t i, std::size_t j) const {
    if (fragment_.family != FragmentFamily::Modal) throw InputError("distinguish_modal needs a modal fragment");
    bool neg = false;
    auto g = witness(i, j, neg);
    if (!g) return std::nullopt;
    return neg ? ModalFormula::negate(modal_sentences_[*g]) : modal_sentences_[*g];
}

// ---------------------------------------------------------------- entry points

std::vector<Structure> pinned_corpus(const Signature& sig) {
    std::size_t bits = 0;
    for (const auto& s : sig.symbols()) bits += ipow(3, s.arity);
    if (bits > 14) return {};
    return enumerate_structures(sig, 3);
}

std::vector<Formula> enumerate_sentences(const Fragment& fr, const Signature& sig, const OracleBudget& budget) {
    if (fr.family == FragmentFamily::Modal) {
        std::vector<PointedStructure> corpus;
        for (const auto& s : pinned_corpus(sig))
            for (std::size_t p = 0; p < s.size(); ++p) corpus.emplace_back(s, static_cast<Elem>(p));
        SentenceOracle o(corpus, fr, budget);
        std::vector<Formula> out;
        for (const auto& m : o.modal_sentences()) out.push_back(standard_translation(m));
        return out;
    }
    return SentenceOracle(pinned_corpus(sig), fr, budget).sentences();
}

std::string DistinguisherResult::to_string() const {
    if (formula) return formula->to_string();
    if (modal) return modal->to_string();
    return "";
}

DistinguisherResult find_distinguisher(const Structure& a, const Structure& b, const Fragment& fr,
                                       const OracleBudget& budget) {
    if (!(a.signature() == b.signature())) throw InputError("signature mismatch");
    std::vector<Structure> corpus{a, b};
    for (auto& s : pinned_corpus(a.signature())) corpus.push_back(std::move(s));
    SentenceOracle o(corpus, fr, budget);
    DistinguisherResult res;
    res.complete = o.complete();
    res.formula = o.distinguish(0, 1);
    if (res.formula && (!eval(a, *res.formula) || eval(b, *res.formula)))
        throw std::logic_error("distinguishing sentence failed verification: " + res.formula->to_string());
    return res;
}

DistinguisherResult find_distinguisher(const PointedStructure& a, const PointedStructure& b, const Fragment& fr,
                                       const OracleBudget& budget) {
    if (!(a.structure.signature() == b.structure.signature())) throw InputError("signature mismatch");
    std::vector<PointedStructure> corpus{a, b};
    SentenceOracle o(corpus, fr, budget);
    DistinguisherResult res;
    res.modal = o.distinguish_modal(0, 1);
    if (res.modal && (!eval(a, *res.modal) || eval(b, *res.modal)))
        throw std::logic_error("distinguishing modal formula failed verification: " + res.modal->to_string());
    return res;
}

}  // namespace gckit
