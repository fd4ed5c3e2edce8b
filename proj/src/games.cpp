#include "gckit/games.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <unordered_map>

namespace gckit {

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::Full: return "full";
        case Variant::Existential: return "exists";
        case Variant::Positive: return "pos";
        case Variant::ExistentialPositive: return "ep";
        case Variant::Bijective: return "bij";
    }
    return "?";
}

Variant parse_variant(const std::string& s) {
    if (s == "full") return Variant::Full;
    if (s == "exists") return Variant::Existential;
    if (s == "pos") return Variant::Positive;
    if (s == "ep") return Variant::ExistentialPositive;
    if (s == "bij") return Variant::Bijective;
    throw InputError("unknown game variant '" + s + "' (expected full, exists, pos, ep or bij)");
}

std::string player_name(Player p) { return p == Player::Spoiler ? "Spoiler" : "Duplicator"; }

std::string GameSpec::to_string() const {
    std::string out;
    switch (family) {
        case GameFamily::EF: out = "EF(" + std::to_string(k) + ")"; break;
        case GameFamily::Pebble: out = "Pebble(" + std::to_string(n) + ")"; break;
        case GameFamily::PebbleRounds: out = "PebbleRounds(" + std::to_string(n) + "," + std::to_string(k) + ")"; break;
        case GameFamily::Bisim: out = "Bisim(" + std::to_string(k) + ")"; break;
    }
    out += " " + variant_name(variant);
    if (family != GameFamily::Bisim) out += equality ? " eq" : " no-eq";
    return out;
}

const StrategyEntry* Strategy::find(const std::vector<Round>& position, const SpoilerMove& m) const {
    for (const auto& e : entries)
        if (e.move == m && e.position == position) return &e;
    return nullptr;
}

namespace {

constexpr std::size_t kMaxPositions = 5000000;

bool two_sided(Variant v) { return v == Variant::Full || v == Variant::Positive; }
bool iso_condition(Variant v) { return v == Variant::Full || v == Variant::Existential || v == Variant::Bijective; }

using Pairs = std::vector<std::pair<Elem, Elem>>;

// Winning relation on sets of pairs: partial isomorphism or partial homomorphism A -> B.
class PairCheck {
public:
    PairCheck(const Structure& a, const Structure& b, bool iso) : a_(a), b_(b), iso_(iso) {}

    // Tuples over pairs + (x, y) that use the new pair.
    bool extends(const Pairs& pairs, Elem x, Elem y) const {
        const std::size_t m = pairs.size() + 1;
        auto at = [&](std::size_t i) { return i + 1 == m ? std::pair<Elem, Elem>{x, y} : pairs[i]; };
        for (std::size_t r = 0; r < a_.signature().size(); ++r) {
            const std::size_t ar = static_cast<std::size_t>(a_.signature()[r].arity);
            std::vector<std::size_t> idx(ar, 0);
            Tuple ta(ar), tb(ar);
            while (true) {
                bool uses = false;
                for (std::size_t i = 0; i < ar; ++i) {
                    auto [u, v] = at(idx[i]);
                    ta[i] = u;
                    tb[i] = v;
                    uses |= idx[i] + 1 == m;
                }
                if (uses) {
                    bool ha = a_.holds(r, ta), hb = b_.holds(r, tb);
                    if (ha && !hb) return false;
                    if (iso_ && hb && !ha) return false;
                }
                std::size_t i = 0;
                while (i < ar && ++idx[i] == m) idx[i++] = 0;
                if (i == ar) break;
            }
        }
        return true;
    }

    bool consistent(const Pairs& pairs) const {
        Pairs prefix;
        for (auto [x, y] : pairs) {
            if (!extends(prefix, x, y)) return false;
            prefix.push_back({x, y});
        }
        return true;
    }

private:
    const Structure& a_;
    const Structure& b_;
    bool iso_;
};

// Kuhn's algorithm; ok[a][b] allowed edges on a square board.
bool augment(const std::vector<std::vector<char>>& ok, std::size_t a, std::vector<int>& match_b, std::vector<char>& seen) {
    for (std::size_t b = 0; b < ok[a].size(); ++b) {
        if (!ok[a][b] || seen[b]) continue;
        seen[b] = 1;
        if (match_b[b] < 0 || augment(ok, static_cast<std::size_t>(match_b[b]), match_b, seen)) {
            match_b[b] = static_cast<int>(a);
            return true;
        }
    }
    return false;
}

bool has_perfect_matching(const std::vector<std::vector<char>>& ok, std::size_t m) {
    std::vector<int> match_b(m, -1);
    for (std::size_t a = 0; a < ok.size(); ++a) {
        std::vector<char> seen(m, 0);
        if (!augment(ok, a, match_b, seen)) return false;
    }
    return true;
}

// Lexicographically least perfect matching (empty when none).
std::vector<Elem> least_matching(std::vector<std::vector<char>> ok, std::size_t m) {
    if (ok.size() != m || !has_perfect_matching(ok, m)) return {};
    std::vector<Elem> out(ok.size(), -1);
    for (std::size_t a = 0; a < ok.size(); ++a)
        for (std::size_t b = 0; b < m; ++b) {
            if (!ok[a][b]) continue;
            auto trial = ok;
            for (std::size_t c = 0; c < m; ++c) trial[a][c] = c == b;
            for (std::size_t a2 = 0; a2 < ok.size(); ++a2)
                if (a2 != a) trial[a2][b] = 0;
            if (has_perfect_matching(trial, m)) {
                ok = std::move(trial);
                out[a] = static_cast<Elem>(b);
                break;
            }
        }
    return out;
}

struct VecHash {
    std::size_t operator()(const std::vector<int>& v) const noexcept {
        std::size_t h = v.size();
        for (int x : v) h = h * 1000003u ^ static_cast<std::size_t>(x + 1);
        return h;
    }
};

void require_same_signature(const Structure& a, const Structure& b) {
    if (!(a.signature() == b.signature()))
        throw InputError("structures have different signatures: " + a.signature().to_string() + " vs " +
                         b.signature().to_string());
}

// ---------------------------------------------------------------- EF and bijective EF

class EfSolver {
public:
    EfSolver(const Structure& a, const Structure& b, Variant v)
        : a_(a), b_(b), v_(v), check_(a, b, iso_condition(v)), nb_(static_cast<int>(b.size())) {}

    bool win(const std::vector<int>& key, int r) {
        if (r == 0) return true;
        auto it = memo_.find(key);
        if (it == memo_.end()) {
            if (memo_.size() > kMaxPositions) throw GuardError("game position space exceeds guard");
            it = memo_.emplace(key, std::vector<signed char>()).first;
        }
        auto& slot = it->second;
        if (slot.size() <= static_cast<std::size_t>(r)) slot.resize(static_cast<std::size_t>(r) + 1, -1);
        if (slot[static_cast<std::size_t>(r)] >= 0) return slot[static_cast<std::size_t>(r)];
        bool res = compute(key, r);
        memo_[key][static_cast<std::size_t>(r)] = res;
        return res;
    }

    std::size_t explored() const { return memo_.size(); }

    // Duplicator's admissible answers: ok[x][y] for Spoiler's x on `side`.
    bool good(const std::vector<int>& key, int r, Elem x, Elem y, int side) {
        Elem a = side == 0 ? x : y, b = side == 0 ? y : x;
        Pairs pairs = decode(key);
        if (!check_.extends(pairs, a, b)) return false;
        return win(insert(key, code(a, b)), r - 1);
    }

    std::vector<std::vector<char>> board(const std::vector<int>& key, int r) {
        std::vector<std::vector<char>> ok(a_.size(), std::vector<char>(b_.size(), 0));
        for (std::size_t a = 0; a < a_.size(); ++a)
            for (std::size_t b = 0; b < b_.size(); ++b) ok[a][b] = good(key, r, static_cast<Elem>(a), static_cast<Elem>(b), 0);
        return ok;
    }

    int code(Elem a, Elem b) const { return a * nb_ + b; }
    static std::vector<int> insert(std::vector<int> key, int c) {
        auto pos = std::lower_bound(key.begin(), key.end(), c);
        if (pos == key.end() || *pos != c) key.insert(pos, c);
        return key;
    }
    Pairs decode(const std::vector<int>& key) const {
        Pairs p;
        for (int c : key) p.push_back({c / nb_, c % nb_});
        return p;
    }

    const Structure& a_;
    const Structure& b_;
    Variant v_;

private:
    bool compute(const std::vector<int>& key, int r) {
        if (v_ == Variant::Bijective) return has_perfect_matching(board(key, r), b_.size());
        for (int side = 0; side < (two_sided(v_) ? 2 : 1); ++side) {
            const Structure& s = side == 0 ? a_ : b_;
            const Structure& o = side == 0 ? b_ : a_;
            for (std::size_t x = 0; x < s.size(); ++x) {
                bool answered = false;
                for (std::size_t y = 0; y < o.size() && !answered; ++y)
                    answered = good(key, r, static_cast<Elem>(x), static_cast<Elem>(y), side);
                if (!answered) return false;
            }
        }
        return true;
    }

    PairCheck check_;
    int nb_;
    std::unordered_map<std::vector<int>, std::vector<signed char>, VecHash> memo_;
};

void ef_extract(EfSolver& s, std::vector<Round>& history, const std::vector<int>& key, int r, Strategy& out) {
    if (r == 0) return;
    const Variant v = s.v_;
    if (v == Variant::Bijective) {
        auto f = least_matching(s.board(key, r), s.b_.size());
        for (std::size_t a = 0; a < s.a_.size(); ++a) {
            Elem b = f[a];
            out.entries.push_back({history, {0, 0, static_cast<Elem>(a)}, b, f});
            history.push_back({0, 0, static_cast<Elem>(a), b});
            ef_extract(s, history, EfSolver::insert(key, s.code(static_cast<Elem>(a), b)), r - 1, out);
            history.pop_back();
        }
        return;
    }
    for (int side = 0; side < (two_sided(v) ? 2 : 1); ++side) {
        const Structure& sx = side == 0 ? s.a_ : s.b_;
        const Structure& sy = side == 0 ? s.b_ : s.a_;
        for (std::size_t x = 0; x < sx.size(); ++x)
            for (std::size_t y = 0; y < sy.size(); ++y) {
                if (!s.good(key, r, static_cast<Elem>(x), static_cast<Elem>(y), side)) continue;
                out.entries.push_back({history, {side, 0, static_cast<Elem>(x)}, static_cast<Elem>(y), {}});
                Elem a = side == 0 ? static_cast<Elem>(x) : static_cast<Elem>(y);
                Elem b = side == 0 ? static_cast<Elem>(y) : static_cast<Elem>(x);
                history.push_back({side, 0, a, b});
                ef_extract(s, history, EfSolver::insert(key, s.code(a, b)), r - 1, out);
                history.pop_back();
                break;
            }
    }
}

// ---------------------------------------------------------------- pebble games

class PebbleSolver {
public:
    static constexpr int kAlive = std::numeric_limits<int>::max();

    PebbleSolver(const Structure& a, const Structure& b, Variant v, int n)
        : a_(a), b_(b), v_(v), n_(n), check_(a, b, iso_condition(v)), nb_(static_cast<int>(b.size())) {
        std::vector<int> cur;
        Pairs pairs;
        enumerate(cur, pairs, 0);
        death_.assign(positions_.size(), kAlive);
        const int codes = static_cast<int>(a.size() * b.size());
        next_.assign(positions_.size(), {});
        for (std::size_t p = 0; p < positions_.size(); ++p) {
            if (static_cast<int>(positions_[p].size()) >= n_) continue;
            next_[p].assign(static_cast<std::size_t>(codes), -1);
            for (int c = 0; c < codes; ++c) next_[p][static_cast<std::size_t>(c)] = index_of(insert(positions_[p], c));
        }
        for (std::size_t p = 0; p < positions_.size(); ++p) {
            const auto& pos = positions_[p];
            std::vector<int> bases;
            if (static_cast<int>(pos.size()) < n_) bases.push_back(static_cast<int>(p));
            for (std::size_t i = 0; i < pos.size(); ++i) {
                if (i > 0 && pos[i] == pos[i - 1]) continue;
                auto q = pos;
                q.erase(q.begin() + static_cast<std::ptrdiff_t>(i));
                bases.push_back(index_of(q));
            }
            bases_.push_back(std::move(bases));
        }
    }

    // Iterate the winning sets W_0 ⊇ W_1 ⊇ ... up to `limit` rounds or stabilization.
    void run(int limit) {
        for (int i = 0; i < limit; ++i) {
            std::vector<signed char> good(positions_.size(), -1);
            bool changed = false;
            std::vector<int> dying;
            for (std::size_t p = 0; p < positions_.size(); ++p) {
                if (death_[p] != kAlive) continue;
                for (int q : bases_[p]) {
                    auto& g = good[static_cast<std::size_t>(q)];
                    if (g < 0) g = answerable(static_cast<std::size_t>(q), i);
                    if (!g) {
                        dying.push_back(static_cast<int>(p));
                        break;
                    }
                }
            }
            for (int p : dying) {
                death_[static_cast<std::size_t>(p)] = i + 1;
                changed = true;
            }
            if (!changed) {
                stabilized_ = i;
                return;
            }
        }
    }

    bool alive_at(int idx, int level) const { return idx >= 0 && death_[static_cast<std::size_t>(idx)] > level; }

    // Every Spoiler move from base q has an answer inside W_level.
    bool answerable(std::size_t q, int level) const {
        const auto& nx = next_[q];
        if (v_ == Variant::Bijective) return has_perfect_matching(board(q, level), b_.size());
        for (int side = 0; side < (two_sided(v_) ? 2 : 1); ++side) {
            const std::size_t xs = side == 0 ? a_.size() : b_.size();
            const std::size_t ys = side == 0 ? b_.size() : a_.size();
            for (std::size_t x = 0; x < xs; ++x) {
                bool ok = false;
                for (std::size_t y = 0; y < ys && !ok; ++y) {
                    std::size_t c = side == 0 ? x * b_.size() + y : y * b_.size() + x;
                    ok = alive_at(nx[c], level);
                }
                if (!ok) return false;
            }
        }
        return true;
    }

    std::vector<std::vector<char>> board(std::size_t q, int level) const {
        std::vector<std::vector<char>> ok(a_.size(), std::vector<char>(b_.size(), 0));
        for (std::size_t a = 0; a < a_.size(); ++a)
            for (std::size_t b = 0; b < b_.size(); ++b) ok[a][b] = alive_at(next_[q][a * b_.size() + b], level);
        return ok;
    }

    int index_of(const std::vector<int>& key) const {
        auto it = index_.find(key);
        return it == index_.end() ? -1 : it->second;
    }
    int code(Elem a, Elem b) const { return a * nb_ + b; }
    static std::vector<int> insert(std::vector<int> key, int c) {
        key.insert(std::upper_bound(key.begin(), key.end(), c), c);
        return key;
    }
    int next(int q, int c) const { return next_[static_cast<std::size_t>(q)][static_cast<std::size_t>(c)]; }

    int death(int idx) const { return death_[static_cast<std::size_t>(idx)]; }
    std::size_t size() const { return positions_.size(); }
    int stabilized() const { return stabilized_; }

    const Structure& a_;
    const Structure& b_;
    Variant v_;
    int n_;

private:
    void enumerate(std::vector<int>& cur, Pairs& pairs, int from) {
        if (positions_.size() > kMaxPositions) throw GuardError("pebble position space exceeds guard");
        index_.emplace(cur, static_cast<int>(positions_.size()));
        positions_.push_back(cur);
        if (static_cast<int>(cur.size()) == n_) return;
        const int codes = static_cast<int>(a_.size() * b_.size());
        for (int c = from; c < codes; ++c) {
            Elem a = c / nb_, b = c % nb_;
            if (!check_.extends(pairs, a, b)) continue;
            cur.push_back(c);
            pairs.push_back({a, b});
            enumerate(cur, pairs, c);
            cur.pop_back();
            pairs.pop_back();
        }
    }

    PairCheck check_;
    int nb_;
    std::vector<std::vector<int>> positions_;
    std::unordered_map<std::vector<int>, int, VecHash> index_;
    std::vector<std::vector<int>> next_;
    std::vector<std::vector<int>> bases_;
    std::vector<int> death_;
    int stabilized_ = -1;
};

using Slots = std::vector<std::optional<std::pair<Elem, Elem>>>;

std::vector<int> slot_key(const PebbleSolver& s, const Slots& slots) {
    std::vector<int> key;
    for (const auto& p : slots)
        if (p) key.push_back(s.code(p->first, p->second));
    std::sort(key.begin(), key.end());
    return key;
}

std::vector<Round> placement(const Slots& slots) {
    std::vector<Round> out;
    for (std::size_t p = 0; p < slots.size(); ++p)
        if (slots[p]) out.push_back({0, static_cast<int>(p) + 1, slots[p]->first, slots[p]->second});
    return out;
}

// Duplicator's choices for every Spoiler move from `slots`, answering inside W_level.
// Calls emit(label, side, x, y, bijection) for each move.
void pebble_answers(const PebbleSolver& s, const Slots& slots, int level,
                    const std::function<void(int, int, Elem, Elem, const std::vector<Elem>&)>& emit) {
    for (int p = 1; p <= s.n_; ++p) {
        Slots base = slots;
        base[static_cast<std::size_t>(p - 1)].reset();
        const int q = s.index_of(slot_key(s, base));
        if (s.v_ == Variant::Bijective) {
            auto f = least_matching(s.board(static_cast<std::size_t>(q), level), s.b_.size());
            for (std::size_t a = 0; a < s.a_.size(); ++a) emit(p, 0, static_cast<Elem>(a), f[a], f);
            continue;
        }
        for (int side = 0; side < (two_sided(s.v_) ? 2 : 1); ++side) {
            const std::size_t xs = side == 0 ? s.a_.size() : s.b_.size();
            const std::size_t ys = side == 0 ? s.b_.size() : s.a_.size();
            for (std::size_t x = 0; x < xs; ++x)
                for (std::size_t y = 0; y < ys; ++y) {
                    Elem a = static_cast<Elem>(side == 0 ? x : y), b = static_cast<Elem>(side == 0 ? y : x);
                    if (!s.alive_at(s.next(q, s.code(a, b)), level)) continue;
                    emit(p, side, static_cast<Elem>(x), static_cast<Elem>(y), {});
                    break;
                }
        }
    }
}

Strategy pebble_positional(const PebbleSolver& s, const GameSpec& spec) {
    Strategy out{spec, {}};
    std::map<std::vector<Round>, bool> seen;
    std::deque<Slots> queue{Slots(static_cast<std::size_t>(s.n_))};
    seen[placement(queue.front())] = true;
    while (!queue.empty()) {
        Slots slots = queue.front();
        queue.pop_front();
        const auto pos = placement(slots);
        pebble_answers(s, slots, PebbleSolver::kAlive - 1,
                       [&](int p, int side, Elem x, Elem y, const std::vector<Elem>& f) {
                           out.entries.push_back({pos, {side, p, x}, y, f});
                           Slots nxt = slots;
                           nxt[static_cast<std::size_t>(p - 1)] = side == 0 ? std::pair{x, y} : std::pair{y, x};
                           auto np = placement(nxt);
                           if (!seen.count(np)) {
                               seen[np] = true;
                               queue.push_back(nxt);
                           }
                       });
    }
    return out;
}

void pebble_history(const PebbleSolver& s, std::vector<Round>& history, const Slots& slots, int r, Strategy& out) {
    if (r == 0) return;
    pebble_answers(s, slots, r - 1, [&](int p, int side, Elem x, Elem y, const std::vector<Elem>& f) {
        out.entries.push_back({history, {side, p, x}, y, f});
        Elem a = side == 0 ? x : y, b = side == 0 ? y : x;
        Slots nxt = slots;
        nxt[static_cast<std::size_t>(p - 1)] = std::pair{a, b};
        history.push_back({side, p, a, b});
        pebble_history(s, history, nxt, r - 1, out);
        history.pop_back();
    });
}

// ---------------------------------------------------------------- bisimulation games

struct ModalFrame {
    std::vector<std::size_t> props;                         // unary relation indices
    std::vector<std::size_t> rels;                          // binary relation indices
    std::vector<std::vector<std::vector<Elem>>> succ_a, succ_b;  // [rel][state] -> successors
};

ModalFrame modal_frame(const Structure& a, const Structure& b) {
    ModalFrame f;
    const Signature& sig = a.signature();
    for (std::size_t r = 0; r < sig.size(); ++r) {
        if (sig[r].arity == 1) f.props.push_back(r);
        else if (sig[r].arity == 2) f.rels.push_back(r);
        else throw InputError("bisimulation games need unary and binary relations only");
    }
    auto succ = [&](const Structure& s, std::size_t r) {
        std::vector<std::vector<Elem>> out(s.size());
        for (const auto& t : s.relation(r).tuples()) out[static_cast<std::size_t>(t[0])].push_back(t[1]);
        return out;
    };
    for (auto r : f.rels) {
        f.succ_a.push_back(succ(a, r));
        f.succ_b.push_back(succ(b, r));
    }
    return f;
}

class BisimSolver {
public:
    BisimSolver(const Structure& a, const Structure& b, Variant v, int k) : a_(a), b_(b), v_(v), f_(modal_frame(a, b)) {
        win_.assign(static_cast<std::size_t>(k) + 1, std::vector<std::vector<char>>(a.size(), std::vector<char>(b.size(), 0)));
        for (std::size_t x = 0; x < a.size(); ++x)
            for (std::size_t y = 0; y < b.size(); ++y) win_[0][x][y] = atoms_ok(static_cast<Elem>(x), static_cast<Elem>(y));
        for (int r = 1; r <= k; ++r)
            for (std::size_t x = 0; x < a.size(); ++x)
                for (std::size_t y = 0; y < b.size(); ++y)
                    win_[static_cast<std::size_t>(r)][x][y] =
                        win_[0][x][y] && moves_ok(static_cast<Elem>(x), static_cast<Elem>(y), r);
    }

    bool atoms_ok(Elem x, Elem y) const {
        for (auto p : f_.props) {
            bool ha = a_.holds(p, Tuple{x}), hb = b_.holds(p, Tuple{y});
            if (ha && !hb) return false;
            if (iso_condition(v_) && hb && !ha) return false;
        }
        return true;
    }

    std::vector<std::vector<char>> board(std::size_t rel, Elem x, Elem y, int r) const {
        const auto& sa = f_.succ_a[rel][static_cast<std::size_t>(x)];
        const auto& sb = f_.succ_b[rel][static_cast<std::size_t>(y)];
        std::vector<std::vector<char>> ok(sa.size(), std::vector<char>(sb.size(), 0));
        for (std::size_t i = 0; i < sa.size(); ++i)
            for (std::size_t j = 0; j < sb.size(); ++j) ok[i][j] = win(sa[i], sb[j], r - 1);
        return ok;
    }

    bool moves_ok(Elem x, Elem y, int r) const {
        for (std::size_t rel = 0; rel < f_.rels.size(); ++rel) {
            const auto& sa = f_.succ_a[rel][static_cast<std::size_t>(x)];
            const auto& sb = f_.succ_b[rel][static_cast<std::size_t>(y)];
            if (v_ == Variant::Bijective) {
                if (sa.size() != sb.size() || !has_perfect_matching(board(rel, x, y, r), sb.size())) return false;
                continue;
            }
            for (auto xa : sa)
                if (std::none_of(sb.begin(), sb.end(), [&](Elem yb) { return win(xa, yb, r - 1); })) return false;
            if (two_sided(v_))
                for (auto yb : sb)
                    if (std::none_of(sa.begin(), sa.end(), [&](Elem xa) { return win(xa, yb, r - 1); })) return false;
        }
        return true;
    }

    bool win(Elem x, Elem y, int r) const {
        return win_[static_cast<std::size_t>(r)][static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
    }

    void extract(std::vector<Round>& history, Elem x, Elem y, int r, Strategy& out) const {
        if (r == 0) return;
        for (std::size_t rel = 0; rel < f_.rels.size(); ++rel) {
            const auto& sa = f_.succ_a[rel][static_cast<std::size_t>(x)];
            const auto& sb = f_.succ_b[rel][static_cast<std::size_t>(y)];
            const int label = static_cast<int>(f_.rels[rel]);
            if (v_ == Variant::Bijective) {
                auto m = least_matching(board(rel, x, y, r), sb.size());
                std::vector<Elem> bij(a_.size(), -1);
                for (std::size_t i = 0; i < sa.size(); ++i) bij[static_cast<std::size_t>(sa[i])] = sb[static_cast<std::size_t>(m[i])];
                for (std::size_t i = 0; i < sa.size(); ++i) {
                    Elem yb = sb[static_cast<std::size_t>(m[i])];
                    out.entries.push_back({history, {0, label, sa[i]}, yb, bij});
                    history.push_back({0, label, sa[i], yb});
                    extract(history, sa[i], yb, r - 1, out);
                    history.pop_back();
                }
                continue;
            }
            for (int side = 0; side < (two_sided(v_) ? 2 : 1); ++side) {
                const auto& sx = side == 0 ? sa : sb;
                const auto& sy = side == 0 ? sb : sa;
                for (auto u : sx)
                    for (auto w : sy) {
                        Elem na = side == 0 ? u : w, nb = side == 0 ? w : u;
                        if (!win(na, nb, r - 1)) continue;
                        out.entries.push_back({history, {side, label, u}, w, {}});
                        history.push_back({side, label, na, nb});
                        extract(history, na, nb, r - 1, out);
                        history.pop_back();
                        break;
                    }
            }
        }
    }

private:
    const Structure& a_;
    const Structure& b_;
    Variant v_;
    ModalFrame f_;
    std::vector<std::vector<std::vector<char>>> win_;
};

}  // namespace

// ---------------------------------------------------------------- solve

GameResult solve(const Structure& a0, const Structure& b0, const GameSpec& spec, bool want_strategy,
                 std::optional<Elem> pa, std::optional<Elem> pb) {
    require_same_signature(a0, b0);
    if (spec.k < 0 || spec.n < 0) throw InputError("game resources must be non-negative");
    GameResult res;
    if (spec.family == GameFamily::Bisim) {
        if (!pa || !pb) throw InputError("bisimulation games need pointed structures");
        PointedStructure check_a(a0, *pa), check_b(b0, *pb);  // validates modal signature and points
        BisimSolver s(a0, b0, spec.variant, spec.k);
        res.positions_explored = a0.size() * b0.size() * (static_cast<std::size_t>(spec.k) + 1);
        res.winner = s.win(*pa, *pb, spec.k) ? Player::Duplicator : Player::Spoiler;
        if (want_strategy && res.duplicator_wins()) {
            Strategy st{spec, {}};
            std::vector<Round> h;
            s.extract(h, *pa, *pb, spec.k, st);
            res.strategy = std::move(st);
        }
        return res;
    }
    const Structure a = spec.equality ? i_expand(a0) : a0;
    const Structure b = spec.equality ? i_expand(b0) : b0;
    if (spec.variant == Variant::Bijective && a.size() != b.size()) {
        res.winner = Player::Spoiler;
        if (spec.family != GameFamily::EF) res.spoiler_round = 0;
        return res;
    }
    if (spec.family == GameFamily::EF) {
        EfSolver s(a, b, spec.variant);
        bool w = s.win({}, spec.k);
        res.winner = w ? Player::Duplicator : Player::Spoiler;
        if (want_strategy && w) {
            Strategy st{spec, {}};
            std::vector<Round> h;
            ef_extract(s, h, {}, spec.k, st);
            res.strategy = std::move(st);
        }
        res.positions_explored = s.explored();
        return res;
    }
    if (spec.n < 1) throw InputError("pebble games need at least one pebble");
    PebbleSolver s(a, b, spec.variant, spec.n);
    const int limit = spec.family == GameFamily::Pebble ? std::numeric_limits<int>::max() - 2 : spec.k;
    s.run(limit);
    res.positions_explored = s.size();
    res.stabilization_round = s.stabilized();
    const int d = s.death(s.index_of({}));
    res.spoiler_round = d == PebbleSolver::kAlive ? -1 : d;
    const bool w = spec.family == GameFamily::Pebble ? d == PebbleSolver::kAlive : d > spec.k;
    res.winner = w ? Player::Duplicator : Player::Spoiler;
    if (want_strategy && w) {
        if (spec.family == GameFamily::Pebble) {
            res.strategy = pebble_positional(s, spec);
        } else {
            Strategy st{spec, {}};
            std::vector<Round> h;
            pebble_history(s, h, Slots(static_cast<std::size_t>(spec.n)), spec.k, st);
            res.strategy = std::move(st);
        }
    }
    return res;
}

GameResult solve(const PointedStructure& a, const PointedStructure& b, const GameSpec& spec, bool want_strategy) {
    return solve(a.structure, b.structure, spec, want_strategy, a.point, b.point);
}

// ---------------------------------------------------------------- replay verification

namespace {

std::string entry_key(const std::vector<Round>& pos, const SpoilerMove& m) {
    std::string k;
    for (const auto& r : pos)
        k += std::to_string(r.side) + "," + std::to_string(r.label) + "," + std::to_string(r.a) + "," +
             std::to_string(r.b) + ";";
    return k + "|" + std::to_string(m.side) + "," + std::to_string(m.label) + "," + std::to_string(m.elem);
}

std::string describe(const std::vector<Round>& pos, const SpoilerMove& m) {
    std::string s = "after [";
    for (std::size_t i = 0; i < pos.size(); ++i)
        s += (i ? " " : "") + std::to_string(pos[i].a) + "/" + std::to_string(pos[i].b);
    return s + "] Spoiler plays " + std::to_string(m.elem) + " on side " + std::to_string(m.side);
}

class Replayer {
public:
    Replayer(const Structure& a, const Structure& b, const Strategy& s) : a_(a), b_(b), s_(s) {
        for (std::size_t i = 0; i < s.entries.size(); ++i) index_[entry_key(s.entries[i].position, s.entries[i].move)] = i;
    }

    // Duplicator's answer to m at pos, with bijection consistency; nullptr after recording a violation.
    const StrategyEntry* answer(const std::vector<Round>& pos, const SpoilerMove& m, std::size_t other_size) {
        auto it = index_.find(entry_key(pos, m));
        if (it == index_.end()) {
            fail(describe(pos, m) + ": no answer in the strategy");
            return nullptr;
        }
        const auto& e = s_.entries[it->second];
        if (e.response < 0 || static_cast<std::size_t>(e.response) >= other_size) {
            fail(describe(pos, m) + ": answer out of range");
            return nullptr;
        }
        if (s_.spec.variant == Variant::Bijective) {
            if (e.bijection.size() <= static_cast<std::size_t>(m.elem) || e.bijection[static_cast<std::size_t>(m.elem)] != e.response) {
                fail(describe(pos, m) + ": answer disagrees with the committed bijection");
                return nullptr;
            }
            std::string bk = entry_key(pos, {0, m.label, 0});
            auto [jt, fresh] = bijections_.emplace(bk, e.bijection);
            if (!fresh && jt->second != e.bijection) {
                fail(describe(pos, m) + ": bijection depends on Spoiler's element");
                return nullptr;
            }
            std::vector<char> hit(other_size + 1, 0);
            for (Elem y : e.bijection) {
                if (y < 0) continue;
                if (static_cast<std::size_t>(y) >= other_size || hit[static_cast<std::size_t>(y)]) {
                    fail(describe(pos, m) + ": committed map is not injective");
                    return nullptr;
                }
                hit[static_cast<std::size_t>(y)] = 1;
            }
        }
        return &e;
    }

    void fail(const std::string& msg) {
        if (violations.size() < 20) violations.push_back(msg);
    }

    std::vector<std::string> violations;

private:
    const Structure& a_;
    const Structure& b_;
    const Strategy& s_;
    std::unordered_map<std::string, std::size_t> index_;
    std::unordered_map<std::string, std::vector<Elem>> bijections_;
};

}  // namespace

std::vector<std::string> verify_strategy(const Structure& a0, const Structure& b0, const Strategy& s,
                                         std::optional<Elem> pa, std::optional<Elem> pb) {
    require_same_signature(a0, b0);
    const GameSpec& spec = s.spec;
    const Variant v = spec.variant;
    const bool eq = spec.equality && spec.family != GameFamily::Bisim;
    const Structure a = eq ? i_expand(a0) : a0;
    const Structure b = eq ? i_expand(b0) : b0;
    Replayer rp(a, b, s);
    if (v == Variant::Bijective && a.size() != b.size()) {
        rp.fail("bijective game on structures of different sizes");
        return rp.violations;
    }
    const int sides = two_sided(v) ? 2 : 1;
    PairCheck check(a, b, iso_condition(v));

    if (spec.family == GameFamily::Bisim) {
        if (!pa || !pb) throw InputError("bisimulation strategies need pointed structures");
        auto frame = modal_frame(a, b);
        BisimSolver atoms(a, b, v, 0);
        if (!atoms.atoms_ok(*pa, *pb)) rp.fail("initial states disagree on propositions");
        std::vector<Round> hist;
        std::function<void(Elem, Elem, int)> go = [&](Elem x, Elem y, int r) {
            if (r == 0 || rp.violations.size() >= 20) return;
            for (std::size_t rel = 0; rel < frame.rels.size(); ++rel) {
                const int label = static_cast<int>(frame.rels[rel]);
                for (int side = 0; side < sides; ++side) {
                    const auto& sx = side == 0 ? frame.succ_a[rel][static_cast<std::size_t>(x)] : frame.succ_b[rel][static_cast<std::size_t>(y)];
                    const auto& sy = side == 0 ? frame.succ_b[rel][static_cast<std::size_t>(y)] : frame.succ_a[rel][static_cast<std::size_t>(x)];
                    for (auto u : sx) {
                        SpoilerMove m{side, label, u};
                        auto e = rp.answer(hist, m, side == 0 ? b.size() : a.size());
                        if (!e) continue;
                        if (std::find(sy.begin(), sy.end(), e->response) == sy.end()) {
                            rp.fail(describe(hist, m) + ": answer is not a successor");
                            continue;
                        }
                        Elem na = side == 0 ? u : e->response, nb = side == 0 ? e->response : u;
                        if (!atoms.atoms_ok(na, nb)) {
                            rp.fail(describe(hist, m) + ": propositions disagree");
                            continue;
                        }
                        hist.push_back({side, label, na, nb});
                        go(na, nb, r - 1);
                        hist.pop_back();
                    }
                }
                if (v == Variant::Bijective &&
                    frame.succ_a[rel][static_cast<std::size_t>(x)].size() != frame.succ_b[rel][static_cast<std::size_t>(y)].size())
                    rp.fail("successor counts differ under a bijective strategy");
            }
        };
        go(*pa, *pb, spec.k);
        return rp.violations;
    }

    const bool pebbled = spec.family != GameFamily::EF;
    const int labels_from = pebbled ? 1 : 0, labels_to = pebbled ? spec.n : 0;
    auto pairs_of = [](const Slots& slots) {
        Pairs p;
        for (const auto& x : slots)
            if (x) p.push_back(*x);
        return p;
    };

    if (spec.family == GameFamily::Pebble) {
        std::map<std::vector<Round>, bool> seen;
        std::deque<Slots> queue{Slots(static_cast<std::size_t>(spec.n))};
        seen[placement(queue.front())] = true;
        while (!queue.empty() && rp.violations.empty()) {
            Slots slots = queue.front();
            queue.pop_front();
            const auto pos = placement(slots);
            for (int p = 1; p <= spec.n; ++p)
                for (int side = 0; side < sides; ++side) {
                    const std::size_t xs = side == 0 ? a.size() : b.size();
                    for (std::size_t x = 0; x < xs; ++x) {
                        SpoilerMove m{side, p, static_cast<Elem>(x)};
                        auto e = rp.answer(pos, m, side == 0 ? b.size() : a.size());
                        if (!e) continue;
                        Slots nxt = slots;
                        nxt[static_cast<std::size_t>(p - 1)] =
                            side == 0 ? std::pair{static_cast<Elem>(x), e->response} : std::pair{e->response, static_cast<Elem>(x)};
                        if (!check.consistent(pairs_of(nxt))) {
                            rp.fail(describe(pos, m) + ": position leaves the winning relation");
                            continue;
                        }
                        auto np = placement(nxt);
                        if (!seen.count(np)) {
                            seen[np] = true;
                            queue.push_back(nxt);
                        }
                    }
                }
        }
        return rp.violations;
    }

    std::vector<Round> hist;
    std::function<void(const Slots&, int)> go = [&](const Slots& slots, int r) {
        if (r == 0 || rp.violations.size() >= 20) return;
        for (int p = labels_from; p <= labels_to; ++p)
            for (int side = 0; side < sides; ++side) {
                const std::size_t xs = side == 0 ? a.size() : b.size();
                for (std::size_t x = 0; x < xs; ++x) {
                    SpoilerMove m{side, p, static_cast<Elem>(x)};
                    auto e = rp.answer(hist, m, side == 0 ? b.size() : a.size());
                    if (!e) continue;
                    Elem na = side == 0 ? static_cast<Elem>(x) : e->response;
                    Elem nb = side == 0 ? e->response : static_cast<Elem>(x);
                    Slots nxt = slots;
                    if (pebbled)
                        nxt[static_cast<std::size_t>(p - 1)] = std::pair{na, nb};
                    else
                        nxt.push_back(std::pair{na, nb});
                    if (!check.consistent(pairs_of(nxt))) {
                        rp.fail(describe(hist, m) + ": position leaves the winning relation");
                        continue;
                    }
                    hist.push_back({side, p, na, nb});
                    go(nxt, r - 1);
                    hist.pop_back();
                }
            }
    };
    go(Slots(pebbled ? static_cast<std::size_t>(spec.n) : 0), spec.k);
    return rp.violations;
}

// ---------------------------------------------------------------- strategies and Kleisli arrows

Map strategy_to_kleisli(const Strategy& s, const ComonadStructure& g) {
    const auto& spec = s.spec;
    const bool ef = spec.family == GameFamily::EF && g.flavour().kind == ComonadKind::EF;
    const bool pr = spec.family == GameFamily::PebbleRounds && g.flavour().kind == ComonadKind::Pebble;
    if (!ef && !pr) throw InputError("strategy and comonad do not match (EF with E_k, PebbleRounds with P_{n,k})");
    if (spec.variant != Variant::ExistentialPositive) throw InputError("only existential-positive strategies are Kleisli arrows");
    if (g.flavour().k > spec.k || (pr && g.flavour().n != spec.n))
        throw InputError("comonad resources exceed the strategy's game");
    std::unordered_map<std::string, Elem> table;
    for (const auto& e : s.entries) table[entry_key(e.position, e.move)] = e.response;
    Map f(g.size(), -1);
    std::vector<std::vector<Round>> hist(g.size());
    for (std::size_t t = 0; t < g.size(); ++t) {
        const Elem sid = static_cast<Elem>(t);
        const Elem par = g.parent(sid);
        std::vector<Round> pos = par >= 0 ? hist[static_cast<std::size_t>(par)] : std::vector<Round>{};
        SpoilerMove m{0, g.last_tag(sid), g.last(sid)};
        auto it = table.find(entry_key(pos, m));
        if (it == table.end()) throw InputError("strategy has no answer for play " + g.play_name(g.play(sid)));
        f[t] = it->second;
        pos.push_back({0, m.label, m.elem, it->second});
        hist[t] = std::move(pos);
    }
    return f;
}

Strategy kleisli_to_strategy(const ComonadStructure& g, const Structure& b, const Map& f, bool equality) {
    if (g.flavour().kind == ComonadKind::Modal) throw InputError("modal Kleisli arrows are not EF or pebble strategies");
    if (f.size() != g.size() || !is_kleisli_arrow(g, b, f)) throw InputError("map is not a Kleisli arrow");
    if (equality && !is_i_morphism(g, f)) throw InputError("Kleisli arrow is not an I-morphism");
    Strategy s;
    const auto& fl = g.flavour();
    s.spec = fl.kind == ComonadKind::EF ? GameSpec::ef(fl.k, Variant::ExistentialPositive, equality)
                                        : GameSpec::pebble_rounds(fl.n, fl.k, Variant::ExistentialPositive, equality);
    std::vector<std::vector<Round>> hist(g.size());
    for (std::size_t t = 0; t < g.size(); ++t) {
        const Elem sid = static_cast<Elem>(t);
        const Elem par = g.parent(sid);
        std::vector<Round> pos = par >= 0 ? hist[static_cast<std::size_t>(par)] : std::vector<Round>{};
        SpoilerMove m{0, g.last_tag(sid), g.last(sid)};
        s.entries.push_back({pos, m, f[t], {}});
        pos.push_back({0, m.label, m.elem, f[t]});
        hist[t] = std::move(pos);
    }
    return s;
}

std::optional<Map> find_kleisli_arrow(const ComonadStructure& g, const Structure& b) {
    const Structure& c = g.carrier();
    if (!(c.signature() == b.signature())) throw InputError("carrier and codomain signatures differ");
    if (g.flavour().kind == ComonadKind::Modal) throw InputError("use a pointed search for modal carriers");
    // Each carrier tuple lies on a chain; check it when its deepest play is assigned.
    std::vector<std::vector<std::pair<std::size_t, const Tuple*>>> at(g.size());
    for (std::size_t r = 0; r < c.signature().size(); ++r)
        for (const auto& t : c.relation(r).tuples()) {
            Elem deep = t[0];
            for (Elem e : t)
                if (g.length(e) > g.length(deep)) deep = e;
            for (Elem e : t)
                if (!g.is_prefix(e, deep)) return find_hom(c, b);
            at[static_cast<std::size_t>(deep)].push_back({r, &t});
        }
    Map f(g.size(), -1);
    std::function<bool(Elem)> place = [&](Elem s) {
        for (std::size_t y = 0; y < b.size(); ++y) {
            f[static_cast<std::size_t>(s)] = static_cast<Elem>(y);
            bool ok = true;
            for (auto [r, t] : at[static_cast<std::size_t>(s)]) {
                Tuple img(t->size());
                for (std::size_t i = 0; i < t->size(); ++i) img[i] = f[static_cast<std::size_t>((*t)[i])];
                if (!b.holds(r, img)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            bool all = true;
            for (Elem ch : g.children(s))
                if (!place(ch)) {
                    all = false;
                    break;
                }
            if (all) return true;
        }
        f[static_cast<std::size_t>(s)] = -1;
        return false;
    };
    for (Elem r : g.roots())
        if (!place(r)) return std::nullopt;
    return f;
}

std::optional<KleisliIso> find_kleisli_iso(const Structure& a, const Structure& b, const Flavour& fl) {
    require_same_signature(a, b);
    if (fl.kind == ComonadKind::Modal) throw InputError("Kleisli isomorphisms are searched for E_k and P_{n,k}");
    const Structure ai = i_expand(a), bi = i_expand(b);
    auto ga = build_comonad(ai, std::nullopt, fl);
    auto gb = build_comonad(bi, std::nullopt, fl);
    if (ga.size() > 40 || gb.size() > 40) throw GuardError("Kleisli isomorphism search is limited to carriers of 40 plays");
    auto fs = find_homs(ga.carrier(), bi);
    auto gs = find_homs(gb.carrier(), ai);
    const Map ea = counit(ga), eb = counit(gb);
    for (const auto& f : fs)
        for (const auto& g : gs)
            if (kleisli_compose(ga, f, gb, g) == ea && kleisli_compose(gb, g, ga, f) == eb) return KleisliIso{f, g};
    return std::nullopt;
}

// ---------------------------------------------------------------- arboreal games

namespace {

struct PathView {
    const ForestStructure& x;
    const PathPoset& p;
    std::vector<std::vector<Elem>> chain;  // node -> elements root..node
    PathView(const ForestStructure& fs, const PathPoset& pp) : x(fs), p(pp), chain(pp.size()) {
        std::vector<int> order{pp.root};
        for (std::size_t i = 0; i < order.size(); ++i) {
            const int v = order[i];
            const auto uv = static_cast<std::size_t>(v);
            if (pp.parent[uv] >= 0) chain[uv] = chain[static_cast<std::size_t>(pp.parent[uv])];
            if (pp.elem[uv] >= 0) chain[uv].push_back(pp.elem[uv]);
            for (int c : pp.children[uv]) order.push_back(c);
        }
    }
    int label(int node) const {
        Elem e = p.elem[static_cast<std::size_t>(node)];
        return x.pebbles.empty() || e < 0 ? 0 : x.pebbles[static_cast<std::size_t>(e)];
    }
};

class ArborealSolver {
public:
    ArborealSolver(const PathView& x, const PathView& y, Variant v)
        : x_(x), y_(y), v_(v), check_(x.x.structure, y.x.structure, iso_condition(v)) {}

    // (m, n) are path nodes whose chains have equal length; `fits` checks the newest pair.
    bool fits(int m, int n) const {
        const auto& cm = x_.chain[static_cast<std::size_t>(m)];
        const auto& cn = y_.chain[static_cast<std::size_t>(n)];
        if (cm.size() != cn.size()) return false;
        if (cm.empty()) return true;
        if (x_.label(m) != y_.label(n)) return false;
        Pairs pairs;
        for (std::size_t i = 0; i + 1 < cm.size(); ++i) pairs.push_back({cm[i], cn[i]});
        return check_.extends(pairs, cm.back(), cn.back());
    }

    bool win(int m, int n) {
        const long long key = static_cast<long long>(m) * static_cast<long long>(y_.p.size()) + n;
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        bool ok = true;
        for (int mc : x_.p.children[static_cast<std::size_t>(m)]) {
            const auto& ch = y_.p.children[static_cast<std::size_t>(n)];
            if (std::none_of(ch.begin(), ch.end(), [&](int nc) { return fits(mc, nc) && win(mc, nc); })) {
                ok = false;
                break;
            }
        }
        if (ok && two_sided(v_))
            for (int nc : y_.p.children[static_cast<std::size_t>(n)]) {
                const auto& ch = x_.p.children[static_cast<std::size_t>(m)];
                if (std::none_of(ch.begin(), ch.end(), [&](int mc) { return fits(mc, nc) && win(mc, nc); })) {
                    ok = false;
                    break;
                }
            }
        memo_[key] = ok;
        return ok;
    }

    std::size_t explored() const { return memo_.size(); }

private:
    const PathView& x_;
    const PathView& y_;
    Variant v_;
    PairCheck check_;
    std::unordered_map<long long, bool> memo_;
};

void require_compatible(const ForestStructure& x, const ForestStructure& y) {
    require_same_signature(x.structure, y.structure);
    if (x.point.has_value() != y.point.has_value()) throw InputError("cannot compare a pointed tree with a forest");
}

}  // namespace

GameResult arboreal_game(const ForestStructure& x, const PathPoset& px, const ForestStructure& y, const PathPoset& py,
                         Variant variant) {
    require_compatible(x, y);
    if (variant == Variant::Bijective) throw InputError("the arboreal game has no bijective variant");
    PathView vx(x, px), vy(y, py);
    ArborealSolver s(vx, vy, variant);
    GameResult res;
    const bool w = s.fits(px.root, py.root) && s.win(px.root, py.root);
    res.winner = w ? Player::Duplicator : Player::Spoiler;
    res.positions_explored = s.explored();
    return res;
}

std::optional<Span> winning_span(const ForestStructure& x, const ForestStructure& y) {
    require_compatible(x, y);
    auto px = path_poset(x), py = path_poset(y);
    PathView vx(x, px), vy(y, py);
    ArborealSolver s(vx, vy, Variant::Full);
    if (!s.fits(px.root, py.root) || !s.win(px.root, py.root)) return std::nullopt;
    struct Node {
        int m, n, parent;
    };
    std::vector<Node> nodes{{px.root, py.root, -1}};
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        auto [m, n, par] = nodes[i];
        (void)par;
        for (int mc : px.children[static_cast<std::size_t>(m)])
            for (int nc : py.children[static_cast<std::size_t>(n)])
                if (s.fits(mc, nc) && s.win(mc, nc)) nodes.push_back({mc, nc, static_cast<int>(i)});
    }
    // Drop the formal root pair of forests; pointed trees keep the point pair.
    const std::size_t skip = x.point ? 0 : 1;
    std::vector<std::string> names;
    for (std::size_t i = skip; i < nodes.size(); ++i)
        names.push_back("(" + x.structure.name(px.elem[static_cast<std::size_t>(nodes[i].m)]) + "," +
                        y.structure.name(py.elem[static_cast<std::size_t>(nodes[i].n)]) + ")");
    Span sp;
    sp.w.structure = Structure(x.structure.signature(), names);
    sp.w.order.parent.assign(names.size(), -1);
    for (std::size_t i = skip; i < nodes.size(); ++i) {
        const int par = nodes[i].parent;
        sp.w.order.parent[i - skip] = par >= static_cast<int>(skip) ? par - static_cast<int>(skip) : -1;
        sp.left.push_back(px.elem[static_cast<std::size_t>(nodes[i].m)]);
        sp.right.push_back(py.elem[static_cast<std::size_t>(nodes[i].n)]);
    }
    if (!x.pebbles.empty())
        for (Elem e : sp.left) sp.w.pebbles.push_back(x.pebbles[static_cast<std::size_t>(e)]);
    if (x.point) sp.w.point = 0;
    // Relations: tuples along a chain of W whose left images hold in X.
    const Structure& X = x.structure;
    for (std::size_t w = 0; w < names.size(); ++w) {
        auto chain = down_chain(sp.w.order, static_cast<Elem>(w));
        const std::size_t m = chain.size();
        for (std::size_t r = 0; r < X.signature().size(); ++r) {
            const std::size_t ar = static_cast<std::size_t>(X.signature()[r].arity);
            std::vector<std::size_t> idx(ar, 0);
            Tuple tw(ar), tx(ar);
            while (true) {
                bool uses = false;
                for (std::size_t i = 0; i < ar; ++i) {
                    tw[i] = chain[idx[i]];
                    tx[i] = sp.left[static_cast<std::size_t>(tw[i])];
                    uses |= idx[i] + 1 == m;
                }
                if (uses && X.holds(r, tx)) sp.w.structure.add(r, tw);
                std::size_t i = 0;
                while (i < ar && ++idx[i] == m) idx[i++] = 0;
                if (i == ar) break;
            }
        }
    }
    return sp;
}

}  // namespace gckit
