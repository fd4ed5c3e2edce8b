// Small random structures for property tests.
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gckit/structure.hpp"

namespace gen {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    int below(int n) { return n <= 0 ? 0 : static_cast<int>(eng_() % static_cast<std::uint64_t>(n)); }
    bool chance(double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(eng_) < p; }
    std::uint64_t next() { return eng_(); }

private:
    std::mt19937_64 eng_;
};

inline gckit::Structure random_structure(Rng& rng, const gckit::Signature& sig, int size, double density) {
    std::vector<std::string> u;
    for (int i = 0; i < size; ++i) u.push_back(gckit::element_label(i));
    gckit::Structure s(sig, u);
    for (std::size_t r = 0; r < sig.size(); ++r) {
        std::size_t total = 1;
        for (int i = 0; i < sig[r].arity; ++i) total *= static_cast<std::size_t>(size);
        for (std::size_t c = 0; c < total; ++c) {
            if (!rng.chance(density)) continue;
            gckit::Tuple t(static_cast<std::size_t>(sig[r].arity));
            std::size_t x = c;
            for (int i = sig[r].arity - 1; i >= 0; --i) {
                t[static_cast<std::size_t>(i)] = static_cast<gckit::Elem>(x % static_cast<std::size_t>(size));
                x /= static_cast<std::size_t>(size);
            }
            s.add(r, t);
        }
    }
    return s;
}

inline gckit::Structure random_graph(Rng& rng, int size, double density) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < size; ++i)
        for (int j = i + 1; j < size; ++j)
            if (rng.chance(density)) e.emplace_back(i, j);
    return gckit::make_graph(size, e);
}

// Same structure with its universe listed in a random order.
inline gckit::Structure shuffled(Rng& rng, const gckit::Structure& s) {
    std::vector<gckit::Elem> perm(s.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<gckit::Elem>(i);
    for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[static_cast<std::size_t>(rng.below(static_cast<int>(i)))]);
    std::vector<std::string> u(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) u[static_cast<std::size_t>(perm[i])] = s.name(static_cast<gckit::Elem>(i));
    gckit::Structure out(s.signature(), u);
    for (std::size_t r = 0; r < s.signature().size(); ++r)
        for (const auto& t : s.relation(r).tuples()) {
            gckit::Tuple nt;
            for (auto e : t) nt.push_back(perm[static_cast<std::size_t>(e)]);
            out.add(r, nt);
        }
    return out;
}

}  // namespace gen
