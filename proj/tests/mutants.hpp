// Deliberately broken coextensions; the comonad-law checker must reject each one.
#pragma once

#include <string>

#include "gckit/comonad.hpp"

namespace mutants {

inline constexpr int kCount = 50;

inline std::string describe(int m) {
    static const char* kinds[] = {"shifted prefixes", "constant last move", "ignores the arrow", "swapped first moves",
                                  "one play redirected"};
    return std::string(kinds[m % 5]) + " #" + std::to_string(m / 5);
}

// Rebuilds a play from its moves, falling back to the correct image when the
// corrupted play is not in the codomain carrier.
inline gckit::Elem lookup(const gckit::ComonadStructure& cod, const gckit::Play& p, gckit::Elem fallback) {
    auto id = cod.find(p);
    return id ? *id : fallback;
}

inline gckit::Coextender make(int m) {
    return [m](const gckit::ComonadStructure& dom, const gckit::Map& f, const gckit::ComonadStructure& cod) {
        using namespace gckit;
        Map good = coextend(dom, f, cod);
        Map out = good;
        const int kind = m % 5;
        const int variant = m / 5;
        for (std::size_t s = 0; s < dom.size(); ++s) {
            const Elem sid = static_cast<Elem>(s);
            Play img = cod.play(good[s]);
            auto ch = dom.chain(sid);
            switch (kind) {
                case 0: {
                    const std::size_t shift = 1 + static_cast<std::size_t>(variant % 3);
                    for (std::size_t i = 0; i < img.size(); ++i)
                        img[i].elem = f[static_cast<std::size_t>(ch[std::min(i + shift, ch.size() - 1)])];
                    break;
                }
                case 1:
                    for (auto& mv : img) mv.elem = f[s];
                    break;
                case 2:
                    if (dom.length(sid) >= 1 + static_cast<std::size_t>(variant % 2)) img = dom.play(sid);
                    break;
                case 3:
                    if (img.size() >= 2) std::swap(img[0].elem, img[1].elem);
                    break;
                case 4: {
                    if (s % dom.size() == static_cast<std::size_t>(variant) % dom.size() ||
                        s % 7 == static_cast<std::size_t>(variant % 7)) {
                        Elem other = static_cast<Elem>((good[s] + 1 + variant) % static_cast<int>(cod.size()));
                        out[s] = other;
                        continue;
                    }
                    break;
                }
            }
            out[s] = lookup(cod, img, good[s]);
        }
        return out;
    };
}

}  // namespace mutants
