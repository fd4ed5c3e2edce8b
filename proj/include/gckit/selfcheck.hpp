#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gckit {

struct SweepResult {
    std::string name;
    std::size_t checked = 0;
    std::size_t failed = 0;
    std::vector<std::string> examples;  // first few failures
    double elapsed_ms = 0;
};

struct SelfCheckReport {
    int size = 0;
    std::uint64_t seed = 0;
    std::vector<SweepResult> sweeps;
    bool ok() const;
};

// Cross-module agreement sweeps over every structure of at most `size` elements (1..3).
SelfCheckReport selfcheck(int size, std::uint64_t seed);

}  // namespace gckit
