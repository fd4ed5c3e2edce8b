#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gckit/structure.hpp"

namespace gckit {

// Text format:
//   signature E/2 P/1
//   structure A
//   elems a b c
//   rel E a b
//   point a          (modal signatures only)
// `#` starts a comment. Several structures may share one signature line.
struct StructureFile {
    Signature signature;
    std::vector<RawStructure> structures;
};

StructureFile parse_structure_file(std::string_view text, const std::string& source = "<input>");
std::string print_structure_file(const StructureFile& f);
std::string print_structure(const Structure& s, const std::string& name = "A", std::optional<Elem> point = {});

StructureFile read_structure_file(const std::string& path);

struct LoadedStructure {
    std::string name;
    Structure structure;
    std::optional<Elem> point;
};

// "file" or "file:Name"; a bare file must hold exactly one structure.
LoadedStructure load_structure(const std::string& spec);
LoadedStructure select_structure(const StructureFile& f, const std::string& name, const std::string& source);

}  // namespace gckit
