#include "gckit/textio.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

namespace gckit {

namespace {

std::vector<std::string> tokens(std::string_view line) {
    if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
    std::vector<std::string> out;
    std::istringstream is{std::string(line)};
    for (std::string t; is >> t;) out.push_back(t);
    return out;
}

Symbol parse_symbol(const std::string& tok, const std::string& where) {
    auto slash = tok.find('/');
    if (slash == std::string::npos || slash == 0 || slash + 1 == tok.size())
        throw InputError(where + ": expected NAME/ARITY, got '" + tok + "'");
    int arity = 0;
    try {
        std::size_t used = 0;
        arity = std::stoi(tok.substr(slash + 1), &used);
        if (used != tok.size() - slash - 1) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
        throw InputError(where + ": bad arity in '" + tok + "'");
    }
    if (arity < 1 || arity > kMaxArity)
        throw InputError(where + ": arity of " + tok.substr(0, slash) + " must be in 1.." + std::to_string(kMaxArity));
    return {tok.substr(0, slash), arity};
}

}  // namespace

StructureFile parse_structure_file(std::string_view text, const std::string& source) {
    StructureFile f;
    bool have_sig = false;
    RawStructure* cur = nullptr;
    std::unordered_set<std::string> elems, names;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++lineno;
        auto tok = tokens(line);
        if (tok.empty()) continue;
        const std::string where = source + ":" + std::to_string(lineno);
        const std::string& kw = tok[0];
        if (kw == "signature") {
            if (have_sig) throw InputError(where + ": second signature line");
            std::vector<Symbol> syms;
            std::unordered_set<std::string> seen;
            for (std::size_t i = 1; i < tok.size(); ++i) {
                syms.push_back(parse_symbol(tok[i], where));
                if (!seen.insert(syms.back().name).second)
                    throw InputError(where + ": symbol " + syms.back().name + " declared twice");
            }
            f.signature = Signature(std::move(syms));
            have_sig = true;
            continue;
        }
        if (!have_sig) throw InputError(where + ": '" + kw + "' before the signature line");
        if (kw == "structure") {
            if (tok.size() != 2) throw InputError(where + ": expected 'structure NAME'");
            if (!names.insert(tok[1]).second) throw InputError(where + ": structure " + tok[1] + " defined twice");
            f.structures.push_back(RawStructure{tok[1], f.signature, {}, {}, {}});
            cur = &f.structures.back();
            elems.clear();
            continue;
        }
        if (!cur) throw InputError(where + ": '" + kw + "' outside a structure block");
        if (kw == "elems") {
            for (std::size_t i = 1; i < tok.size(); ++i) {
                if (!elems.insert(tok[i]).second) throw InputError(where + ": duplicate element " + tok[i]);
                cur->universe.push_back(tok[i]);
            }
        } else if (kw == "rel") {
            if (tok.size() < 2) throw InputError(where + ": expected 'rel NAME ELEM...'");
            auto r = f.signature.find(tok[1]);
            if (!r) throw InputError(where + ": unknown relation symbol " + tok[1]);
            std::vector<std::string> args(tok.begin() + 2, tok.end());
            if (static_cast<int>(args.size()) != f.signature[*r].arity)
                throw InputError(where + ": " + tok[1] + " expects " + std::to_string(f.signature[*r].arity) +
                                 " elements, got " + std::to_string(args.size()));
            for (const auto& a : args)
                if (!elems.count(a)) throw InputError(where + ": unknown element " + a);
            cur->tuples.emplace_back(tok[1], std::move(args));
        } else if (kw == "point") {
            if (tok.size() != 2) throw InputError(where + ": expected 'point ELEM'");
            if (cur->point) throw InputError(where + ": second point line");
            if (!f.signature.is_modal()) throw InputError(where + ": point needs a modal signature (arities 1 and 2)");
            if (!elems.count(tok[1])) throw InputError(where + ": unknown element " + tok[1]);
            cur->point = tok[1];
        } else {
            throw InputError(where + ": unknown keyword '" + kw + "'");
        }
    }
    if (!have_sig) throw InputError(source + ": missing signature line");
    if (f.structures.empty()) throw InputError(source + ": no structure blocks");
    return f;
}

std::string print_structure_file(const StructureFile& f) {
    std::ostringstream os;
    os << "signature";
    for (const auto& s : f.signature.symbols()) os << ' ' << s.name << '/' << s.arity;
    os << '\n';
    for (const auto& r : f.structures) {
        os << "structure " << r.name << "\nelems";
        for (const auto& e : r.universe) os << ' ' << e;
        os << '\n';
        for (const auto& [rel, args] : r.tuples) {
            os << "rel " << rel;
            for (const auto& a : args) os << ' ' << a;
            os << '\n';
        }
        if (r.point) os << "point " << *r.point << '\n';
    }
    return os.str();
}

std::string print_structure(const Structure& s, const std::string& name, std::optional<Elem> point) {
    return print_structure_file({s.signature(), {to_raw(s, name, point)}});
}

StructureFile read_structure_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_structure_file(ss.str(), path);
}

LoadedStructure select_structure(const StructureFile& f, const std::string& name, const std::string& source) {
    const RawStructure* pick = nullptr;
    if (name.empty()) {
        if (f.structures.size() != 1)
            throw InputError(source + " holds " + std::to_string(f.structures.size()) +
                             " structures; select one with FILE:NAME");
        pick = &f.structures.front();
    } else {
        for (const auto& r : f.structures)
            if (r.name == name) pick = &r;
        if (!pick) throw InputError(source + ": no structure named " + name);
    }
    LoadedStructure out{pick->name, build(*pick), {}};
    if (pick->point) out.point = out.structure.at(*pick->point);
    return out;
}

LoadedStructure load_structure(const std::string& spec) {
    std::string path = spec, name;
    if (auto c = spec.rfind(':'); c != std::string::npos && c + 1 < spec.size() && spec.find('/', c) == std::string::npos) {
        std::ifstream probe(spec);
        if (!probe) {
            path = spec.substr(0, c);
            name = spec.substr(c + 1);
        }
    }
    return select_structure(read_structure_file(path), name, path);
}

}  // namespace gckit
