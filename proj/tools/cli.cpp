#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gckit/coalgebra.hpp"
#include "gckit/comonad.hpp"
#include "gckit/counting.hpp"
#include "gckit/games.hpp"
#include "gckit/logic.hpp"
#include "gckit/selfcheck.hpp"
#include "gckit/textio.hpp"

namespace gckit::cli {

using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInput = 2;

struct Common {
    bool no_timing = false;
    bool strict = false;
};

struct Envelope {
    json doc;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    std::size_t positions = 0;

    explicit Envelope(const std::string& command) {
        doc["command"] = command;
        doc["inputs"] = json::object();
        doc["result"] = nullptr;
    }
    void finish(std::ostream& out, bool no_timing) {
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        json stats;
        stats["positions_explored"] = positions;
        stats["elapsed_ms"] = no_timing ? 0.0 : std::round(ms * 1000.0) / 1000.0;
        doc["stats"] = stats;
        out << doc.dump(2) << '\n';
    }
};

// ---------------------------------------------------------------- fragments and games

struct FamilyArg {
    FragmentFamily family = FragmentFamily::Rank;
    int resource = 0;
};

FamilyArg parse_family(const std::vector<std::string>& v) {
    if (v.size() != 2) throw InputError("--family expects two values: rank K | vars N | modal K");
    FamilyArg f;
    if (v[0] == "rank") f.family = FragmentFamily::Rank;
    else if (v[0] == "vars") f.family = FragmentFamily::Vars;
    else if (v[0] == "modal") f.family = FragmentFamily::Modal;
    else throw InputError("unknown family '" + v[0] + "' (rank | vars | modal)");
    try {
        std::size_t used = 0;
        f.resource = std::stoi(v[1], &used);
        if (used != v[1].size()) throw std::invalid_argument(v[1]);
    } catch (const std::exception&) {
        throw InputError("family resource must be an integer, got '" + v[1] + "'");
    }
    return f;
}

std::string family_name(FragmentFamily f) {
    switch (f) {
        case FragmentFamily::Rank: return "rank";
        case FragmentFamily::Vars: return "vars";
        case FragmentFamily::Modal: return "modal";
    }
    return "?";
}

struct Query {
    std::vector<std::string> family;
    std::string variant = "full";
    bool counting = false;
    bool no_equality = false;
    std::string a, b;
};

Fragment make_fragment(const Query& q) {
    auto fam = parse_family(q.family);
    Fragment fr;
    fr.family = fam.family;
    fr.resource = fam.resource;
    fr.polarity = parse_polarity(q.variant);
    fr.counting = q.counting;
    fr.equality = fam.family != FragmentFamily::Modal && !q.no_equality;
    validate_fragment(fr);
    return fr;
}

GameSpec game_for(const Fragment& fr) {
    Variant v = fr.counting ? Variant::Bijective : parse_variant(polarity_name(fr.polarity));
    switch (fr.family) {
        case FragmentFamily::Rank: return GameSpec::ef(fr.resource, v, fr.equality);
        case FragmentFamily::Vars: return GameSpec::pebble(fr.resource, v, fr.equality);
        case FragmentFamily::Modal: return GameSpec::bisim(fr.resource, v);
    }
    return {};
}

bool symmetric(const Fragment& fr) { return fr.counting || fr.polarity == Polarity::Full; }

json query_inputs(const Query& q, const Fragment& fr) {
    json in;
    in["A"] = q.a;
    in["B"] = q.b;
    in["family"] = family_name(fr.family);
    in["resource"] = fr.resource;
    in["variant"] = q.variant;
    in["counting"] = fr.counting;
    in["equality"] = fr.equality;
    return in;
}

PointedStructure pointed(const LoadedStructure& s, const std::string& spec) {
    if (!s.point) throw InputError(spec + ": modal queries need a 'point' line");
    return PointedStructure(s.structure, *s.point);
}

void same_signature(const Structure& a, const Structure& b) {
    if (!(a.signature() == b.signature()))
        throw InputError("signature mismatch: " + a.signature().to_string() + " vs " + b.signature().to_string());
}

// ---------------------------------------------------------------- strategy JSON

std::string family_tag(GameFamily f) {
    switch (f) {
        case GameFamily::EF: return "ef";
        case GameFamily::Pebble: return "pebble";
        case GameFamily::PebbleRounds: return "pebble-rounds";
        case GameFamily::Bisim: return "bisim";
    }
    return "?";
}

GameFamily parse_family_tag(const std::string& s) {
    if (s == "ef") return GameFamily::EF;
    if (s == "pebble") return GameFamily::Pebble;
    if (s == "pebble-rounds") return GameFamily::PebbleRounds;
    if (s == "bisim") return GameFamily::Bisim;
    throw InputError("unknown game family '" + s + "'");
}

const Structure& side_structure(int side, const Structure& a, const Structure& b) { return side == 0 ? a : b; }

json strategy_json(const Strategy& s, const Structure& a, const Structure& b) {
    json spec;
    spec["family"] = family_tag(s.spec.family);
    spec["k"] = s.spec.k;
    spec["n"] = s.spec.n;
    spec["variant"] = variant_name(s.spec.variant);
    spec["equality"] = s.spec.equality;
    json entries = json::array();
    for (const auto& e : s.entries) {
        json pos = json::array();
        for (const auto& r : e.position) pos.push_back(json::array({r.side, r.label, a.name(r.a), b.name(r.b)}));
        json row;
        row["position"] = pos;
        row["move"] = json::array({e.move.side, e.move.label, side_structure(e.move.side, a, b).name(e.move.elem)});
        row["response"] = side_structure(1 - e.move.side, a, b).name(e.response);
        if (!e.bijection.empty()) {
            json bij = json::object();
            for (std::size_t x = 0; x < e.bijection.size(); ++x)
                if (e.bijection[x] >= 0) bij[a.name(static_cast<Elem>(x))] = b.name(e.bijection[x]);
            row["bijection"] = bij;
        }
        entries.push_back(row);
    }
    json out;
    out["spec"] = spec;
    out["entries"] = entries;
    return out;
}

Strategy strategy_from_json(const json& j, const Structure& a, const Structure& b) {
    Strategy s;
    const auto& sp = j.at("spec");
    s.spec.family = parse_family_tag(sp.at("family").get<std::string>());
    s.spec.k = sp.at("k").get<int>();
    s.spec.n = sp.at("n").get<int>();
    s.spec.variant = parse_variant(sp.at("variant").get<std::string>());
    s.spec.equality = sp.at("equality").get<bool>();
    for (const auto& row : j.at("entries")) {
        StrategyEntry e;
        for (const auto& r : row.at("position"))
            e.position.push_back({r.at(0).get<int>(), r.at(1).get<int>(), a.at(r.at(2).get<std::string>()),
                                  b.at(r.at(3).get<std::string>())});
        const auto& m = row.at("move");
        e.move.side = m.at(0).get<int>();
        if (e.move.side != 0 && e.move.side != 1) throw InputError("strategy move side must be 0 or 1");
        e.move.label = m.at(1).get<int>();
        e.move.elem = side_structure(e.move.side, a, b).at(m.at(2).get<std::string>());
        e.response = side_structure(1 - e.move.side, a, b).at(row.at("response").get<std::string>());
        if (row.contains("bijection")) {
            e.bijection.assign(a.size(), -1);
            for (const auto& [x, y] : row.at("bijection").items())
                e.bijection[static_cast<std::size_t>(a.at(x))] = b.at(y.get<std::string>());
        }
        s.entries.push_back(std::move(e));
    }
    return s;
}

json forest_json(const Structure& a, const ForestOrder& order, const std::vector<int>* pebbles) {
    json parent = json::object();
    for (std::size_t x = 0; x < a.size(); ++x) {
        Elem p = order.parent[x];
        parent[a.name(static_cast<Elem>(x))] = p < 0 ? json(nullptr) : json(a.name(p));
    }
    json out;
    out["parent"] = parent;
    if (pebbles) {
        json peb = json::object();
        for (std::size_t x = 0; x < a.size(); ++x) peb[a.name(static_cast<Elem>(x))] = (*pebbles)[x];
        out["pebbles"] = peb;
    }
    return out;
}

ForestOrder forest_from_json(const json& j, const Structure& a, std::vector<int>* pebbles) {
    ForestOrder order{std::vector<Elem>(a.size(), -1)};
    std::vector<char> seen(a.size(), 0);
    for (const auto& [x, p] : j.at("parent").items()) {
        auto e = static_cast<std::size_t>(a.at(x));
        seen[e] = 1;
        order.parent[e] = p.is_null() ? -1 : a.at(p.get<std::string>());
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) throw InputError("forest witness misses elements");
    if (pebbles) {
        pebbles->assign(a.size(), 0);
        for (const auto& [x, p] : j.at("pebbles").items()) (*pebbles)[static_cast<std::size_t>(a.at(x))] = p.get<int>();
    }
    return order;
}

// ---------------------------------------------------------------- commands

int cmd_equiv(const Query& q, bool witness, bool certificate, const Common& c, std::ostream& out) {
    Envelope env("equiv");
    auto fr = make_fragment(q);
    env.doc["inputs"] = query_inputs(q, fr);
    auto la = load_structure(q.a), lb = load_structure(q.b);
    same_signature(la.structure, lb.structure);
    auto spec = game_for(fr);
    env.doc["inputs"]["game"] = spec.to_string();
    GameResult r;
    if (fr.family == FragmentFamily::Modal)
        r = solve(pointed(la, q.a), pointed(lb, q.b), spec, witness);
    else
        r = solve(la.structure, lb.structure, spec, witness);
    env.positions = r.positions_explored;
    const bool ok = r.duplicator_wins();
    env.doc["result"] = symmetric(fr) ? (ok ? "equivalent" : "not equivalent") : (ok ? "preserved" : "not preserved");
    env.doc["winner"] = player_name(r.winner);
    if (spec.family == GameFamily::Pebble) {
        env.doc["stabilization_round"] = r.stabilization_round;
        if (!ok) env.doc["spoiler_round"] = r.spoiler_round;
    }
    if (witness && r.strategy) env.doc["witness"] = strategy_json(*r.strategy, la.structure, lb.structure);
    if (certificate && !ok) {
        DistinguisherResult d = fr.family == FragmentFamily::Modal
                                    ? find_distinguisher(pointed(la, q.a), pointed(lb, q.b), fr)
                                    : find_distinguisher(la.structure, lb.structure, fr);
        if (d.found()) {
            json cert;
            cert["formula"] = d.to_string();
            cert["modal"] = d.modal.has_value();
            cert["true_in"] = "A";
            cert["complete"] = d.complete;
            env.doc["certificate"] = cert;
        }
    }
    env.finish(out, c.no_timing);
    return (c.strict && !ok) ? kExitNegative : kExitOk;
}

int cmd_distinguish(const Query& q, const Common& c, std::ostream& out) {
    Envelope env("oracle distinguish");
    auto fr = make_fragment(q);
    env.doc["inputs"] = query_inputs(q, fr);
    auto la = load_structure(q.a), lb = load_structure(q.b);
    same_signature(la.structure, lb.structure);
    DistinguisherResult d = fr.family == FragmentFamily::Modal
                                ? find_distinguisher(pointed(la, q.a), pointed(lb, q.b), fr)
                                : find_distinguisher(la.structure, lb.structure, fr);
    env.doc["result"] = d.found() ? "distinguished" : "not distinguished";
    env.doc["complete"] = d.complete;
    if (d.found()) {
        json cert;
        cert["formula"] = d.to_string();
        cert["modal"] = d.modal.has_value();
        cert["true_in"] = "A";
        cert["complete"] = d.complete;
        env.doc["certificate"] = cert;
    }
    env.finish(out, c.no_timing);
    return (c.strict && d.found()) ? kExitNegative : kExitOk;
}

int cmd_param(const std::string& which, const std::string& file, bool witness, const Common& c, std::ostream& out) {
    Envelope env("param");
    env.doc["inputs"]["parameter"] = which;
    env.doc["inputs"]["A"] = file;
    auto la = load_structure(file);
    if (which == "tree-depth") {
        auto r = tree_depth(la.structure);
        env.doc["result"] = r.depth;
        if (witness) env.doc["witness"] = forest_json(la.structure, r.cover, nullptr);
    } else if (which == "tree-width") {
        auto r = tree_width(la.structure);
        env.doc["result"] = r.width;
        env.doc["pebbles"] = r.pebbles;
        if (witness) env.doc["witness"] = forest_json(la.structure, r.cover, &r.pebbling);
    } else {
        throw InputError("unknown parameter '" + which + "' (tree-depth | tree-width)");
    }
    env.finish(out, c.no_timing);
    return kExitOk;
}

int to_int(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw InputError(what + " must be an integer, got '" + s + "'");
}

int cmd_comonad(const std::vector<std::string>& args, const std::string& out_path, const Common& c, std::ostream& out) {
    Envelope env("comonad");
    if (args.empty()) throw InputError("comonad expects: ef K A | pebble N K A | modal K A");
    const std::string& kind = args[0];
    std::size_t need = kind == "pebble" ? 4 : 3;
    if (kind != "ef" && kind != "pebble" && kind != "modal") throw InputError("unknown comonad '" + kind + "' (ef | pebble | modal)");
    if (args.size() != need) throw InputError("comonad " + kind + " expects " + std::to_string(need - 1) + " arguments");
    Flavour fl = kind == "ef"       ? Flavour::ef(to_int(args[1], "K"))
                 : kind == "modal" ? Flavour::modal(to_int(args[1], "K"))
                                   : Flavour::pebble(to_int(args[1], "N"), to_int(args[2], "K"));
    const std::string& file = args.back();
    env.doc["inputs"]["flavour"] = fl.to_string();
    env.doc["inputs"]["A"] = file;
    auto la = load_structure(file);
    std::optional<Elem> point;
    if (fl.kind == ComonadKind::Modal) point = pointed(la, file).point;
    auto g = build_comonad(la.structure, point, fl);
    std::optional<Elem> root;
    if (point) root = g.root();
    std::string text = print_structure(g.carrier(), la.name + "_" + kind, root);
    json res;
    res["carrier_size"] = g.size();
    res["tuples"] = g.carrier().tuple_count();
    res["carrier"] = text;
    env.doc["result"] = res;
    env.positions = g.size();
    if (!out_path.empty()) {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw InputError("cannot write " + out_path);
        f << text;
    }
    env.finish(out, c.no_timing);
    return kExitOk;
}

ClassSpec class_from(const std::vector<std::string>& v) {
    if (v.empty()) throw InputError("--class expects all | td K | tw N");
    if (v[0] == "all") {
        if (v.size() != 1) throw InputError("--class all takes no bound");
        return ClassSpec::all();
    }
    if (v.size() != 2) throw InputError("--class " + v[0] + " expects a bound");
    return parse_class(v[0], to_int(v[1], "class bound"));
}

int cmd_hom_count(const std::string& cf, const std::string& af, const Common& c, std::ostream& out) {
    Envelope env("hom-count");
    env.doc["inputs"]["C"] = cf;
    env.doc["inputs"]["A"] = af;
    auto lc = load_structure(cf), la = load_structure(af);
    same_signature(lc.structure, la.structure);
    env.doc["result"] = hom_count(lc.structure, la.structure);
    env.finish(out, c.no_timing);
    return kExitOk;
}

int cmd_hom_vector(const std::vector<std::string>& cls, int max_size, const std::string& af, const Common& c,
                   std::ostream& out) {
    Envelope env("hom-vector");
    auto spec = class_from(cls);
    env.doc["inputs"]["class"] = spec.to_string();
    env.doc["inputs"]["max_size"] = max_size;
    env.doc["inputs"]["A"] = af;
    auto la = load_structure(af);
    auto v = hom_vector(la.structure, spec, max_size);
    json arr = json::array();
    for (const auto& e : v.entries) arr.push_back(json{{"structure", e.structure}, {"count", e.count}});
    env.doc["result"] = arr;
    env.positions = v.entries.size();
    env.finish(out, c.no_timing);
    return kExitOk;
}

int cmd_lovasz(const std::vector<std::string>& cls, int max_size, const std::string& af, const std::string& bf,
               bool witness, const Common& c, std::ostream& out) {
    Envelope env("lovasz-compare");
    auto spec = class_from(cls);
    env.doc["inputs"]["class"] = spec.to_string();
    env.doc["inputs"]["max_size"] = max_size;
    env.doc["inputs"]["A"] = af;
    env.doc["inputs"]["B"] = bf;
    auto la = load_structure(af), lb = load_structure(bf);
    auto r = lovasz_compare(la.structure, lb.structure, spec, max_size);
    env.positions = r.compared;
    env.doc["result"] = r.agree ? "agree" : "differ";
    if (!r.agree && witness) {
        json w;
        w["structure"] = print_structure(*r.separator, "C");
        w["count_A"] = r.count_a;
        w["count_B"] = r.count_b;
        env.doc["witness"] = w;
    }
    env.finish(out, c.no_timing);
    return (c.strict && !r.agree) ? kExitNegative : kExitOk;
}

int cmd_selfcheck(int size, std::uint64_t seed, const Common& c, std::ostream& out) {
    Envelope env("selfcheck");
    env.doc["inputs"]["size"] = size;
    env.doc["inputs"]["seed"] = seed;
    auto rep = selfcheck(size, seed);
    json sweeps = json::array();
    for (const auto& s : rep.sweeps) {
        json j;
        j["name"] = s.name;
        j["checked"] = s.checked;
        j["failed"] = s.failed;
        if (!s.examples.empty()) j["examples"] = s.examples;
        j["elapsed_ms"] = c.no_timing ? 0.0 : std::round(s.elapsed_ms);
        sweeps.push_back(j);
        env.positions += s.checked;
    }
    env.doc["result"] = rep.ok() ? "pass" : "fail";
    env.doc["sweeps"] = sweeps;
    env.finish(out, c.no_timing);
    return rep.ok() ? kExitOk : kExitNegative;
}

// Re-validates the witness and certificate of an emitted envelope.
std::vector<std::string> check_envelope(const json& doc) {
    std::vector<std::string> bad;
    const std::string cmd = doc.at("command").get<std::string>();
    const json& in = doc.at("inputs");
    if (cmd == "equiv" || cmd == "oracle distinguish") {
        auto la = load_structure(in.at("A").get<std::string>()), lb = load_structure(in.at("B").get<std::string>());
        std::optional<Elem> pa, pb;
        if (in.at("family") == "modal") {
            pa = pointed(la, "A").point;
            pb = pointed(lb, "B").point;
        }
        if (doc.contains("witness")) {
            auto s = strategy_from_json(doc.at("witness"), la.structure, lb.structure);
            for (auto& v : verify_strategy(la.structure, lb.structure, s, pa, pb)) bad.push_back("strategy: " + v);
        }
        if (doc.contains("certificate")) {
            const auto& cert = doc.at("certificate");
            const std::string text = cert.at("formula").get<std::string>();
            bool ta = false, tb = true;
            if (cert.at("modal").get<bool>()) {
                auto f = parse_modal_formula(text);
                ta = eval(la.structure, *pa, f);
                tb = eval(lb.structure, *pb, f);
            } else {
                auto f = parse_formula(text);
                ta = eval(la.structure, f);
                tb = eval(lb.structure, f);
            }
            if (!ta || tb) bad.push_back("certificate does not separate A from B");
        }
    } else if (cmd == "param") {
        auto la = load_structure(in.at("A").get<std::string>());
        if (doc.contains("witness")) {
            const int value = doc.at("result").get<int>();
            if (in.at("parameter") == "tree-depth") {
                auto order = forest_from_json(doc.at("witness"), la.structure, nullptr);
                if (!is_forest(order, la.structure.size()) || !check_forest_cover(la.structure, order))
                    bad.push_back("witness is not a forest cover");
                else if (forest_height(order) != value)
                    bad.push_back("cover height " + std::to_string(forest_height(order)) + " differs from result");
            } else {
                std::vector<int> peb;
                auto order = forest_from_json(doc.at("witness"), la.structure, &peb);
                const int n = value + 1;
                if (!is_forest(order, la.structure.size()) || !check_pebble_forest_cover(la.structure, order, peb, n))
                    bad.push_back("witness is not a " + std::to_string(n) + "-pebble forest cover");
            }
        }
    } else if (cmd == "lovasz-compare") {
        auto la = load_structure(in.at("A").get<std::string>()), lb = load_structure(in.at("B").get<std::string>());
        if (doc.contains("witness")) {
            const auto& w = doc.at("witness");
            auto c = select_structure(parse_structure_file(w.at("structure").get<std::string>(), "witness"), "", "witness");
            auto x = hom_count(c.structure, la.structure), y = hom_count(c.structure, lb.structure);
            if (x != w.at("count_A").get<std::uint64_t>() || y != w.at("count_B").get<std::uint64_t>())
                bad.push_back("recorded counts do not match");
            if (x == y) bad.push_back("separator does not separate");
            auto spec = class_from([&] {
                std::istringstream is(in.at("class").get<std::string>());
                std::vector<std::string> v;
                for (std::string t; is >> t;) v.push_back(t);
                return v;
            }());
            if (!spec.contains(c.structure)) bad.push_back("separator lies outside the class");
        }
    } else if (cmd == "hom-count") {
        auto lc = load_structure(in.at("C").get<std::string>()), la = load_structure(in.at("A").get<std::string>());
        if (hom_count(lc.structure, la.structure) != doc.at("result").get<std::uint64_t>()) bad.push_back("count differs");
    } else {
        throw InputError("verify does not handle '" + cmd + "' envelopes");
    }
    return bad;
}

int cmd_verify(const std::string& path, const Common& c, std::ostream& out) {
    Envelope env("verify");
    env.doc["inputs"]["envelope"] = path;
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot read " + path);
    json doc;
    try {
        doc = json::parse(f);
    } catch (const json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
    std::vector<std::string> bad;
    try {
        bad = check_envelope(doc);
    } catch (const json::exception& e) {
        throw InputError(path + ": malformed envelope: " + e.what());
    }
    env.doc["result"] = bad.empty() ? "valid" : "invalid";
    env.doc["checked"] = doc.at("command");
    if (!bad.empty()) env.doc["violations"] = bad;
    env.finish(out, c.no_timing);
    return bad.empty() ? kExitOk : kExitNegative;
}

void add_common(CLI::App* app, Common& c) {
    app->add_flag("--no-timing", c.no_timing, "Report elapsed_ms as 0 for reproducible output");
    app->add_flag("--strict", c.strict, "Exit 1 when the answer is negative");
}

void add_query(CLI::App* app, Query& q) {
    app->add_option("--family", q.family, "rank K | vars N | modal K")->expected(2)->required();
    app->add_option("--variant", q.variant, "full | exists | pos | ep");
    app->add_flag("--counting", q.counting, "Counting quantifiers (bijective games)");
    app->add_flag("--no-equality", q.no_equality, "Drop equality atoms (rank and vars families)");
    app->add_option("A", q.a, "Structure file[:name]")->required();
    app->add_option("B", q.b, "Structure file[:name]")->required();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Game comonads on finite relational structures", "gckit"};
    app.require_subcommand(1);
    Common common;

    Query eq_q;
    bool eq_witness = false, eq_cert = false;
    auto* equiv = app.add_subcommand("equiv", "Decide fragment equivalence by the matching game");
    add_query(equiv, eq_q);
    equiv->add_flag("--witness", eq_witness, "Emit Duplicator's strategy");
    equiv->add_flag("--certificate", eq_cert, "Emit a distinguishing sentence when Spoiler wins");
    add_common(equiv, common);

    std::string param_which, param_file;
    bool param_witness = false;
    auto* param = app.add_subcommand("param", "Tree-depth or tree-width with a cover witness");
    param->add_option("parameter", param_which, "tree-depth | tree-width")->required();
    param->add_option("A", param_file, "Structure file[:name]")->required();
    param->add_flag("--witness", param_witness, "Emit the forest cover");
    add_common(param, common);

    std::vector<std::string> com_args;
    std::string com_out;
    auto* comonad = app.add_subcommand("comonad", "Build a comonad carrier");
    comonad->add_option("args", com_args, "ef K A | pebble N K A | modal K A")->required();
    comonad->add_option("-o,--output", com_out, "Also write the carrier to this file");
    add_common(comonad, common);

    std::string hc_c, hc_a;
    auto* hc = app.add_subcommand("hom-count", "Count homomorphisms C -> A");
    hc->add_option("C", hc_c, "Structure file[:name]")->required();
    hc->add_option("A", hc_a, "Structure file[:name]")->required();
    add_common(hc, common);

    std::vector<std::string> hv_class{"all"};
    int hv_max = 3;
    std::string hv_a;
    auto* hv = app.add_subcommand("hom-vector", "Homomorphism counts from a class of small structures");
    hv->add_option("--class", hv_class, "all | td K | tw N")->expected(1, 2);
    hv->add_option("--max-size", hv_max, "Largest class member")->required();
    hv->add_option("A", hv_a, "Structure file[:name]")->required();
    add_common(hv, common);

    std::vector<std::string> lc_class{"all"};
    int lc_max = 3;
    std::string lc_a, lc_b;
    bool lc_witness = false;
    auto* lc = app.add_subcommand("lovasz-compare", "Compare homomorphism counts over a class");
    lc->add_option("--class", lc_class, "all | td K | tw N")->expected(1, 2);
    lc->add_option("--max-size", lc_max, "Largest class member")->required();
    lc->add_option("A", lc_a, "Structure file[:name]")->required();
    lc->add_option("B", lc_b, "Structure file[:name]")->required();
    lc->add_flag("--witness", lc_witness, "Emit the separating structure");
    add_common(lc, common);

    Query or_q;
    auto* oracle = app.add_subcommand("oracle", "Brute-force sentence oracle");
    oracle->require_subcommand(1);
    auto* dist = oracle->add_subcommand("distinguish", "Search for a distinguishing sentence");
    add_query(dist, or_q);
    add_common(dist, common);

    int sc_size = 3;
    std::uint64_t sc_seed = 1;
    auto* sc = app.add_subcommand("selfcheck", "Cross-module agreement sweeps");
    sc->add_option("--size", sc_size, "Largest structure in the sweeps (1..3)");
    sc->add_option("--seed", sc_seed, "Seed for sampled Kleisli arrows");
    add_common(sc, common);

    std::string vf;
    auto* verify = app.add_subcommand("verify", "Re-validate the witness of an emitted envelope");
    verify->add_option("ENVELOPE", vf, "JSON file produced by another command")->required();
    add_common(verify, common);

    std::vector<std::string> argv_s{"gckit"};
    argv_s.insert(argv_s.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_s) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "gckit: " << e.what() << '\n';
        return kExitInput;
    }

    try {
        if (*equiv) return cmd_equiv(eq_q, eq_witness, eq_cert, common, out);
        if (*param) return cmd_param(param_which, param_file, param_witness, common, out);
        if (*comonad) return cmd_comonad(com_args, com_out, common, out);
        if (*hc) return cmd_hom_count(hc_c, hc_a, common, out);
        if (*hv) return cmd_hom_vector(hv_class, hv_max, hv_a, common, out);
        if (*lc) return cmd_lovasz(lc_class, lc_max, lc_a, lc_b, lc_witness, common, out);
        if (*dist) return cmd_distinguish(or_q, common, out);
        if (*sc) return cmd_selfcheck(sc_size, sc_seed, common, out);
        if (*verify) return cmd_verify(vf, common, out);
    } catch (const GuardError& e) {
        err << "gckit: resource guard: " << e.what() << '\n';
        return kExitInput;
    } catch (const InputError& e) {
        err << "gckit: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitInput;
}

}  // namespace gckit::cli
