#include "gckit/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace gckit {

// ---------------------------------------------------------------- constructors

Formula Formula::make(Node n) { return Formula(std::make_shared<const Node>(std::move(n))); }
Formula Formula::top() { return make({Kind::True, {}, {}, 0, {}}); }
Formula Formula::bottom() { return make({Kind::False, {}, {}, 0, {}}); }
Formula Formula::atom(std::string rel, std::vector<int> vars) { return make({Kind::Atom, std::move(rel), std::move(vars), 0, {}}); }
Formula Formula::equal(int x, int y) { return make({Kind::Equal, {}, {x, y}, 0, {}}); }
Formula Formula::negate(Formula f) { return make({Kind::Not, {}, {}, 0, {std::move(f)}}); }
Formula Formula::conj(std::vector<Formula> fs) {
    if (fs.empty()) return top();
    if (fs.size() == 1) return fs.front();
    return make({Kind::And, {}, {}, 0, std::move(fs)});
}
Formula Formula::disj(std::vector<Formula> fs) {
    if (fs.empty()) return bottom();
    if (fs.size() == 1) return fs.front();
    return make({Kind::Or, {}, {}, 0, std::move(fs)});
}
Formula Formula::implies(Formula a, Formula b) { return make({Kind::Implies, {}, {}, 0, {std::move(a), std::move(b)}}); }
Formula Formula::exists(int var, Formula body) { return make({Kind::Exists, {}, {var}, 0, {std::move(body)}}); }
Formula Formula::forall(int var, Formula body) { return make({Kind::Forall, {}, {var}, 0, {std::move(body)}}); }
Formula Formula::count_exists(int threshold, int var, Formula body) {
    if (threshold < 1) throw InputError("counting threshold must be at least 1");
    return make({Kind::CountExists, {}, {var}, threshold, {std::move(body)}});
}

ModalFormula ModalFormula::make(Node n) { return ModalFormula(std::make_shared<const Node>(std::move(n))); }
ModalFormula ModalFormula::top() { return make({Kind::True, {}, 0, {}}); }
ModalFormula ModalFormula::bottom() { return make({Kind::False, {}, 0, {}}); }
ModalFormula ModalFormula::prop(std::string p) { return make({Kind::Prop, std::move(p), 0, {}}); }
ModalFormula ModalFormula::negate(ModalFormula f) { return make({Kind::Not, {}, 0, {std::move(f)}}); }
ModalFormula ModalFormula::conj(std::vector<ModalFormula> fs) {
    if (fs.empty()) return top();
    if (fs.size() == 1) return fs.front();
    return make({Kind::And, {}, 0, std::move(fs)});
}
ModalFormula ModalFormula::disj(std::vector<ModalFormula> fs) {
    if (fs.empty()) return bottom();
    if (fs.size() == 1) return fs.front();
    return make({Kind::Or, {}, 0, std::move(fs)});
}
ModalFormula ModalFormula::dia(std::string rel, ModalFormula f) { return make({Kind::Dia, std::move(rel), 0, {std::move(f)}}); }
ModalFormula ModalFormula::box(std::string rel, ModalFormula f) { return make({Kind::Box, std::move(rel), 0, {std::move(f)}}); }
ModalFormula ModalFormula::graded_dia(int threshold, std::string rel, ModalFormula f) {
    if (threshold < 1) throw InputError("graded modality threshold must be at least 1");
    return make({Kind::GradedDia, std::move(rel), threshold, {std::move(f)}});
}

// ---------------------------------------------------------------- printing

namespace {

std::string var_name(int v) { return "x" + std::to_string(v); }

void print(const Formula& f, std::string& out) {
    using K = Formula::Kind;
    switch (f.kind()) {
        case K::True: out += "true"; return;
        case K::False: out += "false"; return;
        case K::Atom:
            out += "(" + f.relation();
            for (int v : f.vars()) out += " " + var_name(v);
            out += ")";
            return;
        case K::Equal: out += "(= " + var_name(f.vars()[0]) + " " + var_name(f.vars()[1]) + ")"; return;
        case K::Not: out += "(not "; break;
        case K::And: out += "(and"; break;
        case K::Or: out += "(or"; break;
        case K::Implies: out += "(implies"; break;
        case K::Exists: out += "(exists " + var_name(f.var()) + " "; break;
        case K::Forall: out += "(forall " + var_name(f.var()) + " "; break;
        case K::CountExists:
            out += "(exists>= " + std::to_string(f.threshold()) + " " + var_name(f.var()) + " ";
            break;
    }
    const bool listy = f.kind() == K::And || f.kind() == K::Or || f.kind() == K::Implies;
    for (const auto& c : f.children()) {
        if (listy) out += " ";
        print(c, out);
    }
    out += ")";
}

void print(const ModalFormula& f, std::string& out) {
    using K = ModalFormula::Kind;
    switch (f.kind()) {
        case K::True: out += "true"; return;
        case K::False: out += "false"; return;
        case K::Prop: out += f.name(); return;
        case K::Not: out += "(not "; break;
        case K::And: out += "(and"; break;
        case K::Or: out += "(or"; break;
        case K::Dia: out += "(dia " + f.name() + " "; break;
        case K::Box: out += "(box " + f.name() + " "; break;
        case K::GradedDia: out += "(dia>= " + std::to_string(f.threshold()) + " " + f.name() + " "; break;
    }
    const bool listy = f.kind() == K::And || f.kind() == K::Or;
    for (const auto& c : f.children()) {
        if (listy) out += " ";
        print(c, out);
    }
    out += ")";
}

}  // namespace

std::string Formula::to_string() const {
    std::string s;
    print(*this, s);
    return s;
}

std::string ModalFormula::to_string() const {
    std::string s;
    print(*this, s);
    return s;
}

std::size_t Formula::size() const {
    std::size_t n = 1;
    for (const auto& c : children()) n += c.size();
    return n;
}

std::size_t ModalFormula::size() const {
    std::size_t n = 1;
    for (const auto& c : children()) n += c.size();
    return n;
}

// ---------------------------------------------------------------- parsing

namespace {

struct SExpr {
    std::string atom;  // empty for lists
    std::vector<SExpr> items;
    bool is_list() const { return atom.empty(); }
};

class Reader {
public:
    explicit Reader(std::string_view t) : text_(t) {}

    SExpr read_all() {
        SExpr e = read();
        skip();
        if (pos_ != text_.size()) fail("trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw InputError("formula syntax error at offset " + std::to_string(pos_) + ": " + why);
    }
    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    SExpr read() {
        skip();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        if (text_[pos_] == ')') fail("unexpected ')'");
        if (text_[pos_] == '(') {
            ++pos_;
            SExpr list;
            while (true) {
                skip();
                if (pos_ >= text_.size()) fail("missing ')'");
                if (text_[pos_] == ')') {
                    ++pos_;
                    break;
                }
                list.items.push_back(read());
            }
            if (list.items.empty()) fail("empty list");
            return list;
        }
        std::size_t start = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '(' &&
               text_[pos_] != ')')
            ++pos_;
        SExpr a;
        a.atom = std::string(text_.substr(start, pos_ - start));
        return a;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

int parse_var(const SExpr& e) {
    if (e.is_list() || e.atom.size() < 2 || e.atom[0] != 'x') throw InputError("expected a variable x<n>, got " + e.atom);
    int v = 0;
    for (std::size_t i = 1; i < e.atom.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(e.atom[i]))) throw InputError("bad variable " + e.atom);
        v = v * 10 + (e.atom[i] - '0');
        if (v > 1000000) throw InputError("variable index too large");
    }
    if (v < 1) throw InputError("variables are numbered from x1");
    return v;
}

int parse_int(const SExpr& e) {
    if (e.is_list() || e.atom.empty() || !std::all_of(e.atom.begin(), e.atom.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw InputError("expected a number");
    if (e.atom.size() > 6) throw InputError("number too large");
    return std::stoi(e.atom);
}

const std::string& head(const SExpr& e) {
    if (e.items.front().is_list()) throw InputError("list head must be a keyword or symbol");
    return e.items.front().atom;
}

void arity(const SExpr& e, std::size_t n) {
    if (e.items.size() != n) throw InputError("wrong number of arguments to " + head(e));
}

Formula to_formula(const SExpr& e) {
    if (!e.is_list()) {
        if (e.atom == "true") return Formula::top();
        if (e.atom == "false") return Formula::bottom();
        throw InputError("unexpected token " + e.atom);
    }
    const std::string& h = head(e);
    auto rest = [&](std::size_t from) {
        std::vector<Formula> fs;
        for (std::size_t i = from; i < e.items.size(); ++i) fs.push_back(to_formula(e.items[i]));
        return fs;
    };
    if (h == "not") {
        arity(e, 2);
        return Formula::negate(to_formula(e.items[1]));
    }
    if (h == "and") return Formula::conj(rest(1));
    if (h == "or") return Formula::disj(rest(1));
    if (h == "implies") {
        arity(e, 3);
        return Formula::implies(to_formula(e.items[1]), to_formula(e.items[2]));
    }
    if (h == "exists" || h == "forall") {
        arity(e, 3);
        int v = parse_var(e.items[1]);
        auto b = to_formula(e.items[2]);
        return h == "exists" ? Formula::exists(v, b) : Formula::forall(v, b);
    }
    if (h == "exists>=") {
        arity(e, 4);
        return Formula::count_exists(parse_int(e.items[1]), parse_var(e.items[2]), to_formula(e.items[3]));
    }
    if (h == "=") {
        arity(e, 3);
        return Formula::equal(parse_var(e.items[1]), parse_var(e.items[2]));
    }
    std::vector<int> vars;
    for (std::size_t i = 1; i < e.items.size(); ++i) vars.push_back(parse_var(e.items[i]));
    if (vars.empty()) throw InputError("atom " + h + " needs arguments");
    return Formula::atom(h, vars);
}

ModalFormula to_modal(const SExpr& e) {
    if (!e.is_list()) {
        if (e.atom == "true") return ModalFormula::top();
        if (e.atom == "false") return ModalFormula::bottom();
        return ModalFormula::prop(e.atom);
    }
    const std::string& h = head(e);
    auto rest = [&]() {
        std::vector<ModalFormula> fs;
        for (std::size_t i = 1; i < e.items.size(); ++i) fs.push_back(to_modal(e.items[i]));
        return fs;
    };
    auto label = [&](const SExpr& x) {
        if (x.is_list()) throw InputError("modality label must be a symbol");
        return x.atom;
    };
    if (h == "not") {
        arity(e, 2);
        return ModalFormula::negate(to_modal(e.items[1]));
    }
    if (h == "and") return ModalFormula::conj(rest());
    if (h == "or") return ModalFormula::disj(rest());
    if (h == "dia" || h == "box") {
        arity(e, 3);
        auto b = to_modal(e.items[2]);
        return h == "dia" ? ModalFormula::dia(label(e.items[1]), b) : ModalFormula::box(label(e.items[1]), b);
    }
    if (h == "dia>=") {
        arity(e, 4);
        return ModalFormula::graded_dia(parse_int(e.items[1]), label(e.items[2]), to_modal(e.items[3]));
    }
    throw InputError("unknown modal operator " + h);
}

}  // namespace

Formula parse_formula(std::string_view text) { return to_formula(Reader(text).read_all()); }
ModalFormula parse_modal_formula(std::string_view text) { return to_modal(Reader(text).read_all()); }

// ---------------------------------------------------------------- evaluation

namespace {

bool eval_fo(const Structure& a, const Formula& f, Assignment& env) {
    using K = Formula::Kind;
    auto val = [&](int v) {
        if (v < 0 || static_cast<std::size_t>(v) >= env.size() || !env[static_cast<std::size_t>(v)])
            throw InputError("free variable " + var_name(v) + " has no value");
        return *env[static_cast<std::size_t>(v)];
    };
    auto bind = [&](int v) {
        if (static_cast<std::size_t>(v) >= env.size()) env.resize(static_cast<std::size_t>(v) + 1);
    };
    switch (f.kind()) {
        case K::True: return true;
        case K::False: return false;
        case K::Atom: {
            std::size_t r = a.relation_index(f.relation());
            if (static_cast<int>(f.vars().size()) != a.signature()[r].arity)
                throw InputError("atom " + f.relation() + " has the wrong arity");
            Tuple t;
            for (int v : f.vars()) t.push_back(val(v));
            return a.holds(r, t);
        }
        case K::Equal: return val(f.vars()[0]) == val(f.vars()[1]);
        case K::Not: return !eval_fo(a, f.body(), env);
        case K::And:
            for (const auto& c : f.children())
                if (!eval_fo(a, c, env)) return false;
            return true;
        case K::Or:
            for (const auto& c : f.children())
                if (eval_fo(a, c, env)) return true;
            return false;
        case K::Implies: return !eval_fo(a, f.children()[0], env) || eval_fo(a, f.children()[1], env);
        case K::Exists:
        case K::Forall:
        case K::CountExists: {
            const int v = f.var();
            bind(v);
            auto saved = env[static_cast<std::size_t>(v)];
            int count = 0;
            bool result = f.kind() == K::Forall;
            for (std::size_t e = 0; e < a.size(); ++e) {
                env[static_cast<std::size_t>(v)] = static_cast<Elem>(e);
                bool b = eval_fo(a, f.body(), env);
                if (f.kind() == K::Exists && b) {
                    result = true;
                    break;
                }
                if (f.kind() == K::Forall && !b) {
                    result = false;
                    break;
                }
                if (f.kind() == K::CountExists && b && ++count >= f.threshold()) {
                    result = true;
                    break;
                }
            }
            env[static_cast<std::size_t>(v)] = saved;
            return result;
        }
    }
    return false;
}

}  // namespace

bool eval(const Structure& a, const Formula& f, const Assignment& env) {
    Assignment e = env;
    return eval_fo(a, f, e);
}

bool eval(const Structure& a, Elem state, const ModalFormula& f) {
    using K = ModalFormula::Kind;
    auto binary = [&](const std::string& rel) {
        std::size_t r = a.relation_index(rel);
        if (a.signature()[r].arity != 2) throw InputError("modality " + rel + " is not a binary symbol");
        return r;
    };
    switch (f.kind()) {
        case K::True: return true;
        case K::False: return false;
        case K::Prop: {
            std::size_t r = a.relation_index(f.name());
            if (a.signature()[r].arity != 1) throw InputError("proposition " + f.name() + " is not a unary symbol");
            return a.holds(r, Tuple{state});
        }
        case K::Not: return !eval(a, state, f.body());
        case K::And:
            for (const auto& c : f.children())
                if (!eval(a, state, c)) return false;
            return true;
        case K::Or:
            for (const auto& c : f.children())
                if (eval(a, state, c)) return true;
            return false;
        case K::Dia:
        case K::Box:
        case K::GradedDia: {
            std::size_t r = binary(f.name());
            int count = 0;
            const int need = f.kind() == K::GradedDia ? f.threshold() : 1;
            for (const auto& t : a.relation(r).tuples()) {
                if (t[0] != state) continue;
                bool b = eval(a, t[1], f.body());
                if (f.kind() == K::Box && !b) return false;
                if (f.kind() != K::Box && b && ++count >= need) return true;
            }
            return f.kind() == K::Box;
        }
    }
    return false;
}

bool eval(const PointedStructure& a, const ModalFormula& f) { return eval(a.structure, a.point, f); }

// ---------------------------------------------------------------- normal forms and metrics

Formula nnf(const Formula& f) {
    using K = Formula::Kind;
    std::function<Formula(const Formula&, bool)> go = [&](const Formula& g, bool neg) -> Formula {
        auto map_kids = [&](bool n) {
            std::vector<Formula> ks;
            for (const auto& c : g.children()) ks.push_back(go(c, n));
            return ks;
        };
        switch (g.kind()) {
            case K::True: return neg ? Formula::bottom() : Formula::top();
            case K::False: return neg ? Formula::top() : Formula::bottom();
            case K::Atom:
            case K::Equal: return neg ? Formula::negate(g) : g;
            case K::Not: return go(g.body(), !neg);
            case K::And: return neg ? Formula::disj(map_kids(true)) : Formula::conj(map_kids(false));
            case K::Or: return neg ? Formula::conj(map_kids(true)) : Formula::disj(map_kids(false));
            case K::Implies:
                if (neg) return Formula::conj({go(g.children()[0], false), go(g.children()[1], true)});
                return Formula::disj({go(g.children()[0], true), go(g.children()[1], false)});
            case K::Exists:
                return neg ? Formula::forall(g.var(), go(g.body(), true)) : Formula::exists(g.var(), go(g.body(), false));
            case K::Forall:
                return neg ? Formula::exists(g.var(), go(g.body(), true)) : Formula::forall(g.var(), go(g.body(), false));
            case K::CountExists: {
                Formula c = Formula::count_exists(g.threshold(), g.var(), go(g.body(), false));
                return neg ? Formula::negate(c) : c;
            }
        }
        return g;
    };
    return go(f, false);
}

ModalFormula nnf(const ModalFormula& f) {
    using K = ModalFormula::Kind;
    std::function<ModalFormula(const ModalFormula&, bool)> go = [&](const ModalFormula& g, bool neg) -> ModalFormula {
        auto map_kids = [&](bool n) {
            std::vector<ModalFormula> ks;
            for (const auto& c : g.children()) ks.push_back(go(c, n));
            return ks;
        };
        switch (g.kind()) {
            case K::True: return neg ? ModalFormula::bottom() : ModalFormula::top();
            case K::False: return neg ? ModalFormula::top() : ModalFormula::bottom();
            case K::Prop: return neg ? ModalFormula::negate(g) : g;
            case K::Not: return go(g.body(), !neg);
            case K::And: return neg ? ModalFormula::disj(map_kids(true)) : ModalFormula::conj(map_kids(false));
            case K::Or: return neg ? ModalFormula::conj(map_kids(true)) : ModalFormula::disj(map_kids(false));
            case K::Dia:
                return neg ? ModalFormula::box(g.name(), go(g.body(), true)) : ModalFormula::dia(g.name(), go(g.body(), false));
            case K::Box:
                return neg ? ModalFormula::dia(g.name(), go(g.body(), true)) : ModalFormula::box(g.name(), go(g.body(), false));
            case K::GradedDia: {
                ModalFormula c = ModalFormula::graded_dia(g.threshold(), g.name(), go(g.body(), false));
                return neg ? ModalFormula::negate(c) : c;
            }
        }
        return g;
    };
    return go(f, false);
}

FormulaMetrics metrics(const Formula& f) {
    using K = Formula::Kind;
    FormulaMetrics m;
    std::function<int(const Formula&, std::set<int>&)> walk = [&](const Formula& g, std::set<int>& bound) -> int {
        switch (g.kind()) {
            case K::Atom:
            case K::Equal:
                if (g.kind() == K::Equal) m.uses_equality = true;
                for (int v : g.vars()) {
                    m.variables.insert(v);
                    if (!bound.count(v)) m.free_variables.insert(v);
                }
                return 0;
            case K::Exists:
            case K::Forall:
            case K::CountExists: {
                if (g.kind() == K::CountExists) m.uses_counting = true;
                m.variables.insert(g.var());
                bool was = bound.count(g.var()) != 0;
                bound.insert(g.var());
                int r = 1 + walk(g.body(), bound);
                if (!was) bound.erase(g.var());
                return r;
            }
            default: {
                int r = 0;
                for (const auto& c : g.children()) r = std::max(r, walk(c, bound));
                return r;
            }
        }
    };
    std::set<int> bound;
    m.quantifier_rank = walk(f, bound);
    m.variable_count = static_cast<int>(m.variables.size());
    bool has_not = false, has_forall = false;
    std::function<void(const Formula&)> scan = [&](const Formula& g) {
        if (g.kind() == K::Not) {
            has_not = true;
            if (g.body().kind() != K::Atom && g.body().kind() != K::Equal) has_forall = true;
        }
        if (g.kind() == K::Forall) has_forall = true;
        for (const auto& c : g.children()) scan(c);
    };
    scan(nnf(f));
    m.positive = !has_not;
    m.existential = !has_forall;
    m.existential_positive = m.positive && m.existential;
    return m;
}

ModalMetrics metrics(const ModalFormula& f) {
    using K = ModalFormula::Kind;
    ModalMetrics m;
    std::function<int(const ModalFormula&)> depth = [&](const ModalFormula& g) -> int {
        int d = 0;
        for (const auto& c : g.children()) d = std::max(d, depth(c));
        if (g.kind() == K::GradedDia) m.uses_counting = true;
        if (g.kind() == K::Dia || g.kind() == K::Box || g.kind() == K::GradedDia) ++d;
        return d;
    };
    m.depth = depth(f);
    bool has_not = false, has_box = false;
    std::function<void(const ModalFormula&)> scan = [&](const ModalFormula& g) {
        if (g.kind() == K::Not) {
            has_not = true;
            if (g.body().kind() != K::Prop) has_box = true;
        }
        if (g.kind() == K::Box) has_box = true;
        for (const auto& c : g.children()) scan(c);
    };
    scan(nnf(f));
    m.positive = !has_not;
    m.existential = !has_box;
    m.existential_positive = m.positive && m.existential;
    return m;
}

Formula standard_translation(const ModalFormula& f, int var) {
    using K = ModalFormula::Kind;
    std::vector<Formula> ks;
    for (const auto& c : f.children()) ks.push_back(standard_translation(c, var));
    const int y = var + 1;
    switch (f.kind()) {
        case K::True: return Formula::top();
        case K::False: return Formula::bottom();
        case K::Prop: return Formula::atom(f.name(), {var});
        case K::Not: return Formula::negate(ks[0]);
        case K::And: return Formula::conj(ks);
        case K::Or: return Formula::disj(ks);
        case K::Dia:
            return Formula::exists(y, Formula::conj({Formula::atom(f.name(), {var, y}), standard_translation(f.body(), y)}));
        case K::Box:
            return Formula::forall(y, Formula::implies(Formula::atom(f.name(), {var, y}), standard_translation(f.body(), y)));
        case K::GradedDia:
            return Formula::count_exists(
                f.threshold(), y, Formula::conj({Formula::atom(f.name(), {var, y}), standard_translation(f.body(), y)}));
    }
    return Formula::top();
}

Formula path_formula(int length, const std::string& rel) {
    if (length < 1) throw InputError("path length must be at least 1");
    Formula psi = Formula::atom(rel, {1, 2});
    for (int l = 2; l <= length; ++l)
        psi = Formula::exists(
            3, Formula::conj({Formula::atom(rel, {1, 3}), Formula::exists(1, Formula::conj({Formula::equal(1, 3), psi}))}));
    return Formula::exists(1, Formula::exists(2, psi));
}

}  // namespace gckit
