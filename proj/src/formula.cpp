#include "godel/formula.hpp"

#include <cctype>
#include <deque>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

namespace godel {

namespace {

struct Key {
    Op op;
    std::string name;
    Formula l;
    Formula r;
    bool operator==(const Key& o) const {
        return op == o.op && name == o.name && l == o.l && r == o.r;
    }
};

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

struct KeyHash {
    std::size_t operator()(const Key& k) const {
        std::uint64_t h = static_cast<std::uint64_t>(k.op) + 1;
        h = mix(h, std::hash<std::string>{}(k.name));
        h = mix(h, k.l ? k.l->hash : 7);
        h = mix(h, k.r ? k.r->hash : 11);
        return static_cast<std::size_t>(h);
    }
};

struct Table {
    std::mutex mu;
    std::deque<Node> nodes;
    std::unordered_map<Key, Formula, KeyHash> index;
};

Table& table() {
    static Table* t = new Table();  // intentionally leaked: formulas outlive everything
    return *t;
}

Formula intern(Op op, std::string name, Formula l, Formula r) {
    Table& t = table();
    Key key{op, std::move(name), l, r};
    std::lock_guard<std::mutex> lock(t.mu);
    auto it = t.index.find(key);
    if (it != t.index.end()) return it->second;

    Node n;
    n.op = op;
    n.name = key.name;
    n.l = l;
    n.r = r;
    n.hash = KeyHash{}(key);
    switch (op) {
    case Op::Var:
    case Op::Bot:
    case Op::Top:
        break;
    case Op::And:
    case Op::Or:
    case Op::Imp:
        n.size = 1 + l->size + r->size;
        n.complexity = 1 + l->complexity + r->complexity;
        n.modal_degree = std::max(l->modal_degree, r->modal_degree);
        n.nesting = std::max(l->nesting, r->nesting);
        n.has_box = l->has_box || r->has_box;
        n.has_dia = l->has_dia || r->has_dia;
        break;
    case Op::Box:
    case Op::Dia:
        n.size = 1 + l->size;
        n.complexity = 1 + l->complexity;
        n.modal_degree = std::max(l->complexity, l->modal_degree);
        n.nesting = 1 + l->nesting;
        n.has_box = l->has_box || op == Op::Box;
        n.has_dia = l->has_dia || op == Op::Dia;
        break;
    }
    t.nodes.push_back(std::move(n));
    Formula f = &t.nodes.back();
    t.index.emplace(std::move(key), f);
    return f;
}

}  // namespace

Formula var(std::string_view name) { return intern(Op::Var, std::string(name), nullptr, nullptr); }
Formula bot() {
    static Formula f = intern(Op::Bot, "", nullptr, nullptr);
    return f;
}
Formula top() {
    static Formula f = intern(Op::Top, "", nullptr, nullptr);
    return f;
}
Formula conj(Formula a, Formula b) { return intern(Op::And, "", a, b); }
Formula disj(Formula a, Formula b) { return intern(Op::Or, "", a, b); }
Formula imp(Formula a, Formula b) { return intern(Op::Imp, "", a, b); }
Formula neg(Formula a) { return imp(a, bot()); }
Formula box(Formula a) { return intern(Op::Box, "", a, nullptr); }
Formula dia(Formula a) { return intern(Op::Dia, "", a, nullptr); }

Formula make(Op op, Formula a, Formula b) {
    switch (op) {
    case Op::Bot: return bot();
    case Op::Top: return top();
    case Op::And: return conj(a, b);
    case Op::Or: return disj(a, b);
    case Op::Imp: return imp(a, b);
    case Op::Box: return box(a);
    case Op::Dia: return dia(a);
    case Op::Var: break;
    }
    throw std::logic_error("make: variables need a name");
}

int compare(Formula a, Formula b) {
    if (a == b) return 0;
    if (a->op != b->op) return a->op < b->op ? -1 : 1;
    if (a->op == Op::Var) return a->name < b->name ? -1 : 1;
    if (int c = compare(a->l, b->l)) return c;
    if (a->r) return compare(a->r, b->r);
    return 0;
}

int complexity(Formula f) { return f->complexity; }
int modal_degree(Formula f) { return f->modal_degree; }

bool in_fragment(Formula f, Logic logic) {
    switch (logic) {
    case Logic::G: return !f->has_box && !f->has_dia;
    case Logic::GKBox: return !f->has_dia;
    case Logic::GKDia:
    case Logic::GKFDia: return !f->has_box;
    }
    return false;
}

std::set<Logic> fragment_of(Formula f) {
    std::set<Logic> out;
    for (Logic l : {Logic::G, Logic::GKBox, Logic::GKDia, Logic::GKFDia})
        if (in_fragment(f, l)) out.insert(l);
    return out;
}

void collect_vars(Formula f, std::set<std::string>& out) {
    if (f->op == Op::Var) {
        out.insert(f->name);
        return;
    }
    if (f->l) collect_vars(f->l, out);
    if (f->r) collect_vars(f->r, out);
}

namespace {
void collect_rec(Formula f, std::vector<Formula>& out, std::unordered_set<Formula>& seen) {
    if (!seen.insert(f).second) return;
    if (f->l) collect_rec(f->l, out, seen);
    if (f->r) collect_rec(f->r, out, seen);
    out.push_back(f);
}
}  // namespace

void collect_subformulas(Formula f, std::vector<Formula>& out) {
    std::unordered_set<Formula> seen(out.begin(), out.end());
    collect_rec(f, out, seen);
}

const char* logic_name(Logic l) {
    switch (l) {
    case Logic::G: return "g";
    case Logic::GKBox: return "gk-box";
    case Logic::GKDia: return "gk-diamond";
    case Logic::GKFDia: return "gkf-diamond";
    }
    return "?";
}

bool parse_logic(std::string_view s, Logic& out) {
    for (Logic l : {Logic::G, Logic::GKBox, Logic::GKDia, Logic::GKFDia}) {
        if (s == logic_name(l)) {
            out = l;
            return true;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

int prec(Formula f) {
    switch (f->op) {
    case Op::Imp: return is_negation(f) ? 4 : 1;
    case Op::Or: return 2;
    case Op::And: return 3;
    default: return 4;
    }
}

void render_into(Formula f, std::string& out);

void wrapped(Formula f, bool paren, std::string& out) {
    if (paren) out += '(';
    render_into(f, out);
    if (paren) out += ')';
}

void render_into(Formula f, std::string& out) {
    switch (f->op) {
    case Op::Var: out += f->name; return;
    case Op::Bot: out += "bot"; return;
    case Op::Top: out += "top"; return;
    case Op::Box:
        out += "[]";
        wrapped(f->l, prec(f->l) < 4, out);
        return;
    case Op::Dia:
        out += "<>";
        wrapped(f->l, prec(f->l) < 4, out);
        return;
    case Op::And:
        wrapped(f->l, prec(f->l) < 3, out);
        out += " & ";
        wrapped(f->r, prec(f->r) <= 3, out);
        return;
    case Op::Or:
        wrapped(f->l, prec(f->l) < 2, out);
        out += " | ";
        wrapped(f->r, prec(f->r) <= 2, out);
        return;
    case Op::Imp:
        if (is_negation(f)) {
            out += '~';
            wrapped(f->l, prec(f->l) < 4, out);
            return;
        }
        wrapped(f->l, prec(f->l) <= 1, out);
        out += " -> ";
        wrapped(f->r, prec(f->r) < 1, out);
        return;
    }
}

}  // namespace

std::string render(Formula f) {
    std::string out;
    render_into(f, out);
    return out;
}

// ---------------------------------------------------------------------------
// Lexing and parsing

namespace syntax {

std::vector<Token> lex(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto push = [&](Tok k, std::size_t len) {
        out.push_back({k, std::string(s.substr(i, len)), i});
        i += len;
    };
    while (i < s.size()) {
        char c = s[i];
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            ++i;
            continue;
        }
        char n = i + 1 < s.size() ? s[i + 1] : '\0';
        if (c >= 'a' && c <= 'z') {
            std::size_t j = i + 1;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            std::string word(s.substr(i, j - i));
            Tok k = word == "bot" ? Tok::Bot : word == "top" ? Tok::Top : Tok::Ident;
            push(k, j - i);
            continue;
        }
        switch (c) {
        case '(': push(Tok::LParen, 1); break;
        case ')': push(Tok::RParen, 1); break;
        case '&': push(Tok::And, 1); break;
        case '|': push(Tok::Or, 1); break;
        case '~': push(Tok::Not, 1); break;
        case ';': push(Tok::Semi, 1); break;
        case ',': push(Tok::Comma, 1); break;
        case '-':
            if (n != '>') throw ParseError("expected '->'", i);
            push(Tok::Imp, 2);
            break;
        case '=':
            if (n != '>') throw ParseError("expected '=>'", i);
            push(Tok::Arrow, 2);
            break;
        case '[':
            if (n != ']') throw ParseError("expected '[]'", i);
            push(Tok::BoxT, 2);
            break;
        case '<':
            if (n == '>') push(Tok::DiaT, 2);
            else if (n == '=') push(Tok::Le, 2);
            else push(Tok::Lt, 1);
            break;
        default:
            throw ParseError(std::string("unexpected character '") + c + "'", i);
        }
    }
    out.push_back({Tok::End, "", s.size()});
    return out;
}

void Parser::expect(Tok k, const char* what) {
    if (!at(k)) throw ParseError(std::string("expected ") + what, peek().pos);
    ++i_;
}

Formula Parser::formula() { return imp_level(); }

Formula Parser::imp_level() {
    Formula lhs = or_level();
    if (at(Tok::Imp)) {
        next();
        return imp(lhs, imp_level());
    }
    return lhs;
}

Formula Parser::or_level() {
    Formula f = and_level();
    while (at(Tok::Or)) {
        next();
        f = disj(f, and_level());
    }
    return f;
}

Formula Parser::and_level() {
    Formula f = unary();
    while (at(Tok::And)) {
        next();
        f = conj(f, unary());
    }
    return f;
}

Formula Parser::unary() {
    const Token& t = peek();
    switch (t.kind) {
    case Tok::Not: next(); return neg(unary());
    case Tok::BoxT: next(); return box(unary());
    case Tok::DiaT: next(); return dia(unary());
    case Tok::Bot: next(); return bot();
    case Tok::Top: next(); return top();
    case Tok::Ident: return var(next().text);
    case Tok::LParen: {
        std::size_t open = t.pos;
        next();
        Formula f = imp_level();
        if (!at(Tok::RParen)) throw ParseError("unbalanced parenthesis opened at " + std::to_string(open), peek().pos);
        next();
        return f;
    }
    case Tok::RParen: throw ParseError("unbalanced ')'", t.pos);
    case Tok::End: throw ParseError("unexpected end of input", t.pos);
    default: throw ParseError("unexpected token '" + t.text + "'", t.pos);
    }
}

}  // namespace syntax

Formula parse_formula(std::string_view text) {
    syntax::Parser p(syntax::lex(text));
    if (p.done()) throw ParseError("empty input", 0);
    Formula f = p.formula();
    if (!p.done()) {
        if (p.at(syntax::Tok::RParen)) throw ParseError("unbalanced ')'", p.peek().pos);
        throw ParseError("trailing input '" + p.peek().text + "'", p.peek().pos);
    }
    return f;
}

}  // namespace godel
