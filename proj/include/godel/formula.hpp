#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace godel {

enum class Op : std::uint8_t { Var, Bot, Top, And, Or, Imp, Box, Dia };

struct Node;

// Formulas are hash-consed: two structurally equal formulas are the same
// pointer, so == is structural equality.  Nodes live for the whole process.
using Formula = const Node*;

struct Node {
    Op op;
    std::string name;  // variables only
    Formula l = nullptr;
    Formula r = nullptr;
    int size = 1;          // node count
    int complexity = 0;    // connectives, modalities included
    int modal_degree = 0;  // max complexity of a modal body
    int nesting = 0;       // modal nesting depth
    bool has_box = false;
    bool has_dia = false;
    std::uint64_t hash = 0;
};

enum class Logic { G, GKBox, GKDia, GKFDia };

Formula var(std::string_view name);
Formula bot();
Formula top();
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula imp(Formula a, Formula b);
Formula neg(Formula a);
Formula box(Formula a);
Formula dia(Formula a);
Formula make(Op op, Formula a, Formula b = nullptr);

inline bool is_atom(Formula f) { return f->op == Op::Var || f->op == Op::Bot || f->op == Op::Top; }
inline bool is_modal(Formula f) { return f->op == Op::Box || f->op == Op::Dia; }
inline bool is_negation(Formula f) { return f->op == Op::Imp && f->r->op == Op::Bot; }

// Total structural order, independent of interning order.
int compare(Formula a, Formula b);
struct FormulaLess {
    bool operator()(Formula a, Formula b) const { return compare(a, b) < 0; }
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

Formula parse_formula(std::string_view text);
std::string render(Formula f);

int complexity(Formula f);
int modal_degree(Formula f);
std::set<Logic> fragment_of(Formula f);
bool in_fragment(Formula f, Logic logic);

void collect_vars(Formula f, std::set<std::string>& out);
void collect_subformulas(Formula f, std::vector<Formula>& out);  // post-order, no duplicates

const char* logic_name(Logic l);
bool parse_logic(std::string_view s, Logic& out);

// Lexer shared by the formula, sequent and hypersequent parsers.
namespace syntax {

enum class Tok {
    Ident, Bot, Top, LParen, RParen, And, Or, Imp, Not, BoxT, DiaT,
    Le, Lt, Semi, Comma, Arrow, End
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

std::vector<Token> lex(std::string_view text);

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}
    Formula formula();
    const Token& peek() const { return toks_[i_]; }
    Token next() { return toks_[i_++]; }
    bool at(Tok k) const { return toks_[i_].kind == k; }
    void expect(Tok k, const char* what);
    bool done() const { return at(Tok::End); }

private:
    Formula imp_level();
    Formula or_level();
    Formula and_level();
    Formula unary();
    std::vector<Token> toks_;
    std::size_t i_ = 0;
};

}  // namespace syntax
}  // namespace godel
