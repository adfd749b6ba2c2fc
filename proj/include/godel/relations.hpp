#pragma once

#include <map>
#include <string>
#include <vector>

#include "godel/formula.hpp"

namespace godel {

enum class RelKind : std::uint8_t { Lt, Le };

struct Relation {
    Formula lhs;
    RelKind kind;
    Formula rhs;
};

int compare(const Relation& a, const Relation& b);
inline bool operator==(const Relation& a, const Relation& b) {
    return a.lhs == b.lhs && a.kind == b.kind && a.rhs == b.rhs;
}
inline bool operator!=(const Relation& a, const Relation& b) { return !(a == b); }
inline bool operator<(const Relation& a, const Relation& b) { return compare(a, b) < 0; }

inline Relation le(Formula a, Formula b) { return {a, RelKind::Le, b}; }
inline Relation lt(Formula a, Formula b) { return {a, RelKind::Lt, b}; }

std::string render(const Relation& r);

// A finite set of relations, kept sorted and duplicate-free.
class Sequent {
public:
    Sequent() = default;
    Sequent(std::initializer_list<Relation> rels);
    explicit Sequent(std::vector<Relation> rels);

    bool insert(const Relation& r);  // false if already present
    bool erase(const Relation& r);
    bool contains(const Relation& r) const;
    Sequent with(const Relation& r) const;
    Sequent without(const Relation& r) const;

    const std::vector<Relation>& relations() const { return rels_; }
    std::size_t size() const { return rels_.size(); }
    bool empty() const { return rels_.empty(); }
    auto begin() const { return rels_.begin(); }
    auto end() const { return rels_.end(); }

    bool operator==(const Sequent& o) const { return rels_ == o.rels_; }
    bool operator!=(const Sequent& o) const { return !(rels_ == o.rels_); }
    bool operator<(const Sequent& o) const;

    std::size_t hash() const;
    int modal_degree() const;

private:
    std::vector<Relation> rels_;
};

struct SequentHash {
    std::size_t operator()(const Sequent& s) const { return s.hash(); }
};

std::string render(const Sequent& s);
Sequent parse_sequent(std::string_view text);

// ⋀(B_i → A_i) → ⋁(C_j → D_j) for strict A_i < B_i and C_j ≤ D_j.
Formula interp_sequent(const Sequent& s);

// Reads a formula as the sequent {⊤ ≤ f}.
Sequent sequent_of_formula(Formula f);

enum class Orientation { ListLeft, ListRight };
std::vector<Relation> expand_block(const std::vector<Formula>& side, RelKind kind, Formula other,
                                   Orientation orientation);

bool is_quasi_atom(Formula f);
bool is_quasi_atomic(const Sequent& s);
bool is_atomic(const Sequent& s);
bool in_fragment(const Sequent& s, Logic logic);

struct Abstraction {
    Sequent sequent;
    std::map<Formula, Formula, FormulaLess> forward;   // modal formula -> fresh variable
    std::map<std::string, Formula> backward;           // fresh variable name -> modal formula
};

// Replaces each outermost modal side by a fresh variable; identical formulas share.
Abstraction abstract_modals(const Sequent& s);
Sequent concretize(const Sequent& s, const Abstraction& a);

struct ModalPart {
    std::vector<std::pair<Formula, Formula>> boxBox;  // □A ≤ □B
    std::vector<Formula> boxBot;                      // □C ≤ ⊥
    std::vector<std::pair<Formula, Formula>> diaDia;  // ◇A ≤ ◇B, B may be ⊥
    std::vector<Formula> diaLow;                      // ⊥ < ◇C
    std::vector<Formula> diaHigh;                     // ⊤ ≤ ◇D

    bool operator==(const ModalPart& o) const = default;
};

class ShapeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

ModalPart modal_part(const Sequent& s, Logic logic);

}  // namespace godel
