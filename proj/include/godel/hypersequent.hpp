#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "godel/formula.hpp"

namespace godel {

using FormulaBag = std::vector<Formula>;  // multiset, kept sorted by FormulaLess

FormulaBag make_bag(std::vector<Formula> fs);

// Γ ⇒ Δ with |Δ| ≤ 1; right is null when Δ is empty.
struct Component {
    FormulaBag left;
    Formula right = nullptr;
};

int compare(const Component& a, const Component& b);
inline bool operator==(const Component& a, const Component& b) { return compare(a, b) == 0; }
inline bool operator!=(const Component& a, const Component& b) { return compare(a, b) != 0; }
inline bool operator<(const Component& a, const Component& b) { return compare(a, b) < 0; }

Component make_component(std::vector<Formula> left, Formula right = nullptr);

// Multiset of components, kept sorted.
struct Hypersequent {
    std::vector<Component> comps;
    bool operator==(const Hypersequent& o) const { return comps == o.comps; }
    bool operator!=(const Hypersequent& o) const { return !(comps == o.comps); }
};

Hypersequent make_hyper(std::vector<Component> comps);

std::string render(const Component& c);
std::string render(const Hypersequent& h);
// Components separated by top-level '|'; a piece without '=>' continues the
// previous component's right-hand formula (or the next component's left side).
Hypersequent parse_hypersequent(std::string_view text);

Formula interp_hyper(const Hypersequent& h);

struct Derivation;
using DerivationPtr = std::shared_ptr<const Derivation>;

struct Derivation {
    std::string rule;
    Hypersequent conclusion;
    std::vector<DerivationPtr> premises;
};

DerivationPtr derive(std::string rule, Hypersequent conclusion, std::vector<DerivationPtr> premises = {});

// id bot-l top-r ec ew com wl wr cl imp-l imp-r and-l1 and-l2 and-r or-l
// or-r1 or-r2 cut box neg-l neg-r, plus "hyp" for open assumptions.
const std::vector<std::string>& hyper_rule_names();

struct CheckOptions {
    bool modal = false;       // permit the box rule
    bool allow_hyp = false;   // permit open "hyp" leaves
};

bool check_derivation(const DerivationPtr& d, const CheckOptions& opts, std::string* why = nullptr);
inline bool check_derivation(const DerivationPtr& d, bool modal, std::string* why = nullptr) {
    return check_derivation(d, CheckOptions{modal, false}, why);
}

std::size_t derivation_size(const DerivationPtr& d);  // nodes of the tree
std::size_t count_rule(const DerivationPtr& d, const std::string& rule);

// Replaces neg-l / neg-r by their derivations from imp-l, bot-l, wr, imp-r.
DerivationPtr expand_negation(const DerivationPtr& d);

// (□)^n: from Π1⇒ | … | Πn⇒ | Γ⇒A to □Π1⇒ | … | □Πn⇒ | □Γ⇒□A.  A null
// premise is replaced by a "hyp" leaf.
DerivationPtr derive_box_n(const std::vector<FormulaBag>& pis, const FormulaBag& gamma, Formula a,
                           DerivationPtr premise = nullptr);

// Cut-free derivation of the same end hypersequent.  Throws
// std::invalid_argument when the input does not pass the checker.
DerivationPtr eliminate_cuts(const DerivationPtr& d);

// The prelinearity derivation and the derivation of ¬¬□p → □¬¬p.
DerivationPtr prelinearity_derivation();
DerivationPtr z_box_derivation();

std::string derivation_to_json(const DerivationPtr& d);
DerivationPtr derivation_from_json(const std::string& text);  // throws std::invalid_argument

}  // namespace godel
