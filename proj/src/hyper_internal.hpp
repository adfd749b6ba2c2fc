#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "godel/hypersequent.hpp"

namespace godel::hyper {

struct CompLess {
    bool operator()(const Component& a, const Component& b) const { return compare(a, b) < 0; }
};

// Sorted-vector multiset helpers, shared by formulas and components.
template <class T, class Less>
std::vector<T> msum(const std::vector<T>& a, const std::vector<T>& b, Less less) {
    std::vector<T> out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out), less);
    return out;
}

// a − b, or nullopt when b is not contained in a.
template <class T, class Less>
std::optional<std::vector<T>> mdiff(const std::vector<T>& a, const std::vector<T>& b, Less less) {
    std::vector<T> out;
    std::size_t j = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (j < b.size() && !less(a[i], b[j]) && !less(b[j], a[i])) {
            ++j;
            continue;
        }
        if (j < b.size() && less(b[j], a[i])) return std::nullopt;
        out.push_back(a[i]);
    }
    if (j != b.size()) return std::nullopt;
    return out;
}

template <class T, class Less>
bool msubset(const std::vector<T>& b, const std::vector<T>& a, Less less) {
    return std::includes(a.begin(), a.end(), b.begin(), b.end(), less);
}

template <class T, class Less>
std::size_t mcount(const std::vector<T>& a, const T& x, Less less) {
    auto r = std::equal_range(a.begin(), a.end(), x, less);
    return static_cast<std::size_t>(r.second - r.first);
}

template <class T, class Less>
std::vector<T> mdistinct(std::vector<T> a, Less less) {
    a.erase(std::unique(a.begin(), a.end(), [&](const T& x, const T& y) { return !less(x, y) && !less(y, x); }),
            a.end());
    return a;
}

inline FormulaBag bag_plus(const FormulaBag& a, const FormulaBag& b) { return msum(a, b, FormulaLess{}); }
inline FormulaBag bag_plus(const FormulaBag& a, Formula f) { return msum(a, FormulaBag{f}, FormulaLess{}); }
inline std::optional<FormulaBag> bag_minus(const FormulaBag& a, const FormulaBag& b) {
    return mdiff(a, b, FormulaLess{});
}
inline std::optional<FormulaBag> bag_minus(const FormulaBag& a, Formula f) { return mdiff(a, FormulaBag{f}, FormulaLess{}); }
inline std::size_t bag_count(const FormulaBag& a, Formula f) { return mcount(a, f, FormulaLess{}); }
FormulaBag bag_repeat(const FormulaBag& a, std::size_t k);

using Comps = std::vector<Component>;
inline Comps comps_plus(const Comps& a, const Comps& b) { return msum(a, b, CompLess{}); }
inline Comps comps_plus(const Comps& a, const Component& c) { return msum(a, Comps{c}, CompLess{}); }
inline std::optional<Comps> comps_minus(const Comps& a, const Comps& b) { return mdiff(a, b, CompLess{}); }
inline std::optional<Comps> comps_minus(const Comps& a, const Component& c) { return mdiff(a, Comps{c}, CompLess{}); }
inline bool comps_subset(const Comps& b, const Comps& a) { return msubset(b, a, CompLess{}); }
inline std::size_t comps_count(const Comps& a, const Component& c) { return mcount(a, c, CompLess{}); }
Comps comps_repeat(const Comps& a, std::size_t k);

// Which axiom a component instantiates, if any ("id", "bot-l", "top-r").
std::optional<std::string> axiom_of(const Component& c);
std::optional<std::string> axiom_of(const Comps& h);

// A concrete instance of a rule schema at one node.
struct Match {
    enum class Kind { Axiom, Single, Ec, Ew, Com, Box, Hyp } kind = Kind::Hyp;
    Comps context;                  // side hypersequent G (Axiom, Single, Com)
    Component active;               // Axiom/Single: active component of the conclusion
    std::vector<Component> prem;    // Single: active component of each premise
    Formula principal = nullptr;    // left rules, wl, cl: the formula acted on
    // Com: c1 = Γ1,Γ2⇒Δ1 and c2 = Π1,Π2⇒Δ2 from p1 = Γ1,Π1⇒Δ1 and p2 = Γ2,Π2⇒Δ2.
    Component c1, c2, p1, p2;
    FormulaBag g1, g2, pi1, pi2;
};

// Replaces one occurrence of `from` by `to`.
Hypersequent replace_comp(const Hypersequent& h, const Component& from, const Component& to);
// (wl) steps adding `add` to component c of d's conclusion; (cl) steps removing `drop`.
DerivationPtr weaken_left(DerivationPtr d, Component c, const FormulaBag& add);
DerivationPtr contract_left(DerivationPtr d, Component c, const FormulaBag& drop);

// Repeated (ec) then (ew) from d's conclusion to `target`; requires every
// component of d's conclusion to occur in target.  Throws std::logic_error.
DerivationPtr reshape(DerivationPtr d, const Hypersequent& target);

std::optional<Match> match_node(const Derivation& d, const CheckOptions& opts, std::string* why);

}  // namespace godel::hyper
