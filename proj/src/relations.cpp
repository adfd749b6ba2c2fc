#include "godel/relations.hpp"

#include <algorithm>

namespace godel {

int compare(const Relation& a, const Relation& b) {
    if (int c = compare(a.lhs, b.lhs)) return c;
    if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
    return compare(a.rhs, b.rhs);
}

std::string render(const Relation& r) {
    return render(r.lhs) + (r.kind == RelKind::Le ? " <= " : " < ") + render(r.rhs);
}

Sequent::Sequent(std::initializer_list<Relation> rels) : Sequent(std::vector<Relation>(rels)) {}

Sequent::Sequent(std::vector<Relation> rels) : rels_(std::move(rels)) {
    std::sort(rels_.begin(), rels_.end());
    rels_.erase(std::unique(rels_.begin(), rels_.end()), rels_.end());
}

bool Sequent::insert(const Relation& r) {
    auto it = std::lower_bound(rels_.begin(), rels_.end(), r);
    if (it != rels_.end() && *it == r) return false;
    rels_.insert(it, r);
    return true;
}

bool Sequent::erase(const Relation& r) {
    auto it = std::lower_bound(rels_.begin(), rels_.end(), r);
    if (it == rels_.end() || *it != r) return false;
    rels_.erase(it);
    return true;
}

bool Sequent::contains(const Relation& r) const {
    return std::binary_search(rels_.begin(), rels_.end(), r);
}

Sequent Sequent::with(const Relation& r) const {
    Sequent s = *this;
    s.insert(r);
    return s;
}

Sequent Sequent::without(const Relation& r) const {
    Sequent s = *this;
    s.erase(r);
    return s;
}

bool Sequent::operator<(const Sequent& o) const {
    return std::lexicographical_compare(rels_.begin(), rels_.end(), o.rels_.begin(), o.rels_.end());
}

std::size_t Sequent::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const Relation& r : rels_) {
        h = (h ^ r.lhs->hash) * 0x100000001b3ULL;
        h = (h ^ static_cast<std::uint64_t>(r.kind)) * 0x100000001b3ULL;
        h = (h ^ r.rhs->hash) * 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
}

int Sequent::modal_degree() const {
    int d = 0;
    for (const Relation& r : rels_) d = std::max({d, r.lhs->modal_degree, r.rhs->modal_degree});
    return d;
}

std::string render(const Sequent& s) {
    std::string out;
    for (const Relation& r : s) {
        if (!out.empty()) out += " ; ";
        out += render(r);
    }
    return out;
}

Sequent parse_sequent(std::string_view text) {
    using namespace syntax;
    Parser p(lex(text));
    if (p.done()) throw ParseError("empty input", 0);
    std::vector<Relation> rels;
    while (true) {
        Formula a = p.formula();
        RelKind k;
        if (p.at(Tok::Le)) k = RelKind::Le;
        else if (p.at(Tok::Lt)) k = RelKind::Lt;
        else throw ParseError("relation missing comparator '<=' or '<'", p.peek().pos);
        p.next();
        Formula b = p.formula();
        rels.push_back({a, k, b});
        if (p.done()) break;
        p.expect(Tok::Semi, "';' between relations");
    }
    return Sequent(std::move(rels));
}

Formula interp_sequent(const Sequent& s) {
    Formula ante = nullptr;
    Formula cons = nullptr;
    for (const Relation& r : s) {
        if (r.kind == RelKind::Lt) {
            Formula f = imp(r.rhs, r.lhs);
            ante = ante ? conj(ante, f) : f;
        } else {
            Formula f = imp(r.lhs, r.rhs);
            cons = cons ? disj(cons, f) : f;
        }
    }
    return imp(ante ? ante : top(), cons ? cons : bot());
}

Sequent sequent_of_formula(Formula f) { return Sequent{le(top(), f)}; }

std::vector<Relation> expand_block(const std::vector<Formula>& side, RelKind kind, Formula other,
                                   Orientation orientation) {
    std::vector<Relation> out;
    if (side.empty()) {
        // [] <= B is ⊤ <= B, A <= [] is A <= ⊥; the strict versions are empty.
        if (kind == RelKind::Le) {
            if (orientation == Orientation::ListLeft) out.push_back(le(top(), other));
            else out.push_back(le(other, bot()));
        }
        return out;
    }
    for (Formula f : side) {
        if (orientation == Orientation::ListLeft) out.push_back({f, kind, other});
        else out.push_back({other, kind, f});
    }
    return out;
}

bool is_quasi_atom(Formula f) { return is_atom(f) || is_modal(f); }

bool is_quasi_atomic(const Sequent& s) {
    return std::all_of(s.begin(), s.end(), [](const Relation& r) {
        return is_quasi_atom(r.lhs) && is_quasi_atom(r.rhs);
    });
}

bool is_atomic(const Sequent& s) {
    return std::all_of(s.begin(), s.end(), [](const Relation& r) { return is_atom(r.lhs) && is_atom(r.rhs); });
}

bool in_fragment(const Sequent& s, Logic logic) {
    return std::all_of(s.begin(), s.end(), [&](const Relation& r) {
        return in_fragment(r.lhs, logic) && in_fragment(r.rhs, logic);
    });
}

Abstraction abstract_modals(const Sequent& s) {
    Abstraction a;
    int counter = 0;
    auto fresh = [&](Formula m) -> Formula {
        if (!is_modal(m)) return m;
        auto it = a.forward.find(m);
        if (it != a.forward.end()) return it->second;
        // Leading underscore cannot be produced by the parser, so no clash with user variables.
        std::string name = "_m" + std::to_string(counter++);
        Formula v = var(name);
        a.forward.emplace(m, v);
        a.backward.emplace(name, m);
        return v;
    };
    // Number the modal formulas in sorted order so the names are deterministic.
    std::set<Formula, FormulaLess> modals;
    for (const Relation& r : s) {
        if (!is_quasi_atom(r.lhs) || !is_quasi_atom(r.rhs))
            throw std::invalid_argument("abstract_modals: sequent is not quasi-atomic: " + render(r));
        if (is_modal(r.lhs)) modals.insert(r.lhs);
        if (is_modal(r.rhs)) modals.insert(r.rhs);
    }
    for (Formula m : modals) fresh(m);
    std::vector<Relation> out;
    for (const Relation& r : s) out.push_back({fresh(r.lhs), r.kind, fresh(r.rhs)});
    a.sequent = Sequent(std::move(out));
    return a;
}

Sequent concretize(const Sequent& s, const Abstraction& a) {
    auto back = [&](Formula f) {
        if (f->op != Op::Var) return f;
        auto it = a.backward.find(f->name);
        return it == a.backward.end() ? f : it->second;
    };
    std::vector<Relation> out;
    for (const Relation& r : s) out.push_back({back(r.lhs), r.kind, back(r.rhs)});
    return Sequent(std::move(out));
}

namespace {

bool is_const(Formula f) { return f->op == Op::Bot || f->op == Op::Top; }

template <class T>
void sort_unique(std::vector<T>& v) {
    if constexpr (std::is_same_v<T, Formula>) {
        std::sort(v.begin(), v.end(), FormulaLess{});
    } else {
        std::sort(v.begin(), v.end(), [](const T& x, const T& y) {
            if (int c = compare(x.first, y.first)) return c < 0;
            return compare(x.second, y.second) < 0;
        });
    }
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

ModalPart modal_part(const Sequent& s, Logic logic) {
    if (logic == Logic::G) throw std::invalid_argument("modal_part: logic g has no modal part");
    const bool boxes = logic == Logic::GKBox;
    const Op mop = boxes ? Op::Box : Op::Dia;
    ModalPart m;
    for (const Relation& r : s) {
        Formula a = r.lhs;
        Formula b = r.rhs;
        auto member = [&](Formula f) { return is_const(f) || is_modal(f); };
        if (!member(a) || !member(b)) continue;  // mixes in a variable: not modal part
        if ((is_modal(a) && a->op != mop) || (is_modal(b) && b->op != mop))
            throw ShapeError("modal_part: wrong modality for " + std::string(logic_name(logic)) + ": " + render(r));
        const bool strict = r.kind == RelKind::Lt;
        if (strict && (b->op == Op::Bot || a->op == Op::Top)) continue;  // dead disjunct
        if (!strict && a->op == Op::Top && b->op == Op::Bot) continue;   // ⊤ ≤ ⊥, dead
        if (boxes) {
            if (strict) continue;
            if (is_modal(a) && is_modal(b)) m.boxBox.emplace_back(a->l, b->l);
            else if (is_modal(a) && b->op == Op::Bot) m.boxBot.push_back(a->l);
            else if (a->op == Op::Top && is_modal(b)) m.boxBox.emplace_back(top(), b->l);
            else throw ShapeError("modal_part: unexpected relation " + render(r));
        } else {
            if (strict) {
                if (is_modal(a)) continue;
                if (a->op == Op::Bot && is_modal(b)) m.diaLow.push_back(b->l);
                else throw ShapeError("modal_part: unexpected relation " + render(r));
                continue;
            }
            if (is_modal(a) && is_modal(b)) m.diaDia.emplace_back(a->l, b->l);
            else if (is_modal(a) && b->op == Op::Bot) m.diaDia.emplace_back(a->l, bot());
            else if (a->op == Op::Top && is_modal(b)) {
                if (logic == Logic::GKDia) m.diaHigh.push_back(b->l);
            } else throw ShapeError("modal_part: unexpected relation " + render(r));
        }
    }
    sort_unique(m.boxBox);
    sort_unique(m.boxBot);
    sort_unique(m.diaDia);
    sort_unique(m.diaLow);
    sort_unique(m.diaHigh);
    return m;
}

}  // namespace godel
