#include "godel/prover.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"

namespace godel {

namespace {

bool compound(Formula f) { return f->op == Op::And || f->op == Op::Or || f->op == Op::Imp; }

}  // namespace

std::optional<RuleApplication> apply_logical_rule(const std::string& rule, const Relation& p) {
    const Formula L = p.lhs;
    const Formula R = p.rhs;
    const RelKind k = p.kind;
    RuleApplication out{rule, {}};
    if (rule == "and-l" && L->op == Op::And) {
        out.premises = {{{L->l, k, R}, {L->r, k, R}}};
    } else if (rule == "and-r" && R->op == Op::And) {
        out.premises = {{{L, k, R->l}}, {{L, k, R->r}}};
    } else if (rule == "or-l" && L->op == Op::Or) {
        out.premises = {{{L->l, k, R}}, {{L->r, k, R}}};
    } else if (rule == "or-r" && R->op == Op::Or) {
        out.premises = {{{L, k, R->l}, {L, k, R->r}}};
    } else if (rule == "imp-lt" && L->op == Op::Imp && k == RelKind::Lt) {
        // A→B < C
        out.premises = {{lt(L->r, L->l)}, {lt(L->r, R)}};
    } else if (rule == "lt-imp" && R->op == Op::Imp && k == RelKind::Lt) {
        // C < A→B
        out.premises = {{le(R->l, R->r), lt(L, R->r)}, {lt(L, top())}};
    } else if (rule == "imp-le" && L->op == Op::Imp && k == RelKind::Le) {
        // A→B ≤ C
        out.premises = {{le(top(), R), lt(L->r, L->l)}, {le(L->r, R)}};
    } else if (rule == "le-imp" && R->op == Op::Imp && k == RelKind::Le) {
        // C ≤ A→B
        out.premises = {{le(R->l, R->r), le(L, R->r)}};
    } else {
        return std::nullopt;
    }
    return out;
}

std::optional<RuleApplication> logical_rule_for(const Relation& r) {
    auto name = [&](Formula f, bool left) -> std::string {
        switch (f->op) {
        case Op::And: return left ? "and-l" : "and-r";
        case Op::Or: return left ? "or-l" : "or-r";
        case Op::Imp:
            if (r.kind == RelKind::Lt) return left ? "imp-lt" : "lt-imp";
            return left ? "imp-le" : "le-imp";
        default: return "";
        }
    };
    if (compound(r.lhs)) return apply_logical_rule(name(r.lhs, true), r);
    if (compound(r.rhs)) return apply_logical_rule(name(r.rhs, false), r);
    return std::nullopt;
}

namespace {

std::optional<Relation> first_compound(const Sequent& s) {
    for (const Relation& r : s)
        if (compound(r.lhs) || compound(r.rhs)) return r;
    return std::nullopt;
}

Sequent premise_of(const Sequent& s, const Relation& principal, const std::vector<Relation>& adds) {
    Sequent p = s.without(principal);
    for (const Relation& r : adds) p.insert(r);
    return p;
}

}  // namespace

std::vector<Sequent> decompose(const Sequent& s) {
    std::set<Sequent> out;
    std::vector<Sequent> stack{s};
    while (!stack.empty()) {
        Sequent cur = std::move(stack.back());
        stack.pop_back();
        auto p = first_compound(cur);
        if (!p) {
            out.insert(cur);
            continue;
        }
        auto app = logical_rule_for(*p);
        for (const auto& adds : app->premises) stack.push_back(premise_of(cur, *p, adds));
    }
    return {out.begin(), out.end()};
}

int modal_nesting(const Sequent& s) {
    int d = 0;
    for (const Relation& r : s) d = std::max({d, r.lhs->nesting, r.rhs->nesting});
    return d;
}

std::vector<Sequent> box_premises(const ModalPart& m, const std::vector<int>& J) {
    std::vector<Sequent> out;
    for (int k : J) {
        Sequent p;
        for (int i : J) p.insert(le(m.boxBox[i].first, m.boxBox[k].second));
        for (Formula c : m.boxBot) p.insert(le(c, bot()));
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<Sequent> dia_premises(const ModalPart& m, Logic logic, const std::vector<int>& J) {
    std::vector<Sequent> out;
    for (int j : J) {
        Sequent p;
        for (int k : J) p.insert(le(m.diaDia[j].first, m.diaDia[k].second));
        for (Formula c : m.diaLow) p.insert(lt(bot(), c));
        if (logic == Logic::GKDia)
            for (Formula d : m.diaHigh) p.insert(le(top(), d));
        out.push_back(std::move(p));
    }
    return out;
}

namespace {

using PremiseFn = std::function<std::vector<Sequent>(const std::vector<int>&)>;

// Greatest fixpoint: drop indices whose premise fails until stable.
std::optional<std::vector<int>> gfp_search(std::size_t n, const PremiseFn& premises, const Recurse& recurse) {
    std::vector<int> J(n);
    for (std::size_t i = 0; i < n; ++i) J[i] = static_cast<int>(i);
    bool changed = true;
    while (changed && !J.empty()) {
        changed = false;
        auto ps = premises(J);
        for (std::size_t i = 0; i < J.size(); ++i) {
            if (!recurse(ps[i])) {
                J.erase(J.begin() + static_cast<long>(i));
                changed = true;
                break;
            }
        }
    }
    if (J.empty()) return std::nullopt;
    return J;
}

std::optional<std::vector<int>> exhaustive_search(std::size_t n, const PremiseFn& premises,
                                                  const Recurse& recurse) {
    if (n >= 63) throw BudgetExceeded("exhaustive J search: index set too large");
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<int> J;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) J.push_back(static_cast<int>(i));
        auto ps = premises(J);
        bool ok = std::all_of(ps.begin(), ps.end(), recurse);
        if (ok) return J;
    }
    return std::nullopt;
}

std::optional<std::vector<int>> j_search(std::size_t n, const PremiseFn& premises, const Recurse& recurse,
                                         ProverConfig::JSearch mode) {
    return mode == ProverConfig::JSearch::Gfp ? gfp_search(n, premises, recurse)
                                              : exhaustive_search(n, premises, recurse);
}

}  // namespace

std::optional<std::vector<int>> leaf_valid_box(const ModalPart& m, const Recurse& recurse,
                                               ProverConfig::JSearch mode) {
    return j_search(m.boxBox.size(), [&](const std::vector<int>& J) { return box_premises(m, J); }, recurse, mode);
}

std::optional<std::vector<int>> leaf_valid_dia(const ModalPart& m, Logic logic, const Recurse& recurse,
                                               ProverConfig::JSearch mode) {
    return j_search(m.diaDia.size(), [&](const std::vector<int>& J) { return dia_premises(m, logic, J); }, recurse,
                    mode);
}

// ---------------------------------------------------------------------------

namespace {

struct Entry {
    Trace trace;  // null when invalid
    std::shared_ptr<const Diagnostic> diag;
};

Trace node(TraceKind kind, const Sequent& s) {
    auto t = std::make_shared<TraceNode>();
    t->kind = kind;
    t->sequent = s;
    return t;
}

class Prover {
public:
    Prover(Logic logic, const ProverConfig& cfg) : logic_(logic), cfg_(cfg) {}

    Entry prove(const Sequent& s) {
        if (auto it = memo_.find(s); it != memo_.end()) {
            ++stats.memo_hits;
            return it->second;
        }
        if (++stats.nodes > cfg_.max_nodes)
            throw BudgetExceeded("search exceeded " + std::to_string(cfg_.max_nodes) + " sequents");
        Entry e = compute(s);
        memo_.emplace(s, e);
        return e;
    }

    ProverStats stats;

private:
    Entry compute(const Sequent& s) {
        if (auto p = first_compound(s)) {
            auto app = logical_rule_for(*p);
            Trace t = node(TraceKind::Decompose, s);
            t->rule = app->rule;
            t->principal = *p;
            for (const auto& adds : app->premises) {
                Entry c = prove(premise_of(s, *p, adds));
                if (!c.trace) return c;
                t->children.push_back(c.trace);
            }
            return {t, nullptr};
        }
        if (auto cert = prop_certificate(s)) {
            Trace t = node(TraceKind::PropLeaf, s);
            t->cert = std::move(*cert);
            return {t, nullptr};
        }
        if (auto step = next_structural_step(s)) {
            Trace t = node(TraceKind::Structural, s);
            t->rule = rule_name(step->rule);
            t->principal = step->first;
            t->second = step->second;
            for (const Sequent& p : step->premises) {
                Entry c = prove(p);
                if (!c.trace) return c;
                t->children.push_back(c.trace);
            }
            return {t, nullptr};
        }
        if (logic_ == Logic::G) return failure(s, "saturated leaf is not propositionally valid");
        return modal_leaf(s);
    }

    Entry modal_leaf(const Sequent& s) {
        ModalPart m = modal_part(s, logic_);
        const bool is_box = logic_ == Logic::GKBox;
        const std::size_t n = is_box ? m.boxBox.size() : m.diaDia.size();
        PremiseFn premises = [&](const std::vector<int>& J) {
            return is_box ? box_premises(m, J) : dia_premises(m, logic_, J);
        };
        if (++depth_ > cfg_.max_depth) throw BudgetExceeded("modal recursion exceeded the depth limit");
        Recurse rec = [&](const Sequent& p) { return prove(p).trace != nullptr; };
        ++stats.leaf_tests;
        auto J = j_search(n, premises, rec, cfg_.jsearch);
        if (cfg_.cross_check) {
            if (n <= cfg_.exhaustive_cap) {
                auto other = j_search(n, premises, rec,
                                      cfg_.jsearch == ProverConfig::JSearch::Gfp ? ProverConfig::JSearch::Exhaustive
                                                                                : ProverConfig::JSearch::Gfp);
                ++stats.cross_checks;
                if (J.has_value() != other.has_value()) ++stats.disagreements;
            } else {
                ++stats.cross_check_skipped;
            }
        }
        --depth_;
        if (!J) return failure(s, "saturated leaf is not propositionally valid and the modal leaf test fails");
        Trace t = node(is_box ? TraceKind::ModalBox : TraceKind::ModalDia, s);
        t->J = *J;
        for (const Sequent& p : premises(*J)) t->children.push_back(prove(p).trace);
        return {t, nullptr};
    }

    Entry failure(const Sequent& s, const std::string& reason) {
        auto d = std::make_shared<Diagnostic>();
        d->leaf = s;
        d->reason = reason;
        Abstraction a = abstract_modals(s);
        if (auto v = counter_valuation(a.sequent)) d->assignment = *v;
        for (const auto& [name, f] : a.backward) d->abstraction[name] = f;
        return {nullptr, d};
    }

    Logic logic_;
    ProverConfig cfg_;
    int depth_ = 0;
    std::unordered_map<Sequent, Entry, SequentHash> memo_;
};

}  // namespace

Verdict decide(Logic logic, const Sequent& s, const ProverConfig& cfg) {
    if (!in_fragment(s, logic))
        throw FragmentError(std::string("input is outside the language of ") + logic_name(logic));
    Prover p(logic, cfg);
    Entry e = p.prove(s);
    Verdict v;
    v.valid = e.trace != nullptr;
    v.trace = e.trace;
    if (e.diag) v.diagnostic = *e.diag;
    v.stats = p.stats;
    return v;
}

Verdict decide_formula(Logic logic, Formula f, const ProverConfig& cfg) {
    return decide(logic, sequent_of_formula(f), cfg);
}

// ---------------------------------------------------------------------------

namespace {

class TraceChecker {
public:
    explicit TraceChecker(Logic logic) : logic_(logic) {}

    bool check(const Trace& t, const Sequent& expected) {
        if (!t) return fail("missing node");
        if (t->sequent != expected) return fail("node sequent differs from the expected premise: " + render(t->sequent));
        if (auto it = done_.find(t.get()); it != done_.end()) return it->second;
        bool ok = check_node(t);
        done_[t.get()] = ok;
        return ok;
    }

    std::string why;

private:
    bool fail(const std::string& msg) {
        if (why.empty()) why = msg;
        return false;
    }

    bool children_match(const Trace& t, const std::vector<Sequent>& premises) {
        if (t->children.size() != premises.size())
            return fail("wrong number of premises at " + render(t->sequent));
        for (std::size_t i = 0; i < premises.size(); ++i)
            if (!check(t->children[i], premises[i])) return false;
        return true;
    }

    bool check_node(const Trace& t) {
        const Sequent& s = t->sequent;
        switch (t->kind) {
        case TraceKind::Decompose: {
            if (!s.contains(t->principal)) return fail("principal relation not in sequent: " + render(t->principal));
            auto app = apply_logical_rule(t->rule, t->principal);
            if (!app) return fail("rule " + t->rule + " does not apply to " + render(t->principal));
            std::vector<Sequent> ps;
            for (const auto& adds : app->premises) ps.push_back(premise_of(s, t->principal, adds));
            return children_match(t, ps);
        }
        case TraceKind::Structural: {
            StructuralStep::Rule r;
            if (t->rule == "cs") r = StructuralStep::Rule::Cs;
            else if (t->rule == "wl") r = StructuralStep::Rule::Wl;
            else if (t->rule == "wr") r = StructuralStep::Rule::Wr;
            else if (t->rule == "com") r = StructuralStep::Rule::Com;
            else return fail("unknown structural rule " + t->rule);
            auto ps = structural_premises(s, r, t->principal, t->second);
            if (!ps) return fail("structural rule " + t->rule + " does not apply at " + render(s));
            return children_match(t, *ps);
        }
        case TraceKind::PropLeaf:
            if (!t->children.empty()) return fail("leaf with premises");
            if (!is_quasi_atomic(s)) return fail("certificate on a non-quasi-atomic sequent");
            if (!check_certificate(s, t->cert)) return fail("certificate rejected at " + render(s));
            return true;
        case TraceKind::ModalBox:
        case TraceKind::ModalDia: {
            const bool box_node = t->kind == TraceKind::ModalBox;
            if (box_node != (logic_ == Logic::GKBox) || logic_ == Logic::G)
                return fail("modal step of the wrong kind for the logic");
            if (!is_quasi_atomic(s) || !is_saturated(s)) return fail("modal step on an unsaturated sequent");
            ModalPart m;
            try {
                m = modal_part(s, logic_);
            } catch (const std::exception& e) {
                return fail(e.what());
            }
            const std::size_t n = box_node ? m.boxBox.size() : m.diaDia.size();
            if (t->J.empty()) return fail("empty index set");
            for (std::size_t i = 0; i < t->J.size(); ++i) {
                if (t->J[i] < 0 || static_cast<std::size_t>(t->J[i]) >= n) return fail("index out of range");
                if (i > 0 && t->J[i] <= t->J[i - 1]) return fail("index set not sorted");
            }
            auto ps = box_node ? box_premises(m, t->J) : dia_premises(m, logic_, t->J);
            const int here = modal_nesting(s);
            for (const Sequent& p : ps)
                if (modal_nesting(p) >= here) return fail("modal step does not reduce modal nesting");
            return children_match(t, ps);
        }
        }
        return fail("unknown node kind");
    }

    Logic logic_;
    std::unordered_map<const TraceNode*, bool> done_;
};

const char* kind_name(TraceKind k) {
    switch (k) {
    case TraceKind::Decompose: return "decompose";
    case TraceKind::Structural: return "structural";
    case TraceKind::PropLeaf: return "prop-leaf";
    case TraceKind::ModalBox: return "modal-box";
    case TraceKind::ModalDia: return "modal-diamond";
    }
    return "?";
}

// Distinct nodes in first-visit preorder.
std::vector<const TraceNode*> nodes_of(const Trace& t) {
    std::vector<const TraceNode*> out;
    std::unordered_set<const TraceNode*> seen;
    std::vector<const TraceNode*> stack{t.get()};
    while (!stack.empty()) {
        const TraceNode* n = stack.back();
        stack.pop_back();
        if (!n || !seen.insert(n).second) continue;
        out.push_back(n);
        for (auto it = n->children.rbegin(); it != n->children.rend(); ++it) stack.push_back(it->get());
    }
    return out;
}

}  // namespace

bool check_trace(Logic logic, const Sequent& s, const Trace& t, std::string* why) {
    TraceChecker c(logic);
    bool ok = c.check(t, s);
    if (why) *why = c.why;
    return ok;
}

std::size_t trace_size(const Trace& t) { return nodes_of(t).size(); }

std::string trace_to_json(const Trace& t) {
    auto nodes = nodes_of(t);
    std::unordered_map<const TraceNode*, std::size_t> id;
    for (std::size_t i = 0; i < nodes.size(); ++i) id[nodes[i]] = i;
    nlohmann::json arr = nlohmann::json::array();
    for (const TraceNode* n : nodes) {
        nlohmann::json j;
        j["id"] = id[n];
        j["kind"] = kind_name(n->kind);
        j["sequent"] = render(n->sequent);
        if (n->kind == TraceKind::Decompose || n->kind == TraceKind::Structural) {
            j["rule"] = n->rule;
            if (n->rule != "cs") j["principal"] = render(n->principal);
            if (n->rule == "com") j["second"] = render(n->second);
        }
        if (n->kind == TraceKind::PropLeaf) {
            nlohmann::json chain = nlohmann::json::array();
            for (const Relation& r : n->cert.chain) chain.push_back(render(r));
            j["certificate"] = {{"condition", n->cert.condition}, {"chain", chain}};
        }
        if (n->kind == TraceKind::ModalBox || n->kind == TraceKind::ModalDia) j["J"] = n->J;
        nlohmann::json kids = nlohmann::json::array();
        for (const Trace& c : n->children) kids.push_back(id[c.get()]);
        j["children"] = kids;
        arr.push_back(j);
    }
    return nlohmann::json{{"root", 0}, {"nodes", arr}}.dump(2);
}

std::string render_trace(const Trace& t) {
    std::ostringstream out;
    std::unordered_map<const TraceNode*, std::size_t> id;
    std::function<void(const Trace&, int)> walk = [&](const Trace& n, int indent) {
        std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
        if (auto it = id.find(n.get()); it != id.end()) {
            out << pad << "(see #" << it->second << ") " << render(n->sequent) << "\n";
            return;
        }
        std::size_t me = id.size();
        id[n.get()] = me;
        out << pad << "#" << me << " " << render(n->sequent) << "\n" << pad << "   by ";
        switch (n->kind) {
        case TraceKind::Decompose:
        case TraceKind::Structural:
            out << n->rule;
            if (n->rule != "cs") out << " on " << render(n->principal);
            if (n->rule == "com") out << ", " << render(n->second);
            break;
        case TraceKind::PropLeaf: {
            out << "chain condition " << n->cert.condition << ":";
            for (const Relation& r : n->cert.chain) out << " [" << render(r) << "]";
            break;
        }
        case TraceKind::ModalBox:
        case TraceKind::ModalDia:
            out << (n->kind == TraceKind::ModalBox ? "box" : "diamond") << " step, J = {";
            for (std::size_t i = 0; i < n->J.size(); ++i) out << (i ? "," : "") << n->J[i];
            out << "}";
            break;
        }
        out << "\n";
        for (const Trace& c : n->children) walk(c, indent + 1);
    };
    walk(t, 0);
    return out.str();
}

std::string diagnostic_to_json(const Diagnostic& d) {
    nlohmann::json j;
    j["leaf"] = render(d.leaf);
    j["reason"] = d.reason;
    nlohmann::json a = nlohmann::json::object();
    for (const auto& [k, q] : d.assignment) a[k] = to_string(q);
    j["assignment"] = a;
    nlohmann::json ab = nlohmann::json::object();
    for (const auto& [k, f] : d.abstraction) ab[k] = render(f);
    j["abstraction"] = ab;
    return j.dump(2);
}

}  // namespace godel
