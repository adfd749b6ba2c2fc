#include "godel/hypersequent.hpp"

#include "json.hpp"

#include <functional>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "hyper_internal.hpp"

namespace godel {

using namespace hyper;

FormulaBag make_bag(std::vector<Formula> fs) {
    std::sort(fs.begin(), fs.end(), FormulaLess{});
    return fs;
}

int compare(const Component& a, const Component& b) {
    const std::size_t n = std::min(a.left.size(), b.left.size());
    for (std::size_t i = 0; i < n; ++i)
        if (int c = compare(a.left[i], b.left[i])) return c;
    if (a.left.size() != b.left.size()) return a.left.size() < b.left.size() ? -1 : 1;
    if (!a.right || !b.right) return a.right ? 1 : b.right ? -1 : 0;
    return compare(a.right, b.right);
}

Component make_component(std::vector<Formula> left, Formula right) {
    return Component{make_bag(std::move(left)), right};
}

Hypersequent make_hyper(std::vector<Component> comps) {
    std::sort(comps.begin(), comps.end(), CompLess{});
    return Hypersequent{std::move(comps)};
}

namespace hyper {

FormulaBag bag_repeat(const FormulaBag& a, std::size_t k) {
    FormulaBag out;
    for (std::size_t i = 0; i < k; ++i) out = bag_plus(out, a);
    return out;
}

Comps comps_repeat(const Comps& a, std::size_t k) {
    Comps out;
    for (std::size_t i = 0; i < k; ++i) out = comps_plus(out, a);
    return out;
}

std::optional<std::string> axiom_of(const Component& c) {
    if (c.left.size() == 1 && c.right == c.left[0]) return "id";
    for (Formula f : c.left)
        if (f->op == Op::Bot) return "bot-l";
    if (c.right && c.right->op == Op::Top) return "top-r";
    return std::nullopt;
}

std::optional<std::string> axiom_of(const Comps& h) {
    for (const Component& c : h)
        if (auto r = axiom_of(c)) return r;
    return std::nullopt;
}

DerivationPtr reshape(DerivationPtr d, const Hypersequent& target) {
    const Comps& T = target.comps;
    while (true) {
        const Comps& X = d->conclusion.comps;
        Comps next;
        bool shrink = false;
        for (std::size_t i = 0; i < X.size();) {
            std::size_t j = i;
            while (j < X.size() && X[j] == X[i]) ++j;
            const std::size_t have = j - i;
            const std::size_t want = comps_count(T, X[i]);
            if (want == 0) throw std::logic_error("reshape: component '" + render(X[i]) + "' not in target");
            std::size_t keep = have;
            if (have > want) {
                keep = std::max(want, (have + 1) / 2);
                shrink = true;
            }
            next.insert(next.end(), keep, X[i]);
            i = j;
        }
        if (!shrink) break;
        d = derive("ec", Hypersequent{std::move(next)}, {d});
    }
    if (d->conclusion != target) d = derive("ew", target, {d});
    return d;
}

}  // namespace hyper

// ---------------------------------------------------------------------------
// Text syntax

namespace {

bool has_toplevel_bar(const std::string& s) {
    int depth = 0;
    for (char c : s) {
        if (c == '(') ++depth;
        else if (c == ')') --depth;
        else if (c == '|' && depth == 0) return true;
    }
    return false;
}

std::string render_in_component(Formula f) {
    std::string s = render(f);
    return has_toplevel_bar(s) ? "(" + s + ")" : s;
}

}  // namespace

std::string render(const Component& c) {
    std::string out;
    for (std::size_t i = 0; i < c.left.size(); ++i) {
        if (i) out += ", ";
        out += render_in_component(c.left[i]);
    }
    out += out.empty() ? "=>" : " =>";
    if (c.right) out += " " + render_in_component(c.right);
    return out;
}

std::string render(const Hypersequent& h) {
    std::string out;
    for (std::size_t i = 0; i < h.comps.size(); ++i) {
        if (i) out += " | ";
        out += render(h.comps[i]);
    }
    return out;
}

Hypersequent parse_hypersequent(std::string_view text) {
    using namespace syntax;
    std::vector<Token> toks = lex(text);
    const Token end = toks.back();
    toks.pop_back();
    if (toks.empty()) throw ParseError("empty hypersequent", 0);

    std::vector<std::vector<Token>> pieces(1);
    std::vector<Token> bars;  // separator preceding piece i+1
    int depth = 0;
    for (const Token& t : toks) {
        if (t.kind == Tok::LParen) ++depth;
        if (t.kind == Tok::RParen) --depth;
        if (t.kind == Tok::Or && depth == 0) {
            bars.push_back(t);
            pieces.emplace_back();
            continue;
        }
        pieces.back().push_back(t);
    }
    auto has_arrow = [](const std::vector<Token>& p) {
        return std::any_of(p.begin(), p.end(), [](const Token& t) { return t.kind == Tok::Arrow; });
    };
    // Re-attach pieces without '=>': they are disjuncts of a neighbouring component.
    std::vector<std::vector<Token>> merged;
    std::vector<Token> pending;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        std::vector<Token> p = pieces[i];
        if (!has_arrow(p)) {
            if (!merged.empty() && pending.empty()) {
                merged.back().push_back(bars[i - 1]);
                merged.back().insert(merged.back().end(), p.begin(), p.end());
            } else {
                pending.insert(pending.end(), p.begin(), p.end());
                if (i < bars.size()) pending.push_back(bars[i]);
            }
            continue;
        }
        if (!pending.empty()) {
            pending.insert(pending.end(), p.begin(), p.end());
            p = std::move(pending);
            pending.clear();
        }
        merged.push_back(std::move(p));
    }
    if (!pending.empty()) throw ParseError("component missing '=>'", pending.front().pos);

    std::vector<Component> comps;
    for (std::vector<Token>& p : merged) {
        p.push_back({Tok::End, "", p.empty() ? end.pos : p.back().pos + p.back().text.size()});
        Parser ps(std::move(p));
        std::vector<Formula> left;
        if (!ps.at(Tok::Arrow)) {
            left.push_back(ps.formula());
            while (ps.at(Tok::Comma)) {
                ps.next();
                left.push_back(ps.formula());
            }
        }
        ps.expect(Tok::Arrow, "'=>'");
        Formula right = nullptr;
        if (!ps.done()) right = ps.formula();
        if (!ps.done()) throw ParseError("trailing input '" + ps.peek().text + "' in component", ps.peek().pos);
        comps.push_back(make_component(std::move(left), right));
    }
    return make_hyper(std::move(comps));
}

Formula interp_hyper(const Hypersequent& h) {
    Formula out = nullptr;
    for (const Component& c : h.comps) {
        Formula ante = nullptr;
        for (Formula f : c.left) ante = ante ? conj(ante, f) : f;
        Formula f = imp(ante ? ante : top(), c.right ? c.right : bot());
        out = out ? disj(out, f) : f;
    }
    return out ? out : bot();
}

DerivationPtr derive(std::string rule, Hypersequent conclusion, std::vector<DerivationPtr> premises) {
    return std::make_shared<const Derivation>(Derivation{std::move(rule), std::move(conclusion), std::move(premises)});
}

const std::vector<std::string>& hyper_rule_names() {
    static const std::vector<std::string> names = {
        "id", "bot-l", "top-r", "ec", "ew", "com", "wl", "wr", "cl", "imp-l", "imp-r", "and-l1",
        "and-l2", "and-r", "or-l", "or-r1", "or-r2", "cut", "box", "neg-l", "neg-r", "hyp"};
    return names;
}

// ---------------------------------------------------------------------------
// Schema matching

namespace hyper {
namespace {

int arity(const std::string& rule) {
    static const std::map<std::string, int> a = {
        {"id", 0}, {"bot-l", 0}, {"top-r", 0}, {"hyp", 0}, {"ec", 1}, {"ew", 1}, {"wl", 1}, {"wr", 1},
        {"cl", 1}, {"imp-r", 1}, {"and-l1", 1}, {"and-l2", 1}, {"or-r1", 1}, {"or-r2", 1}, {"box", 1},
        {"neg-l", 1}, {"neg-r", 1}, {"com", 2}, {"imp-l", 2}, {"and-r", 2}, {"or-l", 2}, {"cut", 2}};
    auto it = a.find(rule);
    return it == a.end() ? -1 : it->second;
}

bool same(const Component& a, const FormulaBag& left, Formula right) { return a.left == left && a.right == right; }

// Checks the local schema of a one-component rule; sets the principal formula.
bool local_ok(const std::string& rule, const Component& c, const std::vector<Component>& p, Formula& principal) {
    if (rule == "wl") {
        if (p[0].right != c.right) return false;
        auto d = bag_minus(c.left, p[0].left);
        if (!d || d->size() != 1) return false;
        principal = (*d)[0];
        return true;
    }
    if (rule == "cl") {
        if (p[0].right != c.right) return false;
        auto d = bag_minus(p[0].left, c.left);
        if (!d || d->size() != 1 || bag_count(c.left, (*d)[0]) == 0) return false;
        principal = (*d)[0];
        return true;
    }
    if (rule == "wr") return c.right && !p[0].right && p[0].left == c.left;
    if (rule == "imp-r") {
        if (!c.right || c.right->op != Op::Imp) return false;
        principal = c.right;
        return same(p[0], bag_plus(c.left, c.right->l), c.right->r);
    }
    if (rule == "neg-r") {
        if (!c.right || !is_negation(c.right)) return false;
        principal = c.right;
        return same(p[0], bag_plus(c.left, c.right->l), nullptr);
    }
    if (rule == "and-r") {
        if (!c.right || c.right->op != Op::And) return false;
        principal = c.right;
        return same(p[0], c.left, c.right->l) && same(p[1], c.left, c.right->r);
    }
    if (rule == "or-r1" || rule == "or-r2") {
        if (!c.right || c.right->op != Op::Or) return false;
        principal = c.right;
        return same(p[0], c.left, rule == "or-r1" ? c.right->l : c.right->r);
    }
    if (rule == "cut") {
        Formula a = p[1].right;
        if (!a || p[0].right != c.right) return false;
        auto g1 = bag_minus(p[0].left, a);
        if (!g1 || bag_plus(*g1, p[1].left) != c.left) return false;
        principal = a;
        return true;
    }
    // Left rules: try every candidate principal formula.
    for (std::size_t i = 0; i < c.left.size(); ++i) {
        if (i && c.left[i] == c.left[i - 1]) continue;
        Formula f = c.left[i];
        FormulaBag rest = *bag_minus(c.left, f);
        bool ok = false;
        if (rule == "and-l1" || rule == "and-l2") {
            ok = f->op == Op::And && same(p[0], bag_plus(rest, rule == "and-l1" ? f->l : f->r), c.right);
        } else if (rule == "or-l") {
            ok = f->op == Op::Or && same(p[0], bag_plus(rest, f->l), c.right) && same(p[1], bag_plus(rest, f->r), c.right);
        } else if (rule == "imp-l") {
            ok = f->op == Op::Imp && same(p[0], rest, f->l) && same(p[1], bag_plus(rest, f->r), c.right);
        } else if (rule == "neg-l") {
            ok = is_negation(f) && !c.right && same(p[0], rest, f->l);
        }
        if (ok) {
            principal = f;
            return true;
        }
    }
    return false;
}

bool is_boxed(const FormulaBag& b) {
    return std::all_of(b.begin(), b.end(), [](Formula f) { return f->op == Op::Box; });
}

FormulaBag unbox(const FormulaBag& b) {
    std::vector<Formula> out;
    for (Formula f : b) out.push_back(f->l);
    return make_bag(std::move(out));
}

// Splits for (com): per formula, Γ1+Γ2 = c1, Π1+Π2 = c2, Γ1+Π1 = p1, Γ2+Π2 = p2.
bool com_split(Match& m) {
    std::vector<Formula> all;
    for (const FormulaBag* b : {&m.c1.left, &m.c2.left, &m.p1.left, &m.p2.left}) all.insert(all.end(), b->begin(), b->end());
    all = mdistinct(make_bag(std::move(all)), FormulaLess{});
    m.g1.clear();
    m.g2.clear();
    m.pi1.clear();
    m.pi2.clear();
    for (Formula x : all) {
        const long a = static_cast<long>(bag_count(m.c1.left, x));
        const long b = static_cast<long>(bag_count(m.c2.left, x));
        const long u = static_cast<long>(bag_count(m.p1.left, x));
        const long v = static_cast<long>(bag_count(m.p2.left, x));
        if (a + b != u + v) return false;
        const long lo = std::max(0L, u - b);
        if (lo > std::min(a, u)) return false;
        const long g1 = lo, g2 = a - g1, p1 = u - g1, p2 = b - p1;
        m.g1.insert(m.g1.end(), g1, x);
        m.g2.insert(m.g2.end(), g2, x);
        m.pi1.insert(m.pi1.end(), p1, x);
        m.pi2.insert(m.pi2.end(), p2, x);
    }
    return true;
}

}  // namespace

std::optional<Match> match_node(const Derivation& d, const CheckOptions& opts, std::string* why) {
    auto fail = [&](const std::string& msg) -> std::optional<Match> {
        if (why) *why = msg;
        return std::nullopt;
    };
    const std::string& rule = d.rule;
    const int n = arity(rule);
    if (n < 0) return fail("unknown rule '" + rule + "'");
    if (static_cast<int>(d.premises.size()) != n)
        return fail("rule " + rule + " expects " + std::to_string(n) + " premise(s), got " +
                    std::to_string(d.premises.size()));
    for (const DerivationPtr& p : d.premises)
        if (!p) return fail("null premise");
    const Comps& C = d.conclusion.comps;
    Match m;

    if (rule == "hyp") {
        if (!opts.allow_hyp) return fail("open assumption");
        m.kind = Match::Kind::Hyp;
        return m;
    }
    if (rule == "id" || rule == "bot-l" || rule == "top-r") {
        for (const Component& c : C) {
            if (axiom_of(c) == rule || (rule == "bot-l" && bag_count(c.left, bot()) > 0) ||
                (rule == "top-r" && c.right == top()) || (rule == "id" && c.left.size() == 1 && c.left[0] == c.right)) {
                m.kind = Match::Kind::Axiom;
                m.active = c;
                m.context = *comps_minus(C, c);
                return m;
            }
        }
        return fail("no component is an instance of " + rule);
    }
    if (rule == "ew") {
        if (!comps_subset(d.premises[0]->conclusion.comps, C)) return fail("ew: premise is not contained in the conclusion");
        m.kind = Match::Kind::Ew;
        return m;
    }
    if (rule == "ec") {
        const Comps& P = d.premises[0]->conclusion.comps;
        auto extra = comps_minus(P, C);
        if (!extra || !comps_subset(*extra, C)) return fail("ec: premise is not the conclusion with duplicated components");
        m.kind = Match::Kind::Ec;
        return m;
    }
    if (rule == "box") {
        if (!opts.modal) return fail("box rule not permitted in this calculus");
        if (C.size() != 2) return fail("box: conclusion must have exactly two components");
        const Component* withr = nullptr;
        const Component* without = nullptr;
        for (const Component& c : C) (c.right ? withr : without) = &c;
        if (!withr || !without) return fail("box: need one component with and one without a right formula");
        if (withr->right->op != Op::Box || !is_boxed(withr->left) || !is_boxed(without->left))
            return fail("box: all formulas of the conclusion must be boxed");
        Hypersequent want = make_hyper({Component{unbox(without->left), nullptr}, Component{unbox(withr->left), withr->right->l}});
        if (d.premises[0]->conclusion != want) return fail("box: premise must be " + render(want));
        m.kind = Match::Kind::Box;
        return m;
    }
    if (rule == "com") {
        const Comps& P1 = d.premises[0]->conclusion.comps;
        const Comps& P2 = d.premises[1]->conclusion.comps;
        for (std::size_t i = 0; i < C.size(); ++i) {
            if (i && C[i] == C[i - 1]) continue;
            for (std::size_t j = 0; j < C.size(); ++j) {
                if (j == i || (j && j - 1 != i && C[j] == C[j - 1])) continue;
                Comps G = *comps_minus(*comps_minus(C, C[i]), C[j]);
                auto r1 = comps_minus(P1, G);
                auto r2 = comps_minus(P2, G);
                if (!r1 || !r2 || r1->size() != 1 || r2->size() != 1) continue;
                m.c1 = C[i];
                m.c2 = C[j];
                m.p1 = (*r1)[0];
                m.p2 = (*r2)[0];
                if (m.c1.right != m.p1.right || m.c2.right != m.p2.right) continue;
                if (!com_split(m)) continue;
                m.kind = Match::Kind::Com;
                m.context = std::move(G);
                return m;
            }
        }
        return fail("com: no pair of components splits correctly");
    }
    // One active component in the conclusion and in each premise.
    for (std::size_t i = 0; i < C.size(); ++i) {
        if (i && C[i] == C[i - 1]) continue;
        Comps G = *comps_minus(C, C[i]);
        std::vector<Component> prem;
        bool ok = true;
        for (const DerivationPtr& p : d.premises) {
            auto r = comps_minus(p->conclusion.comps, G);
            if (!r || r->size() != 1) {
                ok = false;
                break;
            }
            prem.push_back((*r)[0]);
        }
        if (!ok) continue;
        Formula principal = nullptr;
        if (!local_ok(rule, C[i], prem, principal)) continue;
        m.kind = Match::Kind::Single;
        m.context = std::move(G);
        m.active = C[i];
        m.prem = std::move(prem);
        m.principal = principal;
        return m;
    }
    return fail(rule + ": no component matches the rule schema");
}

}  // namespace hyper

// ---------------------------------------------------------------------------
// Checker and utilities

bool check_derivation(const DerivationPtr& d, const CheckOptions& opts, std::string* why) {
    if (!d) {
        if (why) *why = "empty derivation";
        return false;
    }
    std::unordered_set<const Derivation*> ok;
    std::vector<std::pair<const Derivation*, bool>> stack{{d.get(), false}};
    while (!stack.empty()) {
        auto [node, expanded] = stack.back();
        stack.pop_back();
        if (ok.count(node)) continue;
        if (!expanded) {
            std::string msg;
            if (!match_node(*node, opts, &msg)) {
                if (why) *why = "at node '" + node->rule + "' with conclusion '" + render(node->conclusion) + "': " + msg;
                return false;
            }
            stack.push_back({node, true});
            for (const DerivationPtr& p : node->premises) stack.push_back({p.get(), false});
        } else {
            ok.insert(node);
        }
    }
    return true;
}

namespace {

// Tree-size style counts over a DAG with shared subtrees.
std::size_t tree_count(const DerivationPtr& d, const std::function<bool(const Derivation&)>& pred) {
    std::unordered_map<const Derivation*, std::size_t> memo;
    std::function<std::size_t(const Derivation*)> go = [&](const Derivation* n) -> std::size_t {
        auto it = memo.find(n);
        if (it != memo.end()) return it->second;
        std::size_t k = pred(*n) ? 1 : 0;
        for (const DerivationPtr& p : n->premises) k += go(p.get());
        memo.emplace(n, k);
        return k;
    };
    return d ? go(d.get()) : 0;
}

}  // namespace

std::size_t derivation_size(const DerivationPtr& d) {
    return tree_count(d, [](const Derivation&) { return true; });
}

std::size_t count_rule(const DerivationPtr& d, const std::string& rule) {
    return tree_count(d, [&](const Derivation& n) { return n.rule == rule; });
}

DerivationPtr expand_negation(const DerivationPtr& d) {
    std::unordered_map<const Derivation*, DerivationPtr> memo;
    std::function<DerivationPtr(const DerivationPtr&)> go = [&](const DerivationPtr& n) -> DerivationPtr {
        auto it = memo.find(n.get());
        if (it != memo.end()) return it->second;
        std::vector<DerivationPtr> prem;
        bool changed = false;
        for (const DerivationPtr& p : n->premises) {
            prem.push_back(go(p));
            changed = changed || prem.back() != p;
        }
        DerivationPtr out = changed ? derive(n->rule, n->conclusion, prem) : n;
        if (n->rule == "neg-l" || n->rule == "neg-r") {
            std::string why;
            auto m = match_node(*n, CheckOptions{true, true}, &why);
            if (!m) throw std::invalid_argument("expand_negation: " + why);
            const Comps& G = m->context;
            const Component& c = m->active;
            if (n->rule == "neg-l") {
                // Γ,¬A ⇒ from Γ ⇒ A and the axiom Γ,⊥ ⇒.
                FormulaBag rest = *bag_minus(c.left, m->principal);
                Hypersequent botc = make_hyper(comps_plus(G, Component{bag_plus(rest, bot()), nullptr}));
                out = derive("imp-l", n->conclusion, {prem[0], derive("bot-l", botc)});
            } else {
                Formula a = c.right->l;
                Hypersequent mid = make_hyper(comps_plus(G, Component{bag_plus(c.left, a), bot()}));
                out = derive("imp-r", n->conclusion, {derive("wr", mid, {prem[0]})});
            }
        }
        memo.emplace(n.get(), out);
        return out;
    };
    return go(d);
}

// ---------------------------------------------------------------------------
// (□)^n

namespace {

FormulaBag boxed(const FormulaBag& b) {
    std::vector<Formula> out;
    for (Formula f : b) out.push_back(box(f));
    return make_bag(std::move(out));
}

}  // namespace

namespace hyper {

Hypersequent replace_comp(const Hypersequent& h, const Component& from, const Component& to) {
    return make_hyper(comps_plus(*comps_minus(h.comps, from), to));
}

DerivationPtr weaken_left(DerivationPtr d, Component c, const FormulaBag& add) {
    for (Formula f : add) {
        Component next{bag_plus(c.left, f), c.right};
        d = derive("wl", replace_comp(d->conclusion, c, next), {d});
        c = std::move(next);
    }
    return d;
}

DerivationPtr contract_left(DerivationPtr d, Component c, const FormulaBag& drop) {
    for (Formula f : drop) {
        Component next{*bag_minus(c.left, f), c.right};
        d = derive("cl", replace_comp(d->conclusion, c, next), {d});
        c = std::move(next);
    }
    return d;
}

}  // namespace hyper

DerivationPtr derive_box_n(const std::vector<FormulaBag>& pis_in, const FormulaBag& gamma_in, Formula a,
                           DerivationPtr premise) {
    std::vector<FormulaBag> pis;
    for (const FormulaBag& p : pis_in) pis.push_back(make_bag(p));
    const FormulaBag gamma = make_bag(gamma_in);
    const Component main{gamma, a};
    std::vector<Component> start{main};
    for (const FormulaBag& p : pis) start.push_back(Component{p, nullptr});
    Hypersequent from = make_hyper(start);
    if (!premise) premise = derive("hyp", from);
    if (premise->conclusion != from) throw std::invalid_argument("derive_box_n: premise does not match");

    const Component boxed_main{boxed(gamma), box(a)};
    if (pis.empty()) {
        // Γ⇒A, then Γ⇒ | Γ⇒A, then □Γ⇒ | □Γ⇒□A, then two copies of □Γ⇒□A.
        Component side{gamma, nullptr};
        DerivationPtr d = derive("ew", make_hyper({side, main}), {premise});
        d = derive("box", make_hyper({Component{boxed(gamma), nullptr}, boxed_main}), {d});
        d = derive("wr", make_hyper({boxed_main, boxed_main}), {d});
        return derive("ec", make_hyper({boxed_main}), {d});
    }
    if (pis.size() == 1) {
        return derive("box", make_hyper({Component{boxed(pis[0]), nullptr}, boxed_main}), {premise});
    }
    // Weaken every Πi⇒ to Π1,…,Πn⇒ and contract them into one component.
    FormulaBag all;
    for (const FormulaBag& p : pis) all = bag_plus(all, p);
    DerivationPtr d = premise;
    for (const FormulaBag& p : pis) {
        Component c{p, nullptr};
        d = weaken_left(d, c, *bag_minus(all, p));
    }
    const Component big{all, nullptr};
    d = reshape(d, make_hyper({big, main}));
    const Component bigbox{boxed(all), nullptr};
    d = derive("box", make_hyper({bigbox, boxed_main}), {d});
    // Split off one □Πi at a time with (com) against a copy of itself, then (cl).
    FormulaBag remaining = boxed(all);
    for (std::size_t i = 0; i + 1 < pis.size(); ++i) {
        const FormulaBag head = boxed(pis[i]);
        const FormulaBag tail = *bag_minus(remaining, head);
        Component whole{remaining, nullptr};
        Component c1{bag_plus(head, head), nullptr};
        Component c2{bag_plus(tail, tail), nullptr};
        Comps G = *comps_minus(d->conclusion.comps, whole);
        d = derive("com", make_hyper(comps_plus(comps_plus(G, c1), c2)), {d, d});
        d = contract_left(d, c1, head);
        d = contract_left(d, c2, tail);
        remaining = tail;
    }
    return d;
}

// ---------------------------------------------------------------------------
// Fixtures

namespace {

Hypersequent H(const char* s) { return parse_hypersequent(s); }

}  // namespace

DerivationPtr prelinearity_derivation() {
    DerivationPtr idp = derive("id", H("p => p"));
    DerivationPtr idq = derive("id", H("q => q"));
    DerivationPtr d = derive("com", H("p => q | q => p"), {idp, idq});
    d = derive("imp-r", H("p => q | => q -> p"), {d});
    d = derive("imp-r", H("=> p -> q | => q -> p"), {d});
    d = derive("or-r2", H("=> p -> q | => (p -> q) | (q -> p)"), {d});
    d = derive("or-r1", H("=> (p -> q) | (q -> p) | => (p -> q) | (q -> p)"), {d});
    return derive("ec", H("=> (p -> q) | (q -> p)"), {d});
}

DerivationPtr z_box_derivation() {
    DerivationPtr idp = derive("id", H("p => p"));
    DerivationPtr neg = derive("neg-l", H("p, ~p =>"), {idp});
    DerivationPtr d = derive("com", H("p, p => | ~p, ~p =>"), {neg, neg});
    d = derive("cl", H("p, p => | ~p =>"), {d});
    d = derive("cl", H("p => | ~p =>"), {d});
    d = derive("neg-r", H("p => | => ~~p"), {d});
    d = derive("box", H("[]p => | => []~~p"), {d});
    d = derive("neg-r", H("=> ~[]p | => []~~p"), {d});
    d = derive("neg-l", H("~~[]p => | => []~~p"), {d});
    d = derive("wl", H("~~[]p => | ~~[]p => []~~p"), {d});
    d = derive("wr", H("~~[]p => []~~p | ~~[]p => []~~p"), {d});
    d = derive("ec", H("~~[]p => []~~p"), {d});
    return derive("imp-r", H("=> ~~[]p -> []~~p"), {d});
}

// ---------------------------------------------------------------------------
// JSON

namespace {

nlohmann::json node_to_json(const DerivationPtr& d) {
    nlohmann::json prem = nlohmann::json::array();
    for (const DerivationPtr& p : d->premises) prem.push_back(node_to_json(p));
    return {{"rule", d->rule}, {"conclusion", render(d->conclusion)}, {"premises", prem}};
}

DerivationPtr node_from_json(const nlohmann::json& j, const std::string& path) {
    if (!j.is_object()) throw std::invalid_argument(path + ": expected an object");
    if (!j.contains("rule") || !j["rule"].is_string()) throw std::invalid_argument(path + ": missing string 'rule'");
    if (!j.contains("conclusion") || !j["conclusion"].is_string())
        throw std::invalid_argument(path + ": missing string 'conclusion'");
    Hypersequent h;
    try {
        h = parse_hypersequent(j["conclusion"].get<std::string>());
    } catch (const ParseError& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
    std::vector<DerivationPtr> prem;
    if (j.contains("premises")) {
        if (!j["premises"].is_array()) throw std::invalid_argument(path + ": 'premises' must be an array");
        for (std::size_t i = 0; i < j["premises"].size(); ++i)
            prem.push_back(node_from_json(j["premises"][i], path + ".premises[" + std::to_string(i) + "]"));
    }
    return derive(j["rule"].get<std::string>(), std::move(h), std::move(prem));
}

}  // namespace

std::string derivation_to_json(const DerivationPtr& d) { return node_to_json(d).dump(2); }

DerivationPtr derivation_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
    }
    return node_from_json(j, "$");
}

}  // namespace godel
