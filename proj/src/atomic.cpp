#include "godel/atomic.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace godel {

void ConstantTable::bind(const std::string& name, const Rational& value) {
    if (value < 0 || value > 1) throw std::invalid_argument("constant value outside [0,1]");
    extra_[name] = value;
}

bool ConstantTable::is_constant(Formula a) const {
    if (a->op == Op::Top || a->op == Op::Bot) return true;
    return a->op == Op::Var && extra_.count(a->name) > 0;
}

Rational ConstantTable::value(Formula a) const {
    if (a->op == Op::Top) return 1;
    if (a->op == Op::Bot) return 0;
    return extra_.at(a->name);
}

namespace {

// Directed graph over the sides of a sequent; every relation is an edge
// labelled by its kind.  Paths are explored over states (node, saw-≤).
class ChainGraph {
public:
    explicit ChainGraph(const Sequent& s) {
        for (const Relation& r : s) {
            int a = node(r.lhs);
            int b = node(r.rhs);
            out_[a].push_back(edges_.size());
            in_[b].push_back(edges_.size());
            edges_.push_back({a, b, r});
        }
    }

    int find(Formula f) const {
        auto it = index_.find(f);
        return it == index_.end() ? -1 : it->second;
    }
    std::size_t nodes() const { return atoms_.size(); }
    Formula atom(int i) const { return atoms_[i]; }

    struct Reached {
        // parent edge per state, -1 when unreached; state = 2*node + bit
        std::vector<long> via;
        std::vector<int> prev;
    };

    // States reachable from start by at least one edge.
    Reached search(int start, bool forward) const {
        Reached r;
        r.via.assign(2 * atoms_.size(), -1);
        r.prev.assign(2 * atoms_.size(), -1);
        std::deque<int> queue;
        auto relax = [&](int from_state) {
            int n = from_state / 2;
            int bit = from_state % 2;
            const auto& adj = forward ? out_[n] : in_[n];
            for (std::size_t e : adj) {
                const Edge& ed = edges_[e];
                int m = forward ? ed.to : ed.from;
                int nb = bit | (ed.rel.kind == RelKind::Le ? 1 : 0);
                int st = 2 * m + nb;
                if (r.via[st] != -1) continue;
                r.via[st] = static_cast<long>(e);
                r.prev[st] = from_state;
                queue.push_back(st);
            }
        };
        relax(2 * start);
        while (!queue.empty()) {
            int st = queue.front();
            queue.pop_front();
            relax(st);
        }
        return r;
    }

    // Relations along the path to `state`, in chain order.
    std::vector<Relation> path(const Reached& r, int state, int start, bool forward) const {
        std::vector<Relation> out;
        int st = state;
        while (true) {
            out.push_back(edges_[r.via[st]].rel);
            int p = r.prev[st];
            if (p == 2 * start) break;
            st = p;
        }
        if (forward) std::reverse(out.begin(), out.end());
        return out;
    }

private:
    struct Edge {
        int from;
        int to;
        Relation rel;
    };
    int node(Formula f) {
        auto [it, fresh] = index_.emplace(f, static_cast<int>(atoms_.size()));
        if (fresh) {
            atoms_.push_back(f);
            out_.emplace_back();
            in_.emplace_back();
        }
        return it->second;
    }
    std::unordered_map<Formula, int> index_;
    std::vector<Formula> atoms_;
    std::vector<std::vector<std::size_t>> out_, in_;
    std::vector<Edge> edges_;
};

bool has_le(const std::vector<Relation>& chain) {
    return std::any_of(chain.begin(), chain.end(), [](const Relation& r) { return r.kind == RelKind::Le; });
}

std::optional<ChainCertificate> chain_search(const Sequent& s, const ConstantTable& consts) {
    ChainGraph g(s);
    // (1) a cycle through a ≤ edge
    for (const Relation& r : s) {
        if (r.kind != RelKind::Le) continue;
        if (r.lhs == r.rhs) return ChainCertificate{{r}, 1};
        int a = g.find(r.lhs);
        int b = g.find(r.rhs);
        auto reach = g.search(b, true);
        for (int bit = 0; bit < 2; ++bit) {
            if (reach.via[2 * a + bit] == -1) continue;
            std::vector<Relation> chain{r};
            auto rest = g.path(reach, 2 * a + bit, b, true);
            chain.insert(chain.end(), rest.begin(), rest.end());
            return ChainCertificate{chain, 1};
        }
    }
    // (2) from ⊥ through a ≤ edge
    if (int b = g.find(bot()); b >= 0) {
        auto reach = g.search(b, true);
        for (std::size_t n = 0; n < g.nodes(); ++n)
            if (reach.via[2 * n + 1] != -1)
                return ChainCertificate{g.path(reach, 2 * static_cast<int>(n) + 1, b, true), 2};
    }
    // (3) into ⊤ through a ≤ edge
    if (int t = g.find(top()); t >= 0) {
        auto reach = g.search(t, false);
        for (std::size_t n = 0; n < g.nodes(); ++n)
            if (reach.via[2 * n + 1] != -1)
                return ChainCertificate{g.path(reach, 2 * static_cast<int>(n) + 1, t, false), 3};
    }
    // (4) and (5): between constants
    std::vector<int> cs;
    for (std::size_t n = 0; n < g.nodes(); ++n)
        if (consts.is_constant(g.atom(n))) cs.push_back(static_cast<int>(n));
    std::optional<ChainCertificate> equal_case;
    for (int c : cs) {
        auto reach = g.search(c, true);
        Rational rc = consts.value(g.atom(c));
        for (int d : cs) {
            Rational rd = consts.value(g.atom(d));
            for (int bit = 0; bit < 2; ++bit) {
                int st = 2 * d + bit;
                if (reach.via[st] == -1) continue;
                if (rc < rd) return ChainCertificate{g.path(reach, st, c, true), 4};
                if (rc == rd && bit == 1 && !equal_case)
                    equal_case = ChainCertificate{g.path(reach, st, c, true), 5};
            }
        }
    }
    return equal_case;
}

void require_atomic(const Sequent& s, const ConstantTable&) {
    for (const Relation& r : s)
        if (!is_atom(r.lhs) || !is_atom(r.rhs))
            throw std::invalid_argument("atomic sequent expected, found " + render(r));
}

}  // namespace

std::optional<ChainCertificate> atomic_valid(const Sequent& s, const ConstantTable& consts) {
    require_atomic(s, consts);
    return chain_search(s, consts);
}

bool check_certificate(const Sequent& s, const ChainCertificate& c, const ConstantTable& consts) {
    if (c.chain.empty()) return false;
    for (std::size_t i = 0; i < c.chain.size(); ++i) {
        const Relation& r = c.chain[i];
        if (!is_quasi_atom(r.lhs) || !is_quasi_atom(r.rhs)) return false;
        if (!s.contains(r)) return false;
        if (i + 1 < c.chain.size() && r.rhs != c.chain[i + 1].lhs) return false;
    }
    Formula first = c.chain.front().lhs;
    Formula last = c.chain.back().rhs;
    bool le_seen = has_le(c.chain);
    switch (c.condition) {
    case 1: return first == last && le_seen;
    case 2: return first == bot() && le_seen;
    case 3: return last == top() && le_seen;
    case 4:
        return consts.is_constant(first) && consts.is_constant(last) && consts.value(first) < consts.value(last);
    case 5:
        return consts.is_constant(first) && consts.is_constant(last) &&
               consts.value(first) == consts.value(last) && le_seen;
    default: return false;
    }
}

std::optional<std::map<std::string, Rational>> counter_valuation(const Sequent& s, const ConstantTable& consts) {
    require_atomic(s, consts);
    struct Step {
        Formula q;
        std::vector<Formula> lower, upper;
    };
    std::set<std::string> names;
    for (const Relation& r : s) {
        if (r.lhs->op == Op::Var && !consts.is_constant(r.lhs)) names.insert(r.lhs->name);
        if (r.rhs->op == Op::Var && !consts.is_constant(r.rhs)) names.insert(r.rhs->name);
    }
    std::vector<Step> steps;
    Sequent cur = s;
    for (const std::string& n : names) {
        Formula q = var(n);
        if (cur.contains(le(q, q))) return std::nullopt;
        cur.erase(lt(q, q));
        // Dead disjuncts ⊤ < q and q < ⊥ keep the bound sets non-empty.
        cur.insert(lt(top(), q));
        cur.insert(lt(q, bot()));
        std::vector<Relation> into, outof, rest;
        for (const Relation& r : cur) {
            if (r.rhs == q) into.push_back(r);
            else if (r.lhs == q) outof.push_back(r);
            else rest.push_back(r);
        }
        Step st{q, {}, {}};
        for (const Relation& a : into) {
            st.lower.push_back(a.lhs);
            for (const Relation& b : outof) {
                bool strict = a.kind == RelKind::Lt && b.kind == RelKind::Lt;
                rest.push_back({a.lhs, strict ? RelKind::Lt : RelKind::Le, b.rhs});
            }
        }
        for (const Relation& b : outof) st.upper.push_back(b.rhs);
        steps.push_back(std::move(st));
        cur = Sequent(std::move(rest));
    }
    for (const Relation& r : cur) {
        Rational a = consts.value(r.lhs);
        Rational b = consts.value(r.rhs);
        if (r.kind == RelKind::Lt ? a < b : a <= b) return std::nullopt;
    }
    std::map<Formula, Rational> v;
    auto val = [&](Formula f) { return consts.is_constant(f) ? consts.value(f) : v.at(f); };
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
        Rational x = 1, y = 0;
        for (Formula a : it->lower) x = std::min(x, val(a));
        for (Formula b : it->upper) y = std::max(y, val(b));
        if (x < y) throw std::logic_error("counter_valuation: inconsistent elimination");
        v[it->q] = x > y ? (x + y) / 2 : x;
    }
    std::map<std::string, Rational> out;
    for (auto& [f, q] : v) out[f->name] = q;
    for (const Relation& r : s) {
        Rational a = val(r.lhs);
        Rational b = val(r.rhs);
        if (r.kind == RelKind::Lt ? a < b : a <= b)
            throw std::logic_error("counter_valuation: constructed valuation satisfies " + render(r));
    }
    return out;
}

const char* rule_name(StructuralStep::Rule r) {
    switch (r) {
    case StructuralStep::Rule::Cs: return "cs";
    case StructuralStep::Rule::Wl: return "wl";
    case StructuralStep::Rule::Wr: return "wr";
    case StructuralStep::Rule::Com: return "com";
    }
    return "?";
}

std::optional<std::vector<Sequent>> structural_premises(const Sequent& s, StructuralStep::Rule rule,
                                                        const Relation& first, const Relation& second) {
    using R = StructuralStep::Rule;
    switch (rule) {
    case R::Cs: {
        if (s.contains(le(top(), bot())) && s.contains(lt(bot(), bot()))) return std::nullopt;
        Sequent p = s;
        p.insert(le(top(), bot()));
        p.insert(lt(bot(), bot()));
        return std::vector<Sequent>{p};
    }
    case R::Wl:
    case R::Wr: {
        if (first.kind != RelKind::Le || !s.contains(first)) return std::nullopt;
        Relation add = rule == R::Wl ? le(top(), first.rhs) : le(first.lhs, bot());
        if (s.contains(add)) return std::nullopt;
        return std::vector<Sequent>{s.with(add)};
    }
    case R::Com: {
        if (!s.contains(first) || !s.contains(second)) return std::nullopt;
        Relation a = le(first.lhs, second.rhs);
        Relation b{second.lhs, first.kind, first.rhs};
        if (s.contains(a) || s.contains(b)) return std::nullopt;
        return std::vector<Sequent>{s.with(a), s.with(b)};
    }
    }
    return std::nullopt;
}

std::optional<StructuralStep> next_structural_step(const Sequent& s) {
    using R = StructuralStep::Rule;
    if (auto p = structural_premises(s, R::Cs, {}, {})) return StructuralStep{R::Cs, {}, {}, *p};
    for (const Relation& r : s)
        if (auto p = structural_premises(s, R::Wl, r, {})) return StructuralStep{R::Wl, r, {}, *p};
    for (const Relation& r : s)
        if (auto p = structural_premises(s, R::Wr, r, {})) return StructuralStep{R::Wr, r, {}, *p};
    const auto& rels = s.relations();
    for (const Relation& r1 : rels) {
        for (const Relation& r2 : rels) {
            if (s.contains(le(r1.lhs, r2.rhs))) continue;
            if (s.contains({r2.lhs, r1.kind, r1.rhs})) continue;
            return StructuralStep{R::Com, r1, r2,
                                  {s.with(le(r1.lhs, r2.rhs)), s.with({r2.lhs, r1.kind, r1.rhs})}};
        }
    }
    return std::nullopt;
}

bool is_saturated(const Sequent& s) { return !next_structural_step(s).has_value(); }

std::vector<Sequent> saturate(const Sequent& s, std::size_t max_nodes) {
    std::set<Sequent> leaves;
    std::unordered_set<Sequent, SequentHash> seen;
    std::vector<Sequent> stack{s};
    while (!stack.empty()) {
        Sequent cur = std::move(stack.back());
        stack.pop_back();
        if (!seen.insert(cur).second) continue;
        if (seen.size() > max_nodes) throw std::runtime_error("saturate: node limit exceeded");
        auto step = next_structural_step(cur);
        if (!step) {
            leaves.insert(cur);
            continue;
        }
        for (auto it = step->premises.rbegin(); it != step->premises.rend(); ++it) stack.push_back(*it);
    }
    return {leaves.begin(), leaves.end()};
}

std::optional<ChainCertificate> prop_certificate(const Sequent& s) {
    Abstraction a = abstract_modals(s);
    auto cert = atomic_valid(a.sequent);
    if (!cert) return std::nullopt;
    // Map each chain relation back individually to keep the chain order.
    for (Relation& r : cert->chain) r = *concretize(Sequent{r}, a).begin();
    return cert;
}

bool prop_valid(const Sequent& s) { return prop_certificate(s).has_value(); }

}  // namespace godel
