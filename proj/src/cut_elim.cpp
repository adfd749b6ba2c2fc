// Constructive cut elimination.  A cut of A between d1 ⊢ G | Γ1,A⇒Δ and
// d2 ⊢ G | Γ2⇒A is an instance of the general claim
//
//   d1 ⊢ [Γi, A^λi ⇒ Δi]_i   d2 ⊢ H | [Πj ⇒ A]_j
//   ─────────────────────────────────────────────
//          H | [Γi, Πj^λi ⇒ Δi]_{i,j}
//
// proved by induction on |A| and then on the two derivations.  claim() splits
// the statement down to one distinguished component with λ = 1; reduce_right runs
// through d2 until A is principal on the right, and reduce_left then runs through
// d1 until A is principal on the left, where the cut moves to the immediate
// subformulas.
#include <functional>
#include <stdexcept>
#include <unordered_map>

#include "godel/hypersequent.hpp"
#include "hyper_internal.hpp"

namespace godel {

using namespace hyper;

namespace {

using Marks = std::vector<std::pair<Component, int>>;

const CheckOptions kModal{true, false};

Match must_match(const DerivationPtr& d) {
    std::string why;
    auto m = match_node(*d, kModal, &why);
    if (!m) throw std::logic_error("cut elimination produced an invalid step: " + why);
    return *m;
}

Component transform(const Component& c, Formula a, int lam, const FormulaBag& pi) {
    if (lam == 0) return c;
    auto rest = bag_minus(c.left, bag_repeat({a}, lam));
    if (!rest) throw std::logic_error("transform: component has too few copies of the cut formula");
    return Component{bag_plus(*rest, bag_repeat(pi, lam)), c.right};
}

// Attaches λ values to concrete occurrences of a conclusion.
std::vector<int> align(const Comps& concl, const Marks& marks) {
    std::vector<int> lam(concl.size(), 0);
    std::vector<bool> used(concl.size(), false);
    for (const auto& [c, l] : marks) {
        std::size_t i = 0;
        while (i < concl.size() && (used[i] || concl[i] != c)) ++i;
        if (i == concl.size()) throw std::logic_error("align: component '" + render(c) + "' missing");
        used[i] = true;
        lam[i] = l;
    }
    return lam;
}

Comps intersect(const Comps& a, const Comps& b) {
    Comps out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out), CompLess{});
    return out;
}

class Eliminator {
public:
    DerivationPtr run(const DerivationPtr& n) {
        auto it = memo_.find(n.get());
        if (it != memo_.end()) return it->second;
        std::vector<DerivationPtr> prem;
        bool changed = false;
        for (const DerivationPtr& p : n->premises) {
            prem.push_back(run(p));
            changed = changed || prem.back() != p;
        }
        DerivationPtr out;
        if (n->rule == "cut") {
            Match m = must_match(n);
            Formula a = m.principal;
            DerivationPtr d1 = prem[0];
            DerivationPtr f = claim(a, d1, align(d1->conclusion.comps, {{m.prem[0], 1}}), prem[1], {m.prem[1]});
            out = reshape(f, n->conclusion);
        } else {
            out = changed ? derive(n->rule, n->conclusion, prem) : n;
        }
        memo_.emplace(n.get(), out);
        return out;
    }

private:
    std::unordered_map<const Derivation*, DerivationPtr> memo_;

    DerivationPtr claim(Formula a, DerivationPtr d1, const std::vector<int>& lam, DerivationPtr d2, Comps J) {
        const Comps& C1 = d1->conclusion.comps;
        if (J.empty()) return d2;
        Comps out = *comps_minus(d2->conclusion.comps, J);
        for (const Component& j : J)
            for (std::size_t i = 0; i < C1.size(); ++i) out = comps_plus(out, transform(C1[i], a, lam[i], j.left));
        const Hypersequent target{out};

        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < lam.size(); ++i)
            if (lam[i] > 0) idx.push_back(i);
        if (idx.empty()) return reshape(d1, target);
        if (auto ax = axiom_of(out)) return derive(*ax, target);

        if (J.size() > 1) {
            // One Πj at a time; the others stay in the side hypersequent.
            DerivationPtr e = claim(a, d1, lam, d2, {J[0]});
            return claim(a, d1, lam, e, Comps(J.begin() + 1, J.end()));
        }
        if (idx.size() > 1) {
            std::vector<int> first(lam.size(), 0);
            first[idx[0]] = lam[idx[0]];
            DerivationPtr e = claim(a, d1, first, d2, J);
            Marks rest;
            for (std::size_t k = 1; k < idx.size(); ++k) rest.emplace_back(C1[idx[k]], lam[idx[k]]);
            DerivationPtr f = claim(a, e, align(e->conclusion.comps, rest), d2, J);
            return reshape(f, target);
        }
        const std::size_t i = idx[0];
        const int l = lam[i];
        if (l == 1) return reduce_right(a, d1, C1[i], d2, J);
        // Contract A^λ to a single A, cut once, and weaken the extra Π copies back in.
        const FormulaBag extra = bag_repeat({a}, static_cast<std::size_t>(l - 1));
        DerivationPtr c = contract_left(d1, C1[i], extra);
        Component ci{*bag_minus(C1[i].left, extra), C1[i].right};
        DerivationPtr e = reduce_right(a, c, ci, d2, J);
        e = weaken_left(e, transform(ci, a, 1, J[0].left), bag_repeat(J[0].left, static_cast<std::size_t>(l - 1)));
        return reshape(e, target);
    }

    // d1 ⊢ G1 | xi with one distinguished A in xi; J components of d2 all have right A.
    DerivationPtr reduce_right(Formula a, DerivationPtr d1, const Component& xi, DerivationPtr d2, const Comps& J) {
        if (J.empty()) return d2;
        const Comps G1 = *comps_minus(d1->conclusion.comps, xi);
        const Component base{*bag_minus(xi.left, a), xi.right};
        auto tr = [&](const FormulaBag& pi) { return Component{bag_plus(base.left, pi), base.right}; };
        auto target_of = [&](const Comps& C, const Comps& Jx) {
            Comps out = *comps_minus(C, Jx);
            for (const Component& j : Jx) out = comps_plus(comps_plus(out, G1), tr(j.left));
            return Hypersequent{out};
        };
        const Comps& C2 = d2->conclusion.comps;
        const Hypersequent target = target_of(C2, J);
        if (auto ax = axiom_of(target.comps)) return derive(*ax, target);
        const std::vector<int> lam_xi = align(d1->conclusion.comps, {{xi, 1}});

        Match m = must_match(d2);
        switch (m.kind) {
        case Match::Kind::Axiom:
            if (d2->rule == "id") return reshape(d1, target);  // Πj = A
            if (d2->rule == "top-r") {
                DerivationPtr D = derive("top-r", Hypersequent{{m.active}});
                return reshape(reduce_left(a, d1, lam_xi, D, m.active), target);
            }
            break;
        case Match::Kind::Ew: {
            DerivationPtr p = d2->premises[0];
            DerivationPtr t = reduce_right(a, d1, xi, p, intersect(J, p->conclusion.comps));
            return reshape(t, target);
        }
        case Match::Kind::Ec: {
            DerivationPtr p = d2->premises[0];
            Comps dup = *comps_minus(p->conclusion.comps, C2);
            DerivationPtr t = reduce_right(a, d1, xi, p, comps_plus(J, intersect(dup, J)));
            return reshape(t, target);
        }
        case Match::Kind::Box: {
            // Only the component □Π⇒□B can carry the cut formula, and it is principal.
            if (J.size() != 1) break;
            return reshape(reduce_left(a, d1, lam_xi, d2, J[0]), target);
        }
        case Match::Kind::Com:
            return reduce_right_com(a, d1, xi, d2, J, m, target, tr);
        case Match::Kind::Single: {
            const Component& c = m.active;
            const std::string& r = d2->rule;
            const bool in_j = comps_count(J, c) == comps_count(C2, c);
            std::vector<DerivationPtr> prem;
            if (!in_j) {
                for (const DerivationPtr& p : d2->premises) prem.push_back(reduce_right(a, d1, xi, p, J));
                return derive(r, target, prem);
            }
            const Comps J1 = *comps_minus(J, c);
            if (r == "wl" || r == "cl" || r == "and-l1" || r == "and-l2" || r == "or-l") {
                for (std::size_t k = 0; k < d2->premises.size(); ++k)
                    prem.push_back(reduce_right(a, d1, xi, d2->premises[k], comps_plus(J1, m.prem[k])));
                return derive(r, target, prem);
            }
            if (r == "imp-l") {
                DerivationPtr t1 = reduce_right(a, d1, xi, d2->premises[0], J1);
                t1 = weaken_left(t1, m.prem[0], base.left);
                if (!G1.empty()) t1 = derive("ew", Hypersequent{comps_plus(t1->conclusion.comps, G1)}, {t1});
                DerivationPtr t2 = reduce_right(a, d1, xi, d2->premises[1], comps_plus(J1, m.prem[1]));
                return derive("imp-l", target, {t1, t2});
            }
            if (r == "wr") {
                DerivationPtr t = reduce_right(a, d1, xi, d2->premises[0], J1);
                t = weaken_left(t, m.prem[0], base.left);
                Component cur{bag_plus(m.prem[0].left, base.left), nullptr};
                if (base.right) t = derive("wr", replace_comp(t->conclusion, cur, Component{cur.left, base.right}), {t});
                return reshape(t, target);
            }
            if (r == "imp-r" || r == "and-r" || r == "or-r1" || r == "or-r2") {
                // A is principal: rebuild the last step over the other Πj, then go into d1.
                for (const DerivationPtr& p : d2->premises) prem.push_back(reduce_right(a, d1, xi, p, J1));
                Comps ctx = *comps_minus(prem[0]->conclusion.comps, m.prem[0]);
                DerivationPtr dp = derive(r, Hypersequent{comps_plus(ctx, c)}, prem);
                return reshape(reduce_left(a, d1, lam_xi, dp, c), target);
            }
            break;
        }
        case Match::Kind::Hyp:
            break;
        }
        throw std::logic_error("cut elimination: unexpected rule '" + d2->rule + "' above the right cut premise");
    }

    template <class Tr>
    DerivationPtr reduce_right_com(Formula a, DerivationPtr d1, const Component& xi, DerivationPtr d2, const Comps& J,
                             const Match& m, const Hypersequent& target, Tr tr) {
        for (int flags = 0; flags < 4; ++flags) {
            const bool in1 = flags & 1, in2 = flags & 2;
            if ((in1 && m.c1.right != a) || (in2 && m.c2.right != a)) continue;
            std::optional<Comps> jg = J;
            if (in1) jg = comps_minus(*jg, m.c1);
            if (jg && in2) jg = comps_minus(*jg, m.c2);
            if (!jg || !comps_subset(*jg, m.context)) continue;
            DerivationPtr t1 = reduce_right(a, d1, xi, d2->premises[0], in1 ? comps_plus(*jg, m.p1) : *jg);
            DerivationPtr t2 = reduce_right(a, d1, xi, d2->premises[1], in2 ? comps_plus(*jg, m.p2) : *jg);
            const Component p1 = in1 ? tr(m.p1.left) : m.p1;
            const Component p2 = in2 ? tr(m.p2.left) : m.p2;
            const Component c1 = in1 ? tr(m.c1.left) : m.c1;
            const Component c2 = in2 ? tr(m.c2.left) : m.c2;
            Comps ctx1 = *comps_minus(t1->conclusion.comps, p1);
            Comps ctx2 = *comps_minus(t2->conclusion.comps, p2);
            // The contexts differ only in how many copies of G1 they carry.
            if (ctx1 != ctx2) {
                if (comps_subset(ctx2, ctx1)) {
                    t2 = derive("ew", Hypersequent{comps_plus(ctx1, p2)}, {t2});
                    ctx2 = ctx1;
                } else {
                    t1 = derive("ew", Hypersequent{comps_plus(ctx2, p1)}, {t1});
                    ctx1 = ctx2;
                }
            }
            DerivationPtr d = derive("com", Hypersequent{comps_plus(comps_plus(ctx1, c1), c2)}, {t1, t2});
            return reshape(d, target);
        }
        throw std::logic_error("cut elimination: no consistent reading of a com step");
    }

    // D ⊢ K | Π⇒A where A is introduced by the last step of D on dc (or dc is an axiom).
    DerivationPtr reduce_left(Formula a, DerivationPtr d1, const std::vector<int>& lam, DerivationPtr D, const Component& dc) {
        const Comps& C1 = d1->conclusion.comps;
        const Comps K = *comps_minus(D->conclusion.comps, dc);
        const FormulaBag& pi = dc.left;
        Comps out = K;
        for (std::size_t i = 0; i < C1.size(); ++i) out = comps_plus(out, transform(C1[i], a, lam[i], pi));
        const Hypersequent target{out};
        const bool none = std::all_of(lam.begin(), lam.end(), [](int l) { return l == 0; });
        if (none || (pi.size() == 1 && pi[0] == a)) return reshape(d1, target);
        if (auto ax = axiom_of(out)) return derive(*ax, target);

        Match m = must_match(d1);
        switch (m.kind) {
        case Match::Kind::Axiom:
            // An identity A⇒A with its A distinguished becomes Π⇒A itself.
            if (d1->rule == "id") return reshape(D, target);
            break;
        case Match::Kind::Ew:
        case Match::Kind::Ec: {
            DerivationPtr p = d1->premises[0];
            const Comps& P = p->conclusion.comps;
            Marks marks;
            for (std::size_t q = 0; q < P.size();) {
                std::size_t r = q;
                while (r < P.size() && P[r] == P[q]) ++r;
                std::vector<int> ls;
                for (std::size_t i = 0; i < C1.size(); ++i)
                    if (C1[i] == P[q]) ls.push_back(lam[i]);
                for (std::size_t k = 0; k < r - q; ++k) marks.emplace_back(P[q], ls[k % ls.size()]);
                q = r;
            }
            DerivationPtr e = reduce_left(a, p, align(P, marks), D, dc);
            return reshape(e, target);
        }
        case Match::Kind::Com: {
            std::size_t i1 = 0;
            while (C1[i1] != m.c1) ++i1;
            std::size_t i2 = 0;
            while (i2 == i1 || C1[i2] != m.c2) ++i2;
            const int l1 = lam[i1], l2 = lam[i2];
            const int a1 = std::min<int>(l1, static_cast<int>(bag_count(m.g1, a)));
            const int b1 = std::min<int>(l2, static_cast<int>(bag_count(m.pi1, a)));
            const int lp1 = a1 + b1, lp2 = (l1 - a1) + (l2 - b1);
            Marks ctx;
            for (std::size_t i = 0; i < C1.size(); ++i)
                if (i != i1 && i != i2) ctx.emplace_back(C1[i], lam[i]);
            Marks m1 = ctx, m2 = ctx;
            m1.emplace_back(m.p1, lp1);
            m2.emplace_back(m.p2, lp2);
            DerivationPtr p1 = d1->premises[0], p2 = d1->premises[1];
            DerivationPtr e1 = reduce_left(a, p1, align(p1->conclusion.comps, m1), D, dc);
            DerivationPtr e2 = reduce_left(a, p2, align(p2->conclusion.comps, m2), D, dc);
            return derive("com", target, {e1, e2});
        }
        case Match::Kind::Box:
            return reduce_left_box(a, d1, lam, D, dc, target);
        case Match::Kind::Single:
            return reduce_left_single(a, d1, lam, D, dc, m, target);
        case Match::Kind::Hyp:
            break;
        }
        throw std::logic_error("cut elimination: unexpected rule '" + d1->rule + "' above the left cut premise");
    }

    DerivationPtr reduce_left_box(Formula a, DerivationPtr d1, const std::vector<int>& lam, DerivationPtr D,
                             const Component& dc, const Hypersequent& target) {
        if (a->op != Op::Box || D->rule != "box")
            throw std::logic_error("cut elimination: box step meets a cut formula not introduced by box");
        const Comps& C1 = d1->conclusion.comps;
        auto unboxed = [](const Component& c) {
            std::vector<Formula> l;
            for (Formula f : c.left) l.push_back(f->l);
            return make_component(std::move(l), c.right ? c.right->l : nullptr);
        };
        Marks marks;
        for (std::size_t i = 0; i < C1.size(); ++i) marks.emplace_back(unboxed(C1[i]), lam[i]);
        DerivationPtr q = d1->premises[0];
        DerivationPtr d0 = D->premises[0];
        const Component dc0 = unboxed(dc);
        DerivationPtr e = claim(a->l, q, align(q->conclusion.comps, marks), d0, {dc0});
        // e ⊢ Σ⇒ | S′⇒ | Γ′⇒C; rebuild the boxes with (□)².
        std::vector<FormulaBag> pis;
        const Component* main = nullptr;
        for (const Component& c : e->conclusion.comps) {
            if (c.right) main = &c;
            else pis.push_back(c.left);
        }
        if (!main || pis.size() != 2) throw std::logic_error("cut elimination: unexpected shape below box/box cut");
        return reshape(derive_box_n(pis, main->left, main->right, e), target);
    }

    DerivationPtr reduce_left_single(Formula a, DerivationPtr d1, const std::vector<int>& lam, DerivationPtr D,
                                const Component& dc, const Match& m, const Hypersequent& target) {
        const Comps& C1 = d1->conclusion.comps;
        const std::string& r = d1->rule;
        const Component& c = m.active;
        std::size_t ic = 0;
        while (C1[ic] != c) ++ic;
        const int lc = lam[ic];
        const int na = static_cast<int>(bag_count(c.left, a));
        const FormulaBag& pi = dc.left;
        Marks ctx;
        for (std::size_t i = 0; i < C1.size(); ++i)
            if (i != ic) ctx.emplace_back(C1[i], lam[i]);
        auto sub = [&](std::size_t k, int l) {
            Marks mk = ctx;
            mk.emplace_back(m.prem[k], l);
            DerivationPtr p = d1->premises[k];
            return reduce_left(a, p, align(p->conclusion.comps, mk), D, dc);
        };
        const bool all_marked = lc > 0 && lc == na && m.principal == a;

        if (all_marked && (r == "and-l1" || r == "and-l2" || r == "or-l" || r == "imp-l"))
            return principal(a, d1, D, dc, m, sub, lc, target);
        if (all_marked && r == "wl") {
            DerivationPtr e = sub(0, lc - 1);
            return reshape(weaken_left(e, transform(m.prem[0], a, lc - 1, pi), pi), target);
        }
        if (all_marked && r == "cl") {
            DerivationPtr e = sub(0, lc + 1);
            return reshape(contract_left(e, transform(m.prem[0], a, lc + 1, pi), pi), target);
        }
        if (r == "cut" || r == "neg-l" || r == "neg-r")
            throw std::logic_error("cut elimination: unexpected rule '" + r + "'");
        std::vector<DerivationPtr> prem;
        for (std::size_t k = 0; k < d1->premises.size(); ++k) prem.push_back(sub(k, lc));
        return derive(r, target, prem);
    }

    template <class Sub>
    DerivationPtr principal(Formula a, DerivationPtr d1, DerivationPtr D, const Component& dc, const Match& m, Sub sub,
                            int lc, const Hypersequent& target) {
        const std::string& r = d1->rule;
        const Comps K = *comps_minus(D->conclusion.comps, dc);
        const FormulaBag& pi = dc.left;
        auto dprem = [&](std::size_t k) {
            auto q = comps_minus(D->premises.at(k)->conclusion.comps, K);
            if (!q || q->size() != 1) throw std::logic_error("cut elimination: right premise is not principal");
            return (*q)[0];
        };
        auto expect = [&](const char* rule) {
            if (D->rule != rule)
                throw std::logic_error(std::string("cut elimination: expected ") + rule + " above the right premise, got " + D->rule);
        };
        // Cut a smaller formula b between e (b distinguished in comp) and dsub ⊢ K | Π⇒b.
        auto smaller = [&](Formula b, DerivationPtr e, const Component& comp, DerivationPtr dsub, const Component& q) {
            return claim(b, e, align(e->conclusion.comps, {{comp, 1}}), dsub, {q});
        };
        if (r == "and-l1" || r == "and-l2") {
            expect("and-r");
            const std::size_t k = r == "and-l1" ? 0 : 1;
            DerivationPtr e = sub(0, lc - 1);
            Component comp = transform(m.prem[0], a, lc - 1, pi);
            return reshape(smaller(k ? a->r : a->l, e, comp, D->premises[k], dprem(k)), target);
        }
        if (r == "or-l") {
            const std::size_t k = D->rule == "or-r1" ? 0 : 1;
            if (D->rule != "or-r1" && D->rule != "or-r2") expect("or-r1");
            DerivationPtr e = sub(k, lc - 1);
            Component comp = transform(m.prem[k], a, lc - 1, pi);
            return reshape(smaller(k ? a->r : a->l, e, comp, D->premises[0], dprem(0)), target);
        }
        // imp-l against imp-r: cut X then Y, and contract the duplicated context.
        expect("imp-r");
        DerivationPtr e1 = sub(0, lc - 1);
        DerivationPtr e2 = sub(1, lc - 1);
        const Component comp1 = transform(m.prem[0], a, lc - 1, pi);
        const Component comp2 = transform(m.prem[1], a, lc - 1, pi);
        DerivationPtr d0 = D->premises[0];
        const Component q0 = dprem(0);
        DerivationPtr f = claim(a->l, d0, align(d0->conclusion.comps, {{q0, 1}}), e1, {comp1});
        const Component compf{bag_plus(pi, comp1.left), a->r};
        DerivationPtr g = smaller(a->r, e2, comp2, f, compf);
        const Component compg{bag_plus(bag_plus(comp1.left, pi), comp1.left), comp2.right};
        return reshape(contract_left(g, compg, comp1.left), target);
    }
};

}  // namespace

DerivationPtr eliminate_cuts(const DerivationPtr& d) {
    std::string why;
    if (!check_derivation(d, kModal, &why)) throw std::invalid_argument("eliminate_cuts: input rejected: " + why);
    if (count_rule(d, "cut") == 0) return d;
    Eliminator el;
    DerivationPtr out = el.run(expand_negation(d));
    if (out->conclusion != d->conclusion || count_rule(out, "cut") != 0 || !check_derivation(out, kModal, &why))
        throw std::logic_error("eliminate_cuts: result failed verification: " + why);
    return out;
}

}  // namespace godel
