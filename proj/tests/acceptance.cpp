// Acceptance run: prints exactly one PASS/FAIL line per criterion on stdout.
// Details of failures and timings go to stderr.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "godel/corpus.hpp"
#include "godel/hypersequent.hpp"
#include "godel/prover.hpp"
#include "godel/semantics.hpp"
#include "proof_gen.hpp"
#include "support.hpp"

using namespace godel;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = true;
    std::string detail;
    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

// Everything criteria 8 and 9 need from the verdicts of criteria 1-4.
struct Collected {
    struct Entry {
        Logic logic;
        Sequent sequent;
        Trace trace;
    };
    std::vector<Entry> valid;
    std::size_t leaf_tests = 0, cross_checks = 0, disagreements = 0, skipped = 0;
};
Collected collected;

ProverConfig checked_config() {
    ProverConfig cfg;
    cfg.cross_check = true;
    cfg.exhaustive_cap = 16;
    return cfg;
}

Verdict run_decide(Logic logic, const Sequent& s) {
    Verdict v = decide(logic, s, checked_config());
    collected.leaf_tests += v.stats.leaf_tests;
    collected.cross_checks += v.stats.cross_checks;
    collected.disagreements += v.stats.disagreements;
    collected.skipped += v.stats.cross_check_skipped;
    if (v.valid) collected.valid.push_back({logic, s, v.trace});
    return v;
}

Outcome crit1() {
    Outcome o;
    double worst = 0;
    std::size_t n = 0;
    for (const CorpusEntry& e : axiom_corpus()) {
        auto t0 = Clock::now();
        Verdict v = run_decide(e.logic, sequent_of_formula(parse_formula(e.formula)));
        double dt = seconds_since(t0);
        worst = std::max(worst, dt);
        ++n;
        if (!v.valid) o.fail(e.name + " (" + logic_name(e.logic) + ") decided invalid");
        if (dt >= 1.0) o.fail(e.name + " took " + std::to_string(dt) + " s");
    }
    if (o.pass) o.detail = std::to_string(n) + " axiom instances valid, slowest " + std::to_string(worst) + " s";
    return o;
}

Outcome crit2() {
    Outcome o;
    struct Case {
        Logic logic;
        const char* formula;
        bool valid;
    };
    const Case cases[] = {
        {Logic::GKBox, "[]~~p -> ~~[]p", false},
        {Logic::GKDia, "(<>p -> <>q) -> ((<>q -> bot) | <>(p -> q))", false},
        {Logic::GKDia, "~~<>p -> <>~~p", true},
        {Logic::GKFDia, "~~<>p -> <>~~p", false},
    };
    for (const Case& c : cases) {
        Verdict v = run_decide(c.logic, sequent_of_formula(parse_formula(c.formula)));
        if (v.valid != c.valid) o.fail(std::string(logic_name(c.logic)) + " " + c.formula + " got the wrong verdict");
    }
    if (o.pass) o.detail = "4 separation verdicts match";
    return o;
}

// All formulas over {p, q, bot, top} and the three binary connectives whose
// syntax tree has at most `levels` levels (an atom is one level).
std::vector<Formula> exhaustive_prop(int levels) {
    std::vector<Formula> all{var("p"), var("q"), bot(), top()};
    for (int l = 1; l < levels; ++l) {
        std::vector<Formula> next = {var("p"), var("q"), bot(), top()};
        for (Formula a : all)
            for (Formula b : all) {
                next.push_back(conj(a, b));
                next.push_back(disj(a, b));
                next.push_back(imp(a, b));
            }
        all = std::move(next);
    }
    return all;
}

Outcome crit3() {
    Outcome o;
    std::vector<Formula> corpus = exhaustive_prop(3);
    const std::size_t exhaustive = corpus.size();
    std::mt19937_64 rng(3003);
    testing::GenOptions g;
    g.vars = {"p", "q", "r"};
    for (int i = 0; i < 500; ++i)
        corpus.push_back(testing::random_formula(rng, 1 + static_cast<int>(rng() % 12), g));
    std::size_t valid = 0;
    for (Formula f : corpus) {
        Sequent s = sequent_of_formula(f);
        bool got = run_decide(Logic::G, s).valid;
        bool want = prop_grid_oracle(s);
        valid += got;
        if (got != want) o.fail("disagreement on " + render(f));
    }
    if (o.pass)
        o.detail = std::to_string(exhaustive) + " exhaustive + 500 random formulas agree with the grid oracle (" +
                   std::to_string(valid) + " valid)";
    return o;
}

Outcome crit4() {
    Outcome o;
    auto t0 = Clock::now();
    std::size_t valid = 0, witnesses = 0, budget = 0;
    for (Logic logic : {Logic::GKBox, Logic::GKDia, Logic::GKFDia}) {
        std::mt19937_64 rng(4000 + static_cast<int>(logic));
        testing::GenOptions g;
        g.modality = logic == Logic::GKBox ? Op::Box : Op::Dia;
        g.max_nesting = 2;
        for (int i = 0; i < 200; ++i) {
            Formula f = testing::random_formula(rng, 1 + static_cast<int>(rng() % 8), g);
            Sequent s = sequent_of_formula(f);
            bool v = run_decide(logic, s).valid;
            SearchResult r = countermodel_search(logic, s);
            valid += v;
            if (r.status == SearchResult::Status::BudgetExhausted) ++budget;
            if (r.status != SearchResult::Status::Found) continue;
            ++witnesses;
            if (sequent_holds_at(*r.model, s, r.world)) o.fail("search returned a non-witness for " + render(f));
            if (v) o.fail(std::string(logic_name(logic)) + ": valid but refuted: " + render(f));
        }
    }
    double dt = seconds_since(t0);
    if (dt > 600) o.fail("took " + std::to_string(dt) + " s");
    if (o.pass)
        o.detail = "600 formulas, " + std::to_string(valid) + " valid, " + std::to_string(witnesses) +
                   " witnesses all on invalid verdicts, " + std::to_string(budget) + " searches out of budget, " +
                   std::to_string(dt) + " s";
    return o;
}

Outcome crit5() {
    Outcome o;
    Sequent s = sequent_of_formula(parse_formula("~~<>p -> <>~~p"));
    SearchConfig cfg;
    cfg.max_worlds = 3;
    cfg.grid = 5;
    SearchResult r = countermodel_search(Logic::GKFDia, s, cfg);
    if (r.status != SearchResult::Status::Found) o.fail("no witness");
    else if (sequent_holds_at(*r.model, s, r.world)) o.fail("witness does not refute");
    else o.detail = "witness with " + std::to_string(r.model->worlds) + " worlds";
    return o;
}

Rational random_value(std::mt19937_64& rng, int den) {
    return Rational(static_cast<std::int64_t>(rng() % (den + 1)), den);
}

KripkeModel random_model(std::mt19937_64& rng, FrameKind kind) {
    int n = 1 + static_cast<int>(rng() % 3);
    KripkeModel m = KripkeModel::empty(n, kind);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            m.access[x][y] = kind == FrameKind::Crisp ? Rational(static_cast<std::int64_t>(rng() % 2))
                                                      : random_value(rng, 6);
    for (const char* p : {"p", "q"})
        for (int x = 0; x < n; ++x) m.valuation[p].push_back(random_value(rng, 12));
    return m;
}

Formula random_bimodal(std::mt19937_64& rng, int size) {
    // Mix both modalities by generating with one and flipping some operators.
    testing::GenOptions g;
    g.modality = Op::Box;
    g.max_nesting = 3;
    Formula f = testing::random_formula(rng, size, g);
    std::function<Formula(Formula)> flip = [&](Formula h) -> Formula {
        switch (h->op) {
        case Op::Var:
        case Op::Bot:
        case Op::Top: return h;
        case Op::Box: return rng() % 2 ? box(flip(h->l)) : dia(flip(h->l));
        default: return make(h->op, flip(h->l), flip(h->r));
        }
    };
    return flip(f);
}

PiecewiseLinear random_automorphism(std::mt19937_64& rng) {
    int k = 1 + static_cast<int>(rng() % 3);
    std::set<Rational> xs, ys;
    while (static_cast<int>(xs.size()) < k) xs.insert(Rational(1 + static_cast<std::int64_t>(rng() % 15), 16));
    while (static_cast<int>(ys.size()) < k) ys.insert(Rational(1 + static_cast<std::int64_t>(rng() % 19), 20));
    std::vector<std::pair<Rational, Rational>> pts{{0, 0}};
    auto yi = ys.begin();
    for (const Rational& x : xs) pts.push_back({x, *yi++});
    pts.push_back({1, 1});
    return PiecewiseLinear(pts);
}

Rational goedel_imp(const Rational& a, const Rational& b) { return a <= b ? Rational(1) : b; }

Outcome crit6() {
    Outcome o;
    std::mt19937_64 rng(6006);
    for (int i = 0; i < 100; ++i) {
        KripkeModel m = random_model(rng, i % 2 ? FrameKind::Fuzzy : FrameKind::Crisp);
        Formula f = random_bimodal(rng, 1 + static_cast<int>(rng() % 10));
        PiecewiseLinear h = random_automorphism(rng);
        KripkeModel mh = automorphism_transform(m, h);
        for (int x = 0; x < m.worlds; ++x)
            if (eval_formula(mh, f, x) != h(eval_formula(m, f, x)))
                o.fail("automorphism contract fails on " + render(f));
    }
    for (int i = 0; i < 100; ++i) {
        KripkeModel m = random_model(rng, FrameKind::Crisp);
        Formula f = random_bimodal(rng, 1 + static_cast<int>(rng() % 10));
        Rational lambda(1 + static_cast<std::int64_t>(rng() % 12), 12);
        KripkeModel ml = lambda_shift(m, lambda);
        for (int x = 0; x < m.worlds; ++x)
            if (eval_formula(ml, f, x) != goedel_imp(lambda, eval_formula(m, f, x)))
                o.fail("lambda contract fails on " + render(f) + " with lambda " + to_string(lambda));
    }
    if (o.pass) o.detail = "100 automorphism and 100 lambda-shift instances hold exactly";
    return o;
}

Outcome crit7() {
    Outcome o;
    std::string why;
    if (!check_derivation(prelinearity_derivation(), false, &why)) o.fail("prelinearity derivation: " + why);
    if (!check_derivation(z_box_derivation(), true, &why)) o.fail("box derivation: " + why);
    std::size_t cuts = 0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        testing::ProofGenerator gen(seed);
        DerivationPtr d = gen.with_cuts();
        const std::string tag = "seed " + std::to_string(seed) + ": ";
        if (!d || count_rule(d, "cut") == 0) {
            o.fail(tag + "generator produced no cut");
            continue;
        }
        cuts += count_rule(d, "cut");
        try {
            DerivationPtr e = eliminate_cuts(d);
            if (count_rule(e, "cut") != 0) o.fail(tag + "cuts remain");
            if (!(e->conclusion == d->conclusion)) o.fail(tag + "end hypersequent changed");
            if (!check_derivation(e, true, &why)) o.fail(tag + "output rejected: " + why);
        } catch (const std::exception& ex) {
            o.fail(tag + ex.what());
        }
        if (!decide_formula(Logic::GKBox, interp_hyper(d->conclusion)).valid)
            o.fail(tag + "interpretation of the conclusion is not valid");
    }
    if (o.pass) o.detail = "both transcriptions check; 50 generated proofs (" + std::to_string(cuts) + " cuts) reduced";
    return o;
}

// Deep copy preserving sharing, so a mutation touches exactly one node.
Trace clone(const Trace& t, std::unordered_map<const TraceNode*, Trace>& memo) {
    if (auto it = memo.find(t.get()); it != memo.end()) return it->second;
    auto c = std::make_shared<TraceNode>(*t);
    memo[t.get()] = c;
    for (Trace& k : c->children) k = clone(k, memo);
    return c;
}

std::vector<Trace> distinct_nodes(const Trace& t) {
    std::vector<Trace> out;
    std::unordered_set<const TraceNode*> seen;
    std::vector<Trace> stack{t};
    while (!stack.empty()) {
        Trace n = stack.back();
        stack.pop_back();
        if (!seen.insert(n.get()).second) continue;
        out.push_back(n);
        for (const Trace& k : n->children) stack.push_back(k);
    }
    return out;
}

// Changes one node so that it no longer certifies its sequent.
std::string mutate(TraceNode& n, std::mt19937_64& rng) {
    switch (rng() % 3) {
    case 0:
        n.sequent = n.sequent.with(lt(var("mutant"), var("mutant")));
        return "extra relation";
    case 1:
        if (!n.children.empty()) {
            n.children.pop_back();
            return "dropped premise";
        }
        break;
    default:
        break;
    }
    switch (n.kind) {
    case TraceKind::Decompose:
    case TraceKind::Structural:
        n.principal = le(var("mutant"), bot());
        return "wrong principal";
    case TraceKind::PropLeaf:
        n.cert.chain.clear();
        return "empty certificate";
    case TraceKind::ModalBox:
    case TraceKind::ModalDia:
        n.J.push_back(1000);
        return "index out of range";
    }
    return "?";
}

Outcome crit8() {
    Outcome o;
    std::size_t accepted = 0;
    for (const auto& e : collected.valid) {
        std::string why;
        if (check_trace(e.logic, e.sequent, e.trace, &why)) ++accepted;
        else o.fail("trace rejected for " + render(e.sequent) + ": " + why);
    }
    if (collected.valid.empty()) o.fail("no valid verdicts collected");
    std::mt19937_64 rng(8008);
    // Prefer traces with modal steps so mutations also reach modal nodes.
    std::vector<std::size_t> modal;
    for (std::size_t i = 0; i < collected.valid.size(); ++i)
        if (collected.valid[i].logic != Logic::G) modal.push_back(i);
    std::string kinds;
    for (int m = 0; m < 10 && !collected.valid.empty(); ++m) {
        std::size_t idx = (m % 2 == 0 && !modal.empty()) ? modal[rng() % modal.size()] : rng() % collected.valid.size();
        const auto& e = collected.valid[idx];
        std::unordered_map<const TraceNode*, Trace> memo;
        Trace copy = clone(e.trace, memo);
        std::vector<Trace> nodes = distinct_nodes(copy);
        Trace victim = nodes[rng() % nodes.size()];
        std::string kind = mutate(*victim, rng);
        kinds += (kinds.empty() ? "" : ", ") + kind;
        if (check_trace(e.logic, e.sequent, copy)) o.fail("mutation '" + kind + "' accepted on " + render(e.sequent));
    }
    if (o.pass)
        o.detail = std::to_string(accepted) + " traces accepted; 10 mutations rejected (" + kinds + ")";
    return o;
}

Outcome crit9() {
    Outcome o;
    if (collected.disagreements) o.fail(std::to_string(collected.disagreements) + " disagreements");
    if (collected.skipped) o.fail(std::to_string(collected.skipped) + " leaf tests too large to cross-check");
    if (collected.cross_checks == 0) o.fail("no modal leaf tests were cross-checked");
    if (o.pass)
        o.detail = std::to_string(collected.cross_checks) + " modal leaf tests cross-checked, 0 disagreements";
    return o;
}

Outcome crit10() {
    Outcome o;
    double worst = 0;
    int count = 0;
    for (Logic logic : {Logic::G, Logic::GKBox, Logic::GKDia, Logic::GKFDia}) {
        std::mt19937_64 rng(10010 + static_cast<int>(logic));
        testing::GenOptions g;
        g.vars = {"p", "q", "r"};
        g.modality = logic == Logic::GKBox ? Op::Box : logic == Logic::G ? Op::Var : Op::Dia;
        g.max_nesting = 3;
        for (int made = 0; made < 10;) {
            Formula f = testing::random_formula(rng, 20 + static_cast<int>(rng() % 11), g);
            if (f->size > 30 || modal_degree(f) > 3) continue;
            ++made;
            auto t0 = Clock::now();
            try {
                decide_formula(logic, f);
            } catch (const BudgetExceeded&) {
                o.fail("budget exceeded on " + render(f));
            }
            double dt = seconds_since(t0);
            worst = std::max(worst, dt);
            ++count;
            if (dt > 10) o.fail(std::string(logic_name(logic)) + " took " + std::to_string(dt) + " s on " + render(f));
        }
    }
    // The configured node limit bounds the work of every run.
    ProverConfig tiny;
    tiny.max_nodes = 50;
    try {
        decide_formula(Logic::GKBox, parse_formula("[](p -> q) -> ([]p -> []q) & ([](q -> r) -> ([]q -> []r))"), tiny);
        o.fail("node limit not enforced");
    } catch (const BudgetExceeded&) {
    }
    if (o.pass) o.detail = std::to_string(count) + " formulas of size 20-30, slowest " + std::to_string(worst) + " s";
    return o;
}

}  // namespace

int main() {
    using Fn = Outcome (*)();
    const Fn crits[] = {crit1, crit2, crit3, crit4, crit5, crit6, crit7, crit8, crit9, crit10};
    int failed = 0;
    for (int i = 0; i < 10; ++i) {
        Outcome o;
        auto t0 = Clock::now();
        try {
            o = crits[i]();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        std::printf("%s criterion %d: %s\n", o.pass ? "PASS" : "FAIL", i + 1, o.detail.c_str());
        std::fflush(stdout);
        std::cerr << "  criterion " << i + 1 << " finished in " << seconds_since(t0) << " s\n";
        failed += !o.pass;
    }
    return failed == 0 ? 0 : 1;
}
