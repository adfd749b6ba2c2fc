#include "doctest.h"

#include <random>

#include "godel/relations.hpp"

using namespace godel;

namespace {
Formula P(const char* s) { return parse_formula(s); }

Formula random_formula(std::mt19937& rng, int size) {
    if (size <= 1) {
        int k = std::uniform_int_distribution<int>(0, 4)(rng);
        if (k == 3) return bot();
        if (k == 4) return top();
        return var(std::string(1, static_cast<char>('p' + k)));
    }
    int k = std::uniform_int_distribution<int>(0, 4)(rng);
    if (k >= 3) return make(k == 3 ? Op::Box : Op::Dia, random_formula(rng, size - 1));
    int left = std::uniform_int_distribution<int>(1, size - 2 < 1 ? 1 : size - 2)(rng);
    Op op = k == 0 ? Op::And : k == 1 ? Op::Or : Op::Imp;
    return make(op, random_formula(rng, left), random_formula(rng, std::max(1, size - 1 - left)));
}
}  // namespace

TEST_CASE("parse examples") {
    CHECK(P("(p -> q) | (q -> p)") == disj(imp(var("p"), var("q")), imp(var("q"), var("p"))));
    CHECK(P("~<>bot") == imp(dia(bot()), bot()));
    CHECK(P("p") == var("p"));
    CHECK(P("p -> q -> r") == imp(var("p"), imp(var("q"), var("r"))));
    CHECK(P("p & q | r") == disj(conj(var("p"), var("q")), var("r")));
    CHECK(P("~p & q") == conj(neg(var("p")), var("q")));
    CHECK(P("[]~~p") == box(neg(neg(var("p")))));
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(P(""), ParseError);
    CHECK_THROWS_AS(P("(p & q"), ParseError);
    CHECK_THROWS_AS(P("p q"), ParseError);
    CHECK_THROWS_AS(P("p &"), ParseError);
    CHECK_THROWS_AS(P("p )"), ParseError);
}

TEST_CASE("render") {
    CHECK(render(P("(p -> q) | (q -> p)")) == "(p -> q) | (q -> p)");
    CHECK(render(box(imp(var("p"), var("q")))) == "[](p -> q)");
    CHECK(render(bot()) == "bot");
    CHECK(render(P("~~p")) == "~~p");
    CHECK(render(P("(p -> q) -> r")) == "(p -> q) -> r");
}

TEST_CASE("round trip on random formulas") {
    std::mt19937 rng(7);
    for (int i = 0; i < 2000; ++i) {
        Formula f = random_formula(rng, 1 + i % 20);
        CHECK(parse_formula(render(f)) == f);
    }
}

TEST_CASE("negation desugars") {
    for (const char* a : {"p", "p & q", "[]p -> q", "<>(p | q)"}) {
        std::string s1 = std::string("~(") + a + ")";
        std::string s2 = std::string("(") + a + ") -> bot";
        CHECK(P(s1.c_str()) == P(s2.c_str()));
    }
}

TEST_CASE("measures") {
    CHECK(complexity(P("p -> q")) == 1);
    CHECK(complexity(bot()) == 0);
    CHECK(complexity(P("[]~~p")) == 3);
    CHECK(modal_degree(P("p -> q")) == 0);
    CHECK(modal_degree(P("[](p -> q)")) == 1);
    CHECK(modal_degree(P("[]~~p -> ~~[]p")) == 2);
    std::mt19937 rng(3);
    for (int i = 0; i < 300; ++i) {
        Formula a = random_formula(rng, 6), b = random_formula(rng, 6);
        CHECK(complexity(imp(a, b)) == complexity(a) + complexity(b) + 1);
        CHECK(modal_degree(box(a)) == std::max(complexity(a), modal_degree(a)));
    }
}

TEST_CASE("fragments") {
    CHECK(fragment_of(P("[]p")) == std::set<Logic>{Logic::GKBox});
    CHECK(fragment_of(P("<>p")) == std::set<Logic>{Logic::GKDia, Logic::GKFDia});
    CHECK(fragment_of(P("p & q")).size() == 4);
    CHECK(fragment_of(P("[]p & <>q")).empty());
}

TEST_CASE("sequent parsing") {
    Sequent s = parse_sequent("p <= q ; q < p");
    CHECK(s.size() == 2);
    CHECK(s.contains(le(var("p"), var("q"))));
    CHECK(s.contains(lt(var("q"), var("p"))));
    CHECK(parse_sequent("top <= (p -> q) | (q -> p)") == Sequent{le(top(), P("(p->q)|(q->p)"))});
    CHECK(parse_sequent("p <= q ; p <= q").size() == 1);
    CHECK(parse_sequent("<>p <= <>q").contains(le(dia(var("p")), dia(var("q")))));
    CHECK(parse_sequent("p<q").contains(lt(var("p"), var("q"))));
    CHECK_THROWS_AS(parse_sequent("p ; q"), ParseError);
    CHECK_THROWS_AS(parse_sequent("p <= q ;"), ParseError);
    Sequent r = parse_sequent(render(parse_sequent("[]p <= [](p -> q) ; q < ~p")));
    CHECK(r == parse_sequent("[]p <= [](p -> q) ; q < ~p"));
}

TEST_CASE("interp_sequent") {
    CHECK(interp_sequent(parse_sequent("p < q ; r <= s")) == P("(q -> p) -> (r -> s)"));
    CHECK(interp_sequent(Sequent{}) == imp(top(), bot()));
    CHECK(interp_sequent(parse_sequent("p <= q")) == P("top -> (p -> q)"));
}

TEST_CASE("expand_block") {
    Formula p = var("p"), q = var("q"), r = var("r");
    auto e1 = expand_block({p, q}, RelKind::Le, r, Orientation::ListLeft);
    CHECK(Sequent(e1) == Sequent{le(p, r), le(q, r)});
    CHECK(Sequent(expand_block({}, RelKind::Le, r, Orientation::ListLeft)) == Sequent{le(top(), r)});
    CHECK(Sequent(expand_block({}, RelKind::Le, p, Orientation::ListRight)) == Sequent{le(p, bot())});
    CHECK(expand_block({}, RelKind::Lt, p, Orientation::ListRight).empty());
    CHECK(expand_block({}, RelKind::Lt, p, Orientation::ListLeft).empty());
}

TEST_CASE("abstract_modals") {
    Abstraction a = abstract_modals(parse_sequent("[]p <= []q"));
    CHECK(a.forward.size() == 2);
    CHECK(is_atomic(a.sequent));
    CHECK(concretize(a.sequent, a) == parse_sequent("[]p <= []q"));
    Abstraction b = abstract_modals(parse_sequent("<>p <= bot ; <>p <= <>q"));
    CHECK(b.forward.size() == 2);
    Abstraction c = abstract_modals(parse_sequent("p <= q"));
    CHECK(c.forward.empty());
    CHECK(c.sequent == parse_sequent("p <= q"));
    CHECK_THROWS(abstract_modals(parse_sequent("p & q <= r")));
}

TEST_CASE("modal_part") {
    Formula p = var("p"), q = var("q"), r = var("r"), s = var("s");
    ModalPart m = modal_part(parse_sequent("[]p <= []q ; q < []p ; top <= []r"), Logic::GKBox);
    CHECK(m.boxBox.size() == 2);
    CHECK(std::count(m.boxBox.begin(), m.boxBox.end(), std::pair{p, q}) == 1);
    CHECK(std::count(m.boxBox.begin(), m.boxBox.end(), std::pair{top(), r}) == 1);
    CHECK(m.boxBot.empty());
    ModalPart d = modal_part(parse_sequent("<>p <= <>q ; <>r < <>q ; bot < <>s"), Logic::GKDia);
    CHECK(d.diaDia == std::vector<std::pair<Formula, Formula>>{{p, q}});
    CHECK(d.diaLow == std::vector<Formula>{s});
    ModalPart f = modal_part(parse_sequent("<>p <= <>q ; top <= <>r"), Logic::GKFDia);
    CHECK(f.diaDia == std::vector<std::pair<Formula, Formula>>{{p, q}});
    CHECK(f.diaHigh.empty());
    ModalPart g = modal_part(parse_sequent("<>p <= bot ; top <= <>r"), Logic::GKDia);
    CHECK(g.diaDia == std::vector<std::pair<Formula, Formula>>{{p, bot()}});
    CHECK(g.diaHigh == std::vector<Formula>{r});
    CHECK_THROWS_AS(modal_part(parse_sequent("<>p <= []q"), Logic::GKDia), ShapeError);
}
