#include "doctest.h"

#include "godel/atomic.hpp"

using namespace godel;

namespace {
Sequent S(const char* s) { return parse_sequent(s); }
}

TEST_CASE("atomic_valid examples") {
    auto c1 = atomic_valid(S("p <= p"));
    REQUIRE(c1);
    CHECK(c1->condition == 1);
    CHECK(!atomic_valid(S("p < q ; q < p")));
    auto c3 = atomic_valid(S("p <= q ; q < p"));
    REQUIRE(c3);
    CHECK(c3->condition == 1);
    CHECK(check_certificate(S("p <= q ; q < p"), *c3));
    auto c4 = atomic_valid(S("bot < top"));
    REQUIRE(c4);
    CHECK((c4->condition == 4));
    CHECK(!atomic_valid(S("p < p")));
    CHECK(atomic_valid(S("bot <= p"))->condition == 2);
    CHECK(atomic_valid(S("p <= top"))->condition == 3);
}

TEST_CASE("extra constants") {
    ConstantTable t;
    t.bind("c", Rational(1, 4));
    t.bind("d", Rational(1, 2));
    t.bind("e", Rational(1, 2));
    auto c = atomic_valid(S("c < d"), t);
    REQUIRE(c);
    CHECK(c->condition == 4);
    CHECK(check_certificate(S("c < d"), *c, t));
    CHECK(!atomic_valid(S("d < c"), t));
    CHECK(!atomic_valid(S("d < e"), t));
    auto c5 = atomic_valid(S("d <= e"), t);
    REQUIRE(c5);
    CHECK(c5->condition == 5);
    CHECK(atomic_valid(S("c <= p ; p < d"), t)->condition == 4);
    CHECK(!atomic_valid(S("d <= p ; p < c"), t));
    CHECK(!counter_valuation(S("c <= p ; p < d"), t));
    auto v = counter_valuation(S("d <= p ; p < c"), t);
    REQUIRE(v);
    CHECK(v->at("p") < Rational(1, 2));
    CHECK(v->at("p") >= Rational(1, 4));
    CHECK_THROWS(t.bind("x", Rational(3, 2)));
}

TEST_CASE("tampered certificates are rejected") {
    Sequent s = S("p <= q ; q <= r ; r < p");
    auto c = atomic_valid(s);
    REQUIRE(c);
    CHECK(check_certificate(s, *c));
    ChainCertificate bad = *c;
    bad.chain.pop_back();
    CHECK(!check_certificate(s, bad));
    bad = *c;
    bad.condition = 4;
    CHECK(!check_certificate(s, bad));
    CHECK(!check_certificate(S("p <= q ; q <= r"), *c));
}

TEST_CASE("counter_valuation refutes invalid sequents") {
    auto v = counter_valuation(S("p < q ; q < p"));
    REQUIRE(v);
    CHECK(v->at("p") == v->at("q"));
    CHECK(!counter_valuation(S("p <= q ; q < p")));
    auto w = counter_valuation(S("p <= q ; q <= r ; top <= p"));
    REQUIRE(w);
    CHECK_THROWS(atomic_valid(S("p & q <= r")));
}

TEST_CASE("saturate") {
    // Both orderings of the (⊤≤⊥, ⊥<⊥) pair are com instances; the one with
    // ⊥<⊥ first adds ⊥≤⊥ or ⊤<⊥, so the empty sequent has two saturated leaves.
    auto e = saturate(Sequent{});
    REQUIRE(e.size() == 2);
    for (const Sequent& t : e) {
        CHECK(t.contains(le(top(), bot())));
        CHECK(t.contains(lt(bot(), bot())));
    }
    CHECK(e[0].contains(le(bot(), bot())) != e[1].contains(le(bot(), bot())));
    for (const Sequent& t : saturate(S("p <= p ; q < r"))) {
        CHECK(t.contains(le(var("p"), var("p"))));
        CHECK(atomic_valid(t));
    }
    for (const char* txt : {"p <= q", "p < q ; q <= r", "[]p <= []q ; p < q"}) {
        Sequent s = S(txt);
        for (const Sequent& t : saturate(s)) {
            for (const Relation& r : s) CHECK(t.contains(r));
            CHECK(is_saturated(t));
        }
    }
}

TEST_CASE("prop_valid") {
    CHECK(prop_valid(S("[]p <= []p")));
    CHECK(!prop_valid(S("[]p <= []q")));
    CHECK(prop_valid(S("<>p <= <>q ; <>q < <>p")));
    auto c = prop_certificate(S("<>p <= <>q ; <>q < <>p"));
    REQUIRE(c);
    CHECK(check_certificate(S("<>p <= <>q ; <>q < <>p"), *c));
}
