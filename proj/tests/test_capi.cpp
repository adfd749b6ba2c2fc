#include "doctest.h"

#include <string>

#include "godel/godel.h"

namespace {
std::string take(char* s) {
    std::string out = s ? s : "";
    godel_string_free(s);
    return out;
}
}  // namespace

TEST_CASE("c api: decide") {
    godel_decide_options opts;
    godel_decide_options_init(&opts);
    opts.cross_check = 1;
    godel_verdict* v = nullptr;
    REQUIRE(godel_decide(GODEL_LOGIC_GK_BOX, "[](p->q) -> ([]p -> []q)", &opts, &v) == GODEL_OK);
    CHECK(godel_verdict_valid(v) == 1);
    CHECK(godel_verdict_disagreements(v) == 0);
    int ok = 0;
    CHECK(godel_verdict_check_trace(v, &ok) == GODEL_OK);
    CHECK(ok == 1);
    char* s = nullptr;
    REQUIRE(godel_verdict_trace_json(v, &s) == GODEL_OK);
    CHECK(take(s).find("modal-box") != std::string::npos);
    CHECK(godel_verdict_diagnostic_json(v, &s) != GODEL_OK);
    godel_verdict_free(v);

    REQUIRE(godel_decide(GODEL_LOGIC_G, "p <= q ; q < p", nullptr, &v) == GODEL_OK);
    CHECK(godel_verdict_valid(v) == 1);
    godel_verdict_free(v);

    v = nullptr;
    CHECK(godel_decide(GODEL_LOGIC_G, "p ->", nullptr, &v) == GODEL_E_PARSE);
    CHECK(v == nullptr);
    CHECK(std::string(godel_last_error()).find("end of input") != std::string::npos);
    CHECK(godel_decide(GODEL_LOGIC_G, "<>p", nullptr, &v) == GODEL_E_FRAGMENT);
    CHECK(godel_decide(GODEL_LOGIC_G, nullptr, nullptr, &v) == GODEL_E_ARGUMENT);
    opts.max_nodes = 2;
    CHECK(godel_decide(GODEL_LOGIC_GK_BOX, "[](p->q) -> ([]p -> []q)", &opts, &v) == GODEL_E_BUDGET);
}

TEST_CASE("c api: logic names") {
    godel_logic l;
    CHECK(godel_logic_from_name("gkf-diamond", &l) == GODEL_OK);
    CHECK(l == GODEL_LOGIC_GKF_DIAMOND);
    CHECK(std::string(godel_logic_name(GODEL_LOGIC_GK_BOX)) == "gk-box");
    CHECK(godel_logic_from_name("s5", &l) == GODEL_E_ARGUMENT);
}

TEST_CASE("c api: proofs") {
    const char* text = R"({"rule": "imp-r", "conclusion": "=> p -> p",
                           "premises": [{"rule": "id", "conclusion": "p => p", "premises": []}]})";
    godel_proof* p = nullptr;
    REQUIRE(godel_proof_from_json(text, &p) == GODEL_OK);
    int ok = 0;
    CHECK(godel_proof_check(p, 0, &ok) == GODEL_OK);
    CHECK(ok == 1);
    char* s = nullptr;
    REQUIRE(godel_proof_conclusion(p, &s) == GODEL_OK);
    CHECK(take(s) == "=> p -> p");
    CHECK(godel_proof_size(p) == 2);
    godel_proof* q = nullptr;
    REQUIRE(godel_proof_eliminate_cuts(p, &q) == GODEL_OK);
    CHECK(godel_proof_count_rule(q, "cut") == 0);
    godel_proof_free(q);
    godel_proof_free(p);

    CHECK(godel_proof_from_json("{\"rule\":", &p) == GODEL_E_PARSE);
    REQUIRE(godel_proof_from_json(R"({"rule": "id", "conclusion": "p => q", "premises": []})", &p) == GODEL_OK);
    CHECK(godel_proof_check(p, 1, &ok) == GODEL_OK);
    CHECK(ok == 0);
    CHECK(std::string(godel_last_error()).find("id") != std::string::npos);
    CHECK(godel_proof_eliminate_cuts(p, &q) == GODEL_E_REJECTED);
    godel_proof_free(p);
}

TEST_CASE("c api: models and search") {
    const char* text = R"({"worlds": 2, "kind": "crisp", "access": [[[0,1],[1,1]],[[0,1],[0,1]]],
                           "valuation": {"p": [[0,1],[1,3]]}})";
    godel_model* m = nullptr;
    REQUIRE(godel_model_from_json(text, &m) == GODEL_OK);
    char* s = nullptr;
    REQUIRE(godel_eval(m, "<>p", 0, &s) == GODEL_OK);
    CHECK(take(s) == "1/3");
    CHECK(godel_eval(m, "<>p", 7, &s) == GODEL_E_ARGUMENT);
    CHECK(godel_eval(m, "<>r", 0, &s) == GODEL_E_ARGUMENT);
    CHECK(godel_eval(m, "<>(p", 0, &s) == GODEL_E_PARSE);
    godel_model_free(m);
    CHECK(godel_model_from_json("{\"worlds\": 0}", &m) == GODEL_E_PARSE);

    godel_search_options opts;
    godel_search_options_init(&opts);
    opts.max_worlds = 2;
    int found = 0;
    int32_t world = -1;
    REQUIRE(godel_countermodel(GODEL_LOGIC_GK_DIAMOND, "<>p -> <>q", &opts, &found, &m, &world) == GODEL_OK);
    CHECK(found == 1);
    REQUIRE(m != nullptr);
    REQUIRE(godel_eval(m, "<>p -> <>q", world, &s) == GODEL_OK);
    CHECK(take(s) != "1");
    godel_model_free(m);
    m = nullptr;
    REQUIRE(godel_countermodel(GODEL_LOGIC_G, "p -> p", &opts, &found, &m, &world) == GODEL_OK);
    CHECK(found == 0);
    CHECK(m == nullptr);
}

TEST_CASE("c api: selftest") {
    int32_t passed = 0, failed = 0;
    char* report = nullptr;
    REQUIRE(godel_selftest(&passed, &failed, &report) == GODEL_OK);
    CHECK(failed == 0);
    CHECK(passed > 0);
    CHECK(!take(report).empty());
}
