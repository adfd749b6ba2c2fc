#include "godel/godel.h"

#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

#include "godel/corpus.hpp"
#include "godel/hypersequent.hpp"
#include "godel/prover.hpp"
#include "godel/semantics.hpp"

struct godel_verdict {
    godel::Logic logic;
    godel::Sequent sequent;
    godel::Verdict verdict;
};

struct godel_proof {
    godel::DerivationPtr d;
};

struct godel_model {
    godel::KripkeModel m;
};

namespace {

thread_local std::string last_error;

godel_status fail(godel_status s, const std::string& msg) {
    last_error = msg;
    return s;
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

godel_status put(char** out, const std::string& s) {
    if (!out) return fail(GODEL_E_ARGUMENT, "null output pointer");
    *out = dup(s);
    return *out ? GODEL_OK : fail(GODEL_E_INTERNAL, "out of memory");
}

bool to_logic(godel_logic l, godel::Logic& out) {
    switch (l) {
    case GODEL_LOGIC_G: out = godel::Logic::G; return true;
    case GODEL_LOGIC_GK_BOX: out = godel::Logic::GKBox; return true;
    case GODEL_LOGIC_GK_DIAMOND: out = godel::Logic::GKDia; return true;
    case GODEL_LOGIC_GKF_DIAMOND: out = godel::Logic::GKFDia; return true;
    }
    return false;
}

// A relation token anywhere means sequent syntax; otherwise a formula.
godel::Sequent parse_input(const char* text) {
    using namespace godel::syntax;
    for (const Token& t : lex(text))
        if (t.kind == Tok::Le || t.kind == Tok::Lt || t.kind == Tok::Semi) return godel::parse_sequent(text);
    return godel::sequent_of_formula(godel::parse_formula(text));
}

// Maps library exceptions onto status codes.
template <class F>
godel_status guarded(F&& f) {
    try {
        return f();
    } catch (const godel::ParseError& e) {
        return fail(GODEL_E_PARSE, e.what());
    } catch (const godel::FragmentError& e) {
        return fail(GODEL_E_FRAGMENT, e.what());
    } catch (const godel::BudgetExceeded& e) {
        return fail(GODEL_E_BUDGET, e.what());
    } catch (const godel::EvalError& e) {
        return fail(GODEL_E_ARGUMENT, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(GODEL_E_ARGUMENT, e.what());
    } catch (const std::bad_alloc&) {
        return fail(GODEL_E_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(GODEL_E_INTERNAL, e.what());
    } catch (...) {
        return fail(GODEL_E_INTERNAL, "unknown error");
    }
}

}  // namespace

extern "C" {

const char* godel_version(void) { return "1.0.0"; }

const char* godel_last_error(void) { return last_error.c_str(); }

void godel_string_free(char* s) { std::free(s); }

godel_status godel_logic_from_name(const char* name, godel_logic* out) {
    if (!name || !out) return fail(GODEL_E_ARGUMENT, "null argument");
    godel::Logic l;
    if (!godel::parse_logic(name, l))
        return fail(GODEL_E_ARGUMENT, std::string("unknown logic '") + name + "' (expected g, gk-box, gk-diamond, gkf-diamond)");
    switch (l) {
    case godel::Logic::G: *out = GODEL_LOGIC_G; break;
    case godel::Logic::GKBox: *out = GODEL_LOGIC_GK_BOX; break;
    case godel::Logic::GKDia: *out = GODEL_LOGIC_GK_DIAMOND; break;
    case godel::Logic::GKFDia: *out = GODEL_LOGIC_GKF_DIAMOND; break;
    }
    return GODEL_OK;
}

const char* godel_logic_name(godel_logic logic) {
    godel::Logic l;
    return to_logic(logic, l) ? godel::logic_name(l) : "unknown";
}

void godel_decide_options_init(godel_decide_options* opts) {
    if (!opts) return;
    godel::ProverConfig d;
    opts->max_nodes = d.max_nodes;
    opts->max_depth = d.max_depth;
    opts->exhaustive_j = 0;
    opts->cross_check = 0;
}

godel_status godel_decide(godel_logic logic, const char* input, const godel_decide_options* opts, godel_verdict** out) {
    if (!input || !out) return fail(GODEL_E_ARGUMENT, "null argument");
    *out = nullptr;
    godel::Logic l;
    if (!to_logic(logic, l)) return fail(GODEL_E_ARGUMENT, "unknown logic");
    return guarded([&] {
        godel::ProverConfig cfg;
        if (opts) {
            if (opts->max_nodes) cfg.max_nodes = opts->max_nodes;
            if (opts->max_depth < 0) return fail(GODEL_E_ARGUMENT, "max_depth must be positive");
            if (opts->max_depth) cfg.max_depth = opts->max_depth;
            if (opts->exhaustive_j) cfg.jsearch = godel::ProverConfig::JSearch::Exhaustive;
            cfg.cross_check = opts->cross_check != 0;
        }
        godel::Sequent s = parse_input(input);
        if (!godel::in_fragment(s, l))
            return fail(GODEL_E_FRAGMENT, std::string("input is outside the language of ") + godel::logic_name(l));
        godel::Verdict v = godel::decide(l, s, cfg);
        *out = new godel_verdict{l, std::move(s), std::move(v)};
        return GODEL_OK;
    });
}

int godel_verdict_valid(const godel_verdict* v) { return v && v->verdict.valid ? 1 : 0; }

godel_status godel_verdict_input(const godel_verdict* v, char** out) {
    if (!v) return fail(GODEL_E_ARGUMENT, "null verdict");
    return put(out, godel::render(v->sequent));
}

godel_status godel_verdict_trace_json(const godel_verdict* v, char** out) {
    if (!v || !v->verdict.valid) return fail(GODEL_E_ARGUMENT, "no trace: verdict is not valid");
    return guarded([&] { return put(out, godel::trace_to_json(v->verdict.trace)); });
}

godel_status godel_verdict_trace_text(const godel_verdict* v, char** out) {
    if (!v || !v->verdict.valid) return fail(GODEL_E_ARGUMENT, "no trace: verdict is not valid");
    return guarded([&] { return put(out, godel::render_trace(v->verdict.trace)); });
}

godel_status godel_verdict_check_trace(const godel_verdict* v, int* ok) {
    if (!v || !ok || !v->verdict.valid) return fail(GODEL_E_ARGUMENT, "no trace to check");
    return guarded([&] {
        std::string why;
        *ok = godel::check_trace(v->logic, v->sequent, v->verdict.trace, &why) ? 1 : 0;
        if (!*ok) last_error = why;
        return GODEL_OK;
    });
}

godel_status godel_verdict_diagnostic_json(const godel_verdict* v, char** out) {
    if (!v || !v->verdict.diagnostic) return fail(GODEL_E_ARGUMENT, "no diagnostic: verdict is not invalid");
    return guarded([&] { return put(out, godel::diagnostic_to_json(*v->verdict.diagnostic)); });
}

uint64_t godel_verdict_nodes(const godel_verdict* v) { return v ? v->verdict.stats.nodes : 0; }

uint64_t godel_verdict_disagreements(const godel_verdict* v) { return v ? v->verdict.stats.disagreements : 0; }

void godel_verdict_free(godel_verdict* v) { delete v; }

godel_status godel_proof_from_json(const char* text, godel_proof** out) {
    if (!text || !out) return fail(GODEL_E_ARGUMENT, "null argument");
    *out = nullptr;
    try {
        *out = new godel_proof{godel::derivation_from_json(text)};
        return GODEL_OK;
    } catch (const std::invalid_argument& e) {
        return fail(GODEL_E_PARSE, e.what());
    } catch (const std::exception& e) {
        return fail(GODEL_E_INTERNAL, e.what());
    }
}

godel_status godel_proof_to_json(const godel_proof* p, char** out) {
    if (!p) return fail(GODEL_E_ARGUMENT, "null proof");
    return guarded([&] { return put(out, godel::derivation_to_json(p->d) + "\n"); });
}

godel_status godel_proof_conclusion(const godel_proof* p, char** out) {
    if (!p) return fail(GODEL_E_ARGUMENT, "null proof");
    return put(out, godel::render(p->d->conclusion));
}

godel_status godel_proof_check(const godel_proof* p, int modal, int* ok) {
    if (!p || !ok) return fail(GODEL_E_ARGUMENT, "null argument");
    return guarded([&] {
        std::string why;
        *ok = godel::check_derivation(p->d, modal != 0, &why) ? 1 : 0;
        if (!*ok) last_error = why;
        return GODEL_OK;
    });
}

godel_status godel_proof_eliminate_cuts(const godel_proof* p, godel_proof** out) {
    if (!p || !out) return fail(GODEL_E_ARGUMENT, "null argument");
    *out = nullptr;
    try {
        *out = new godel_proof{godel::eliminate_cuts(p->d)};
        return GODEL_OK;
    } catch (const std::invalid_argument& e) {
        return fail(GODEL_E_REJECTED, e.what());
    } catch (const std::exception& e) {
        return fail(GODEL_E_INTERNAL, e.what());
    }
}

uint64_t godel_proof_count_rule(const godel_proof* p, const char* rule) {
    return p && rule ? godel::count_rule(p->d, rule) : 0;
}

uint64_t godel_proof_size(const godel_proof* p) { return p ? godel::derivation_size(p->d) : 0; }

void godel_proof_free(godel_proof* p) { delete p; }

godel_status godel_model_from_json(const char* text, godel_model** out) {
    if (!text || !out) return fail(GODEL_E_ARGUMENT, "null argument");
    *out = nullptr;
    try {
        *out = new godel_model{godel::model_from_json(text)};
        return GODEL_OK;
    } catch (const std::invalid_argument& e) {
        return fail(GODEL_E_PARSE, e.what());
    } catch (const std::exception& e) {
        return fail(GODEL_E_INTERNAL, e.what());
    }
}

godel_status godel_model_to_json(const godel_model* m, char** out) {
    if (!m) return fail(GODEL_E_ARGUMENT, "null model");
    return guarded([&] { return put(out, godel::model_to_json(m->m)); });
}

void godel_model_free(godel_model* m) { delete m; }

godel_status godel_eval(const godel_model* m, const char* formula, int32_t world, char** out) {
    if (!m || !formula) return fail(GODEL_E_ARGUMENT, "null argument");
    if (world < 0 || world >= m->m.worlds) return fail(GODEL_E_ARGUMENT, "world index out of range");
    return guarded([&] {
        godel::Formula f = godel::parse_formula(formula);
        return put(out, godel::to_string(godel::eval_formula(m->m, f, world)));
    });
}

void godel_search_options_init(godel_search_options* opts) {
    if (!opts) return;
    godel::SearchConfig d;
    opts->max_worlds = d.max_worlds;
    opts->grid = d.grid;
    opts->random = 0;
    opts->seed = d.seed;
    opts->samples = d.samples;
    opts->budget = d.budget;
}

godel_status godel_countermodel(godel_logic logic, const char* input, const godel_search_options* opts, int* found,
                                godel_model** model, int32_t* world) {
    if (!input || !found || !model || !world) return fail(GODEL_E_ARGUMENT, "null argument");
    *found = 0;
    *model = nullptr;
    *world = 0;
    godel::Logic l;
    if (!to_logic(logic, l)) return fail(GODEL_E_ARGUMENT, "unknown logic");
    return guarded([&] {
        godel::SearchConfig cfg;
        if (opts) {
            if (opts->max_worlds < 0 || opts->grid < 0) return fail(GODEL_E_ARGUMENT, "search bounds must be positive");
            if (opts->max_worlds) cfg.max_worlds = opts->max_worlds;
            if (opts->grid) cfg.grid = opts->grid;
            if (opts->random) cfg.mode = godel::SearchConfig::Mode::Random;
            cfg.seed = opts->seed;
            if (opts->samples) cfg.samples = opts->samples;
            if (opts->budget) cfg.budget = opts->budget;
        }
        godel::Sequent s = parse_input(input);
        if (!godel::in_fragment(s, l))
            return fail(GODEL_E_FRAGMENT, std::string("input is outside the language of ") + godel::logic_name(l));
        godel::SearchResult r = godel::countermodel_search(l, s, cfg);
        if (r.status == godel::SearchResult::Status::BudgetExhausted)
            return fail(GODEL_E_BUDGET, "countermodel search budget exhausted after " + std::to_string(r.work) + " steps");
        if (r.status == godel::SearchResult::Status::Found) {
            *found = 1;
            *model = new godel_model{*r.model};
            *world = r.world;
        }
        return GODEL_OK;
    });
}

godel_status godel_selftest(int32_t* passed, int32_t* failed, char** report) {
    if (!passed || !failed) return fail(GODEL_E_ARGUMENT, "null argument");
    return guarded([&] {
        godel::SelftestReport r = godel::run_selftest();
        *passed = r.passed;
        *failed = r.failed;
        if (report) {
            std::string text;
            for (const std::string& line : r.lines) text += line + "\n";
            return put(report, text);
        }
        return GODEL_OK;
    });
}

}  // extern "C"
