/* C interface to the godel library.  All strings are UTF-8.  Strings returned
 * through char** out-parameters are owned by the caller and released with
 * godel_string_free.  On any status other than GODEL_OK, godel_last_error()
 * describes the failure (per thread, until the next call that fails). */
#ifndef GODEL_H
#define GODEL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define GODEL_API __declspec(dllexport)
#else
#define GODEL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum godel_status {
    GODEL_OK = 0,
    GODEL_E_PARSE = 1,         /* malformed formula, sequent, hypersequent, JSON */
    GODEL_E_FRAGMENT = 2,      /* input outside the fragment of the requested logic */
    GODEL_E_BUDGET = 3,        /* configured search limit exhausted */
    GODEL_E_ARGUMENT = 4,      /* bad argument: null pointer, unknown logic, bad bound */
    GODEL_E_REJECTED = 5,      /* input proof does not pass the checker */
    GODEL_E_INTERNAL = 6
} godel_status;

typedef enum godel_logic {
    GODEL_LOGIC_G = 0,
    GODEL_LOGIC_GK_BOX = 1,
    GODEL_LOGIC_GK_DIAMOND = 2,
    GODEL_LOGIC_GKF_DIAMOND = 3
} godel_logic;

typedef struct godel_verdict godel_verdict;
typedef struct godel_proof godel_proof;
typedef struct godel_model godel_model;

GODEL_API const char* godel_version(void);
GODEL_API const char* godel_last_error(void);
GODEL_API void godel_string_free(char* s);

/* "g", "gk-box", "gk-diamond", "gkf-diamond". */
GODEL_API godel_status godel_logic_from_name(const char* name, godel_logic* out);
GODEL_API const char* godel_logic_name(godel_logic logic);

/* ---- decision procedure ---------------------------------------------- */

typedef struct godel_decide_options {
    uint64_t max_nodes;     /* distinct sequents explored; 0 = default */
    int32_t max_depth;      /* nested modal leaf tests; 0 = default */
    int32_t exhaustive_j;   /* nonzero: exhaustive subset search instead of the fixpoint */
    int32_t cross_check;    /* nonzero: run both searches and count disagreements */
} godel_decide_options;

GODEL_API void godel_decide_options_init(godel_decide_options* opts);

/* input: a formula (decided as top <= A) or a sequent "A <= B ; C < D". */
GODEL_API godel_status godel_decide(godel_logic logic, const char* input, const godel_decide_options* opts,
                                    godel_verdict** out);
GODEL_API int godel_verdict_valid(const godel_verdict* v);
/* Canonical rendering of the decided sequent. */
GODEL_API godel_status godel_verdict_input(const godel_verdict* v, char** out);
/* Trace of a valid verdict, as JSON or indented text; GODEL_E_ARGUMENT if invalid. */
GODEL_API godel_status godel_verdict_trace_json(const godel_verdict* v, char** out);
GODEL_API godel_status godel_verdict_trace_text(const godel_verdict* v, char** out);
GODEL_API godel_status godel_verdict_check_trace(const godel_verdict* v, int* ok);
/* Failing leaf and counter-assignment of an invalid verdict. */
GODEL_API godel_status godel_verdict_diagnostic_json(const godel_verdict* v, char** out);
GODEL_API uint64_t godel_verdict_nodes(const godel_verdict* v);
GODEL_API uint64_t godel_verdict_disagreements(const godel_verdict* v);
GODEL_API void godel_verdict_free(godel_verdict* v);

/* ---- hypersequent proofs --------------------------------------------- */

GODEL_API godel_status godel_proof_from_json(const char* text, godel_proof** out);
GODEL_API godel_status godel_proof_to_json(const godel_proof* p, char** out);
GODEL_API godel_status godel_proof_conclusion(const godel_proof* p, char** out);
/* ok = 1 when every node instantiates its rule; otherwise ok = 0 and
 * godel_last_error() locates the first failing node.  modal permits the box rule. */
GODEL_API godel_status godel_proof_check(const godel_proof* p, int modal, int* ok);
GODEL_API godel_status godel_proof_eliminate_cuts(const godel_proof* p, godel_proof** out);
GODEL_API uint64_t godel_proof_count_rule(const godel_proof* p, const char* rule);
GODEL_API uint64_t godel_proof_size(const godel_proof* p);
GODEL_API void godel_proof_free(godel_proof* p);

/* ---- Kripke models ---------------------------------------------------- */

GODEL_API godel_status godel_model_from_json(const char* text, godel_model** out);
GODEL_API godel_status godel_model_to_json(const godel_model* m, char** out);
GODEL_API void godel_model_free(godel_model* m);
/* Exact value of a formula at a world, as "n/d" (or "0", "1"). */
GODEL_API godel_status godel_eval(const godel_model* m, const char* formula, int32_t world, char** out);

typedef struct godel_search_options {
    int32_t max_worlds;  /* 0 = default (3) */
    int32_t grid;        /* grid denominator; 0 = default (5) */
    int32_t random;      /* nonzero: seeded sampling instead of exhaustive enumeration */
    uint64_t seed;
    uint64_t samples;    /* random mode; 0 = default */
    uint64_t budget;     /* elementary steps; 0 = default */
} godel_search_options;

GODEL_API void godel_search_options_init(godel_search_options* opts);

/* found = 1 with a model and world refuting the input, or found = 0.  When the
 * budget runs out before the search space is covered the status is
 * GODEL_E_BUDGET and found = 0.  Absence of a witness proves nothing. */
GODEL_API godel_status godel_countermodel(godel_logic logic, const char* input, const godel_search_options* opts,
                                          int* found, godel_model** model, int32_t* world);

/* ---- regression corpus ------------------------------------------------ */

/* Runs the embedded corpus; report holds one line per entry. */
GODEL_API godel_status godel_selftest(int32_t* passed, int32_t* failed, char** report);

#ifdef __cplusplus
}
#endif

#endif
