#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "godel/atomic.hpp"

namespace godel {

struct ProverConfig {
    std::size_t max_nodes = 2000000;  // distinct sequents explored
    int max_depth = 64;               // nested modal leaf tests
    enum class JSearch { Gfp, Exhaustive } jsearch = JSearch::Gfp;
    bool cross_check = false;       // run both J searches at every leaf test
    std::size_t exhaustive_cap = 12;  // largest index set enumerated exhaustively
};

struct ProverStats {
    std::size_t nodes = 0;
    std::size_t memo_hits = 0;
    std::size_t leaf_tests = 0;
    std::size_t cross_checks = 0;
    std::size_t disagreements = 0;
    std::size_t cross_check_skipped = 0;  // index set above exhaustive_cap
};

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class FragmentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class TraceKind { Decompose, Structural, PropLeaf, ModalBox, ModalDia };

struct TraceNode;
using Trace = std::shared_ptr<TraceNode>;

struct TraceNode {
    TraceKind kind;
    Sequent sequent;
    std::string rule;      // logical or structural rule name
    Relation principal{};  // principal relation / first structural relation
    Relation second{};     // second (com) relation
    ChainCertificate cert;  // PropLeaf
    std::vector<int> J;     // ModalBox / ModalDia: indices into the modal part lists
    std::vector<Trace> children;
};

struct Diagnostic {
    Sequent leaf;                                 // failing saturated leaf
    std::map<std::string, Rational> assignment;   // refutes the leaf's abstraction
    std::map<std::string, Formula> abstraction;   // fresh variable -> modal formula
    std::string reason;
};

struct Verdict {
    bool valid = false;
    Trace trace;                          // when valid
    std::optional<Diagnostic> diagnostic;  // when invalid
    ProverStats stats;
};

// Logical rules of the calculus.  Names: and-l, and-r, or-l, or-r, imp-lt,
// lt-imp, imp-le, le-imp.  Each premise is listed as the relations added to
// the conclusion minus the principal relation.
struct RuleApplication {
    std::string rule;
    std::vector<std::vector<Relation>> premises;
};
std::optional<RuleApplication> apply_logical_rule(const std::string& rule, const Relation& principal);
// The rule decomposing the left side if compound and non-modal, else the right.
std::optional<RuleApplication> logical_rule_for(const Relation& r);

// Exhaustive decomposition into quasi-atomic sequents.
std::vector<Sequent> decompose(const Sequent& s);

using Recurse = std::function<bool(const Sequent&)>;
std::vector<Sequent> box_premises(const ModalPart& m, const std::vector<int>& J);
std::vector<Sequent> dia_premises(const ModalPart& m, Logic logic, const std::vector<int>& J);
// Some J on success.
std::optional<std::vector<int>> leaf_valid_box(const ModalPart& m, const Recurse& recurse,
                                               ProverConfig::JSearch mode = ProverConfig::JSearch::Gfp);
std::optional<std::vector<int>> leaf_valid_dia(const ModalPart& m, Logic logic, const Recurse& recurse,
                                               ProverConfig::JSearch mode = ProverConfig::JSearch::Gfp);

Verdict decide(Logic logic, const Sequent& s, const ProverConfig& cfg = {});
Verdict decide_formula(Logic logic, Formula f, const ProverConfig& cfg = {});

// Maximal modal nesting over the sides of s; strictly decreases across modal steps.
int modal_nesting(const Sequent& s);

bool check_trace(Logic logic, const Sequent& s, const Trace& t, std::string* why = nullptr);

std::size_t trace_size(const Trace& t);  // distinct nodes
std::string trace_to_json(const Trace& t);
std::string render_trace(const Trace& t);  // indented text
std::string diagnostic_to_json(const Diagnostic& d);

}  // namespace godel
