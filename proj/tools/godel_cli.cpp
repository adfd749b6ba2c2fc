// Command-line front end.  Uses only the C interface of the library.
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "godel/godel.h"

namespace {

using json = nlohmann::ordered_json;

enum Exit { kValid = 0, kInvalid = 1, kUsage = 2, kBudget = 3 };

struct Owned {
    char* p = nullptr;
    ~Owned() { godel_string_free(p); }
    std::string str() const { return p ? p : ""; }
};

int status_exit(godel_status s) {
    switch (s) {
    case GODEL_OK: return kValid;
    case GODEL_E_BUDGET: return kBudget;
    case GODEL_E_INTERNAL: return 4;
    default: return kUsage;
    }
}

int report_error(godel_status s) {
    std::cerr << "error: " << godel_last_error() << "\n";
    return status_exit(s);
}

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot read '" << path << "'\n";
        return false;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

bool logic_of(const std::string& name, godel_logic& out) {
    godel_status s = godel_logic_from_name(name.c_str(), &out);
    if (s != GODEL_OK) std::cerr << "error: " << godel_last_error() << "\n";
    return s == GODEL_OK;
}

bool calculus_modal(const std::string& name, bool& modal) {
    if (name == "gg") modal = false;
    else if (name == "ggk-box") modal = true;
    else {
        std::cerr << "error: unknown calculus '" << name << "' (expected gg or ggk-box)\n";
        return false;
    }
    return true;
}

struct DecideArgs {
    std::string logic, input, format = "text";
    bool trace = false, exhaustive = false;
    std::uint64_t max_nodes = 0;
    int max_depth = 0;
};

int cmd_decide(const DecideArgs& a) {
    godel_logic logic;
    if (!logic_of(a.logic, logic)) return kUsage;
    godel_decide_options opts;
    godel_decide_options_init(&opts);
    if (a.max_nodes) opts.max_nodes = a.max_nodes;
    if (a.max_depth) opts.max_depth = a.max_depth;
    opts.exhaustive_j = a.exhaustive ? 1 : 0;
    godel_verdict* raw = nullptr;
    godel_status s = godel_decide(logic, a.input.c_str(), &opts, &raw);
    if (s != GODEL_OK) return report_error(s);
    std::unique_ptr<godel_verdict, void (*)(godel_verdict*)> v(raw, godel_verdict_free);
    const bool valid = godel_verdict_valid(v.get());
    Owned input;
    godel_verdict_input(v.get(), &input.p);
    if (a.format == "json") {
        json out = {{"logic", a.logic}, {"input", input.str()}, {"verdict", valid ? "valid" : "invalid"}};
        if (a.trace) {
            Owned t;
            if (valid && godel_verdict_trace_json(v.get(), &t.p) == GODEL_OK) out["trace"] = json::parse(t.str());
            if (!valid && godel_verdict_diagnostic_json(v.get(), &t.p) == GODEL_OK)
                out["diagnostic"] = json::parse(t.str());
        }
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << (valid ? "valid" : "invalid") << "\n";
        if (a.trace) {
            Owned t;
            if (valid && godel_verdict_trace_text(v.get(), &t.p) == GODEL_OK) std::cout << t.str();
            if (!valid && godel_verdict_diagnostic_json(v.get(), &t.p) == GODEL_OK)
                std::cout << json::parse(t.str()).dump(2) << "\n";
        }
    }
    return valid ? kValid : kInvalid;
}

godel_proof* load_proof(const std::string& path, godel_status& s) {
    std::string text;
    s = GODEL_E_PARSE;
    if (!read_file(path, text)) return nullptr;
    godel_proof* p = nullptr;
    s = godel_proof_from_json(text.c_str(), &p);
    return p;
}

int cmd_check_proof(const std::string& file, const std::string& calculus, const std::string& format) {
    bool modal;
    if (!calculus_modal(calculus, modal)) return kUsage;
    godel_status s;
    godel_proof* raw = load_proof(file, s);
    if (!raw) return s == GODEL_OK ? kUsage : (std::cerr << "error: " << godel_last_error() << "\n", kUsage);
    std::unique_ptr<godel_proof, void (*)(godel_proof*)> p(raw, godel_proof_free);
    int ok = 0;
    if ((s = godel_proof_check(p.get(), modal ? 1 : 0, &ok)) != GODEL_OK) return report_error(s);
    Owned concl;
    godel_proof_conclusion(p.get(), &concl.p);
    const std::string failure = ok ? "" : godel_last_error();
    if (format == "json") {
        json out = {{"calculus", calculus}, {"conclusion", concl.str()}, {"accepted", ok == 1}};
        if (!ok) out["failure"] = failure;
        std::cout << out.dump(2) << "\n";
    } else if (ok) {
        std::cout << "accepted: " << concl.str() << "\n";
    } else {
        std::cout << "rejected: " << failure << "\n";
    }
    return ok ? kValid : kInvalid;
}

int cmd_cut_elim(const std::string& in, const std::string& out) {
    godel_status s;
    godel_proof* raw = load_proof(in, s);
    if (!raw) return (std::cerr << "error: " << godel_last_error() << "\n", kUsage);
    std::unique_ptr<godel_proof, void (*)(godel_proof*)> p(raw, godel_proof_free);
    godel_proof* res = nullptr;
    if ((s = godel_proof_eliminate_cuts(p.get(), &res)) != GODEL_OK) return report_error(s);
    std::unique_ptr<godel_proof, void (*)(godel_proof*)> r(res, godel_proof_free);
    Owned text;
    if ((s = godel_proof_to_json(r.get(), &text.p)) != GODEL_OK) return report_error(s);
    if (out.empty() || out == "-") {
        std::cout << text.str();
    } else {
        std::ofstream f(out, std::ios::binary);
        if (!(f << text.str())) {
            std::cerr << "error: cannot write '" << out << "'\n";
            return kUsage;
        }
    }
    std::cerr << "removed " << godel_proof_count_rule(p.get(), "cut") << " cut(s); " << godel_proof_size(r.get())
              << " nodes\n";
    return kValid;
}

struct SearchArgs {
    std::string logic, input, format = "text";
    int max_worlds = 3, grid = 5;
    std::uint64_t seed = 1, samples = 0, budget = 0;
    bool random = false;
};

int cmd_countermodel(const SearchArgs& a) {
    godel_logic logic;
    if (!logic_of(a.logic, logic)) return kUsage;
    if (a.max_worlds < 1 || a.grid < 1) {
        std::cerr << "error: --max-worlds and --grid must be positive\n";
        return kUsage;
    }
    godel_search_options opts;
    godel_search_options_init(&opts);
    opts.max_worlds = a.max_worlds;
    opts.grid = a.grid;
    opts.random = a.random ? 1 : 0;
    opts.seed = a.seed;
    if (a.samples) opts.samples = a.samples;
    if (a.budget) opts.budget = a.budget;
    int found = 0;
    godel_model* raw = nullptr;
    int32_t world = 0;
    godel_status s = godel_countermodel(logic, a.input.c_str(), &opts, &found, &raw, &world);
    if (s == GODEL_E_BUDGET) {
        // an exhausted search budget is not a failure here: no witness was found
        if (a.format == "json") std::cout << json{{"found", false}, {"budget_exhausted", true}}.dump(2) << "\n";
        else std::cout << "no countermodel found before the budget ran out\n";
        return kValid;
    }
    if (s != GODEL_OK) return report_error(s);
    std::unique_ptr<godel_model, void (*)(godel_model*)> m(raw, godel_model_free);
    if (!found) {
        if (a.format == "json") std::cout << json{{"found", false}}.dump(2) << "\n";
        else std::cout << "no countermodel within the bounds\n";
        return kValid;
    }
    Owned text;
    godel_model_to_json(m.get(), &text.p);
    if (a.format == "json") {
        std::cout << json{{"found", true}, {"world", world}, {"model", json::parse(text.str())}}.dump(2) << "\n";
    } else {
        std::cout << "countermodel at world " << world << ": " << json::parse(text.str()).dump() << "\n";
    }
    return kInvalid;
}

int cmd_eval(const std::string& model_file, const std::string& formula, int world) {
    std::string text;
    if (!read_file(model_file, text)) return kUsage;
    godel_model* raw = nullptr;
    godel_status s = godel_model_from_json(text.c_str(), &raw);
    if (s != GODEL_OK) return report_error(s);
    std::unique_ptr<godel_model, void (*)(godel_model*)> m(raw, godel_model_free);
    Owned value;
    if ((s = godel_eval(m.get(), formula.c_str(), world, &value.p)) != GODEL_OK) return report_error(s);
    std::cout << value.str() << "\n";
    return kValid;
}

int cmd_selftest(bool quiet) {
    int32_t passed = 0, failed = 0;
    Owned report;
    godel_status s = godel_selftest(&passed, &failed, &report.p);
    if (s != GODEL_OK) return report_error(s);
    if (!quiet) std::cout << report.str();
    std::cout << "selftest: " << passed << " passed, " << failed << " failed\n";
    return failed == 0 ? kValid : kInvalid;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decision procedures and proof tools for Goedel logic and its box and diamond fragments"};
    app.require_subcommand(1);
    app.set_version_flag("--version", godel_version());

    DecideArgs da;
    auto* decide = app.add_subcommand("decide", "Decide validity of a formula or sequent of relations");
    decide->add_option("--logic,-l", da.logic, "g, gk-box, gk-diamond or gkf-diamond")->required();
    decide->add_option("input", da.input, "Formula, or relations 'A <= B ; C < D'")->required();
    decide->add_option("--format", da.format)->check(CLI::IsMember({"text", "json"}));
    decide->add_flag("--trace", da.trace, "Print the proof trace or the failing-leaf diagnostic");
    decide->add_option("--max-nodes,--max-branches", da.max_nodes, "Limit on distinct sequents explored");
    decide->add_option("--max-depth", da.max_depth, "Limit on nested modal leaf tests")->check(CLI::PositiveNumber);
    decide->add_flag("--exhaustive-j", da.exhaustive, "Enumerate index sets instead of the fixpoint search");

    std::string proof_file, calculus = "ggk-box", format = "text", out_file;
    auto* check = app.add_subcommand("check-proof", "Check a hypersequent derivation (JSON)");
    check->add_option("file", proof_file)->required();
    check->add_option("--calculus", calculus, "gg or ggk-box")->check(CLI::IsMember({"gg", "ggk-box"}));
    check->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    std::string cut_in;
    auto* cut = app.add_subcommand("cut-elim", "Eliminate cuts from a hypersequent derivation");
    cut->add_option("input", cut_in)->required();
    cut->add_option("output,-o,--output", out_file, "Output file (default: stdout)");

    SearchArgs sa;
    auto* cm = app.add_subcommand("countermodel", "Search for a finite Kripke countermodel");
    cm->add_option("--logic,-l", sa.logic)->required();
    cm->add_option("input", sa.input)->required();
    cm->add_option("--max-worlds", sa.max_worlds)->check(CLI::PositiveNumber);
    cm->add_option("--grid", sa.grid, "Truth values are multiples of 1/grid")->check(CLI::Range(1, 60));
    cm->add_option("--seed", sa.seed);
    cm->add_option("--samples", sa.samples, "Samples in random mode");
    cm->add_option("--budget", sa.budget, "Elementary evaluation steps");
    cm->add_flag("--random", sa.random, "Seeded random sampling instead of exhaustive enumeration");
    cm->add_option("--format", sa.format)->check(CLI::IsMember({"text", "json"}));

    std::string model_file, formula;
    int world = 0;
    auto* ev = app.add_subcommand("eval", "Evaluate a formula at a world of a model file");
    ev->add_option("--model,-m", model_file)->required();
    ev->add_option("formula", formula)->required();
    ev->add_option("--world,-w", world)->check(CLI::NonNegativeNumber);

    bool quiet = false;
    auto* st = app.add_subcommand("selftest", "Run the embedded regression corpus");
    st->add_flag("--quiet,-q", quiet);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    if (*decide) return cmd_decide(da);
    if (*check) return cmd_check_proof(proof_file, calculus, format);
    if (*cut) return cmd_cut_elim(cut_in, out_file);
    if (*cm) return cmd_countermodel(sa);
    if (*ev) return cmd_eval(model_file, formula, world);
    if (*st) return cmd_selftest(quiet);
    return kUsage;
}
