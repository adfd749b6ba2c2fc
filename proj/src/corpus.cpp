#include "godel/corpus.hpp"

#include <chrono>
#include <map>

#include "godel/prover.hpp"

namespace godel {

namespace {

std::string subst(std::string schema, const std::map<char, std::string>& inst) {
    std::string out;
    for (char c : schema) {
        auto it = inst.find(c);
        if (it != inst.end()) out += "(" + it->second + ")";
        else out += c;
    }
    return out;
}

const char* const kHG[14] = {
    "A -> (B -> A)",
    "(A & B) -> A",
    "(A & B) -> B",
    "A -> (B -> (A & B))",
    "(bot -> A) & (A -> top)",
    "A -> (A | B)",
    "B -> (A | B)",
    "(A -> B) -> ((C -> A) -> (C -> B))",
    "(A -> (B -> C)) -> (B -> (A -> C))",
    "((A -> C) & (B -> C)) -> ((A | B) -> C)",
    "(A -> (B -> C)) -> ((A & B) -> C)",
    "((C -> A) & (C -> B)) -> (C -> (A & B))",
    "(A -> (A -> B)) -> (A -> B)",
    "(A -> B) | (B -> A)",
};

std::vector<CorpusEntry> build_axioms() {
    std::vector<CorpusEntry> out;
    const std::map<char, std::string> atoms{{'A', "p"}, {'B', "q"}, {'C', "r"}};
    const std::map<char, std::string> compound{{'A', "p -> q"}, {'B', "q | ~r"}, {'C', "p & r"}};
    for (int i = 0; i < 14; ++i) {
        std::string n = "A" + std::to_string(i + 1);
        out.push_back({n, Logic::G, subst(kHG[i], atoms), true});
        out.push_back({n + "'", Logic::G, subst(kHG[i], compound), true});
    }
    const std::map<char, std::string> box_inst{{'A', "[]p -> q"}, {'B', "[](p & q)"}, {'C', "[]r"}};
    const std::map<char, std::string> dia_inst{{'A', "<>p -> q"}, {'B', "<>(p | q)"}, {'C', "<>r"}};
    for (int i = 0; i < 14; ++i) {
        std::string n = "A" + std::to_string(i + 1);
        out.push_back({n + "[]", Logic::GKBox, subst(kHG[i], box_inst), true});
        out.push_back({n + "<>", Logic::GKDia, subst(kHG[i], dia_inst), true});
        out.push_back({n + "<>F", Logic::GKFDia, subst(kHG[i], dia_inst), true});
    }
    const char* kbox = "[](A -> B) -> ([]A -> []B)";
    const char* zbox = "~~[]A -> []~~A";
    const char* kdia = "<>(A | B) -> (<>A | <>B)";
    const char* zdia = "<>~~A -> ~~<>A";
    const char* fdia = "~<>bot";
    const std::map<char, std::string> ab{{'A', "p"}, {'B', "q"}};
    const std::map<char, std::string> ab2{{'A', "p & q"}, {'B', "p -> q"}};
    for (const auto* inst : {&ab, &ab2}) {
        const std::string tag = inst == &ab ? "" : "'";
        out.push_back({"K[]" + tag, Logic::GKBox, subst(kbox, *inst), true});
        out.push_back({"Z[]" + tag, Logic::GKBox, subst(zbox, *inst), true});
        for (Logic l : {Logic::GKDia, Logic::GKFDia}) {
            const std::string suffix = l == Logic::GKDia ? tag : tag + " (fuzzy)";
            out.push_back({"K<>" + suffix, l, subst(kdia, *inst), true});
            out.push_back({"Z<>" + suffix, l, subst(zdia, *inst), true});
        }
    }
    for (Logic l : {Logic::GKDia, Logic::GKFDia})
        out.push_back({l == Logic::GKDia ? "F<>" : "F<> (fuzzy)", l, fdia, true});
    return out;
}

}  // namespace

const std::vector<CorpusEntry>& axiom_corpus() {
    static const std::vector<CorpusEntry> corpus = build_axioms();
    return corpus;
}

const std::vector<CorpusEntry>& separation_corpus() {
    static const std::vector<CorpusEntry> corpus{
        {"no-fmp-box", Logic::GKBox, "[]~~p -> ~~[]p", false},
        {"no-fmp-diamond", Logic::GKDia, "(<>p -> <>q) -> ((<>q -> bot) | <>(p -> q))", false},
        {"crisp-only", Logic::GKDia, "~~<>p -> <>~~p", true},
        {"crisp-only (fuzzy)", Logic::GKFDia, "~~<>p -> <>~~p", false},
        {"converse", Logic::GKFDia, "<>~~p -> ~~<>p", true},
        {"z-box", Logic::GKBox, "~~[]p -> []~~p", true},
    };
    return corpus;
}

SelftestReport run_selftest() {
    SelftestReport rep;
    std::vector<CorpusEntry> all = axiom_corpus();
    for (const auto& e : separation_corpus()) all.push_back(e);
    for (const CorpusEntry& e : all) {
        std::string line = std::string(logic_name(e.logic)) + "  " + e.name + "  " + e.formula + "  ";
        bool ok = false;
        try {
            Formula f = parse_formula(e.formula);
            auto t0 = std::chrono::steady_clock::now();
            Verdict v = decide_formula(e.logic, f);
            double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            ok = v.valid == e.valid;
            if (ok && v.valid) ok = check_trace(e.logic, sequent_of_formula(f), v.trace);
            line += std::string(v.valid ? "valid" : "invalid") + " (" + std::to_string(static_cast<int>(ms)) + " ms)";
        } catch (const std::exception& ex) {
            line += std::string("error: ") + ex.what();
        }
        line = (ok ? "ok    " : "FAIL  ") + line;
        (ok ? rep.passed : rep.failed)++;
        rep.lines.push_back(line);
    }
    return rep;
}

}  // namespace godel
