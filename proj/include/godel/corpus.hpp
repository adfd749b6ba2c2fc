#pragma once

#include <string>
#include <vector>

#include "godel/formula.hpp"

namespace godel {

struct CorpusEntry {
    std::string name;
    Logic logic;
    std::string formula;
    bool valid;
};

// Hilbert axioms of G and of the box and diamond fragments, instantiated.
const std::vector<CorpusEntry>& axiom_corpus();
// Formulas separating the logics (finite model property failures, crisp vs fuzzy).
const std::vector<CorpusEntry>& separation_corpus();

struct SelftestReport {
    int passed = 0;
    int failed = 0;
    std::vector<std::string> lines;
};

// Decides every corpus entry, checks the verdict and replays valid traces.
SelftestReport run_selftest();

}  // namespace godel
