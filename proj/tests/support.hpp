#pragma once

#include <random>
#include <string>
#include <vector>

#include "godel/formula.hpp"

namespace godel::testing {

struct GenOptions {
    std::vector<std::string> vars{"p", "q"};
    bool constants = true;
    Op modality = Op::Var;  // Op::Box or Op::Dia to allow that modality
    int max_nesting = 0;
};

// A uniform-ish random formula with exactly `size` nodes.
inline Formula random_formula(std::mt19937_64& rng, int size, const GenOptions& o) {
    auto pick = [&](int n) { return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(rng)); };
    if (size <= 1) {
        int n = static_cast<int>(o.vars.size());
        int k = pick(o.constants ? n + 1 : n);
        if (k < n) return var(o.vars[k]);
        return pick(2) ? top() : bot();
    }
    bool modal_ok = o.modality != Op::Var && o.max_nesting > 0;
    bool unary = size == 2 || (modal_ok && pick(4) == 0);
    if (unary && !modal_ok) {
        // Only negation is unary without modalities: ~A is A -> bot (two extra nodes).
        if (size >= 3) return neg(random_formula(rng, size - 2, o));
        return random_formula(rng, 1, o);
    }
    if (unary) {
        GenOptions inner = o;
        inner.max_nesting = o.max_nesting - 1;
        return make(o.modality, random_formula(rng, size - 1, inner));
    }
    int left = 1 + pick(size - 2);
    static const Op bins[3] = {Op::And, Op::Or, Op::Imp};
    return make(bins[pick(3)], random_formula(rng, left, o), random_formula(rng, size - 1 - left, o));
}

}  // namespace godel::testing
