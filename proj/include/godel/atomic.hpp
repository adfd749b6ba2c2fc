#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "godel/rational.hpp"
#include "godel/relations.hpp"

namespace godel {

// Truth constants available to atomic_valid.  ⊤ and ⊥ are always present;
// further constants are variables whose names are bound here.
class ConstantTable {
public:
    ConstantTable() = default;
    void bind(const std::string& name, const Rational& value);
    bool is_constant(Formula a) const;
    Rational value(Formula a) const;  // a must be a constant
    const std::map<std::string, Rational>& extra() const { return extra_; }

private:
    std::map<std::string, Rational> extra_;
};

struct ChainCertificate {
    std::vector<Relation> chain;
    int condition = 0;  // 1..5, the numbered conditions of the chain criterion
};

// Some certificate iff the atomic sequent is G-valid.  Throws on non-atomic input.
std::optional<ChainCertificate> atomic_valid(const Sequent& s, const ConstantTable& consts = {});
bool check_certificate(const Sequent& s, const ChainCertificate& c, const ConstantTable& consts = {});

// A valuation of the variables of an invalid atomic sequent under which every
// relation fails; nullopt when the sequent is valid.
std::optional<std::map<std::string, Rational>> counter_valuation(const Sequent& s,
                                                                 const ConstantTable& consts = {});

// Structural rule instances used by saturation, in the fixed search order.
struct StructuralStep {
    enum class Rule { Cs, Wl, Wr, Com } rule;
    Relation first{};   // source relation (wl, wr) or first com relation
    Relation second{};  // second com relation
    std::vector<Sequent> premises;
};

const char* rule_name(StructuralStep::Rule r);

// First applicable instance that adds a new relation, if any.
std::optional<StructuralStep> next_structural_step(const Sequent& s);
bool is_saturated(const Sequent& s);
// Checks a claimed instance against s and returns its premises.
std::optional<std::vector<Sequent>> structural_premises(const Sequent& s, StructuralStep::Rule rule,
                                                        const Relation& first, const Relation& second);

std::vector<Sequent> saturate(const Sequent& s, std::size_t max_nodes = 1000000);

bool prop_valid(const Sequent& s);
std::optional<ChainCertificate> prop_certificate(const Sequent& s);

}  // namespace godel
