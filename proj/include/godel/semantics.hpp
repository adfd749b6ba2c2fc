#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "godel/rational.hpp"
#include "godel/relations.hpp"

namespace godel {

enum class FrameKind { Crisp, Fuzzy };

struct KripkeModel {
    int worlds = 1;
    FrameKind kind = FrameKind::Crisp;
    std::vector<std::vector<Rational>> access;              // worlds x worlds
    std::map<std::string, std::vector<Rational>> valuation;  // one value per world

    // Builds a model with no accessibility and an empty valuation.
    static KripkeModel empty(int worlds, FrameKind kind);
    void validate() const;  // throws std::invalid_argument
    bool operator==(const KripkeModel& o) const = default;
};

class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Rational eval_formula(const KripkeModel& m, Formula f, int x);
bool sequent_holds_at(const KripkeModel& m, const Sequent& s, int x);

// Value of a propositional formula under a G-valuation.
Rational eval_prop(const std::map<std::string, Rational>& v, Formula f);
bool prop_holds(const std::map<std::string, Rational>& v, const Sequent& s);

// Validity of a propositional sequent by enumerating the (n+2)-point grid.
bool prop_grid_oracle(const Sequent& s);

// Increasing piecewise-linear bijection of [0,1] through the given points.
class PiecewiseLinear {
public:
    explicit PiecewiseLinear(std::vector<std::pair<Rational, Rational>> points);
    Rational operator()(const Rational& x) const;
    const std::vector<std::pair<Rational, Rational>>& points() const { return pts_; }

private:
    std::vector<std::pair<Rational, Rational>> pts_;
};

KripkeModel automorphism_transform(const KripkeModel& m, const PiecewiseLinear& h);
KripkeModel lambda_shift(const KripkeModel& m, const Rational& lambda);

struct SearchConfig {
    enum class Mode { Exhaustive, Random } mode = Mode::Exhaustive;
    int max_worlds = 3;
    int grid = 5;
    std::uint64_t seed = 1;
    std::size_t samples = 100000;
    std::uint64_t budget = 2000000000ULL;  // elementary evaluation steps
    std::optional<FrameKind> frame;        // defaults to the logic's frame class
};

struct SearchResult {
    enum class Status { Found, NotFound, BudgetExhausted } status = Status::NotFound;
    std::optional<KripkeModel> model;
    int world = 0;
    std::uint64_t work = 0;
};

FrameKind frame_of(Logic logic);
SearchResult countermodel_search(Logic logic, const Sequent& s, const SearchConfig& cfg = {});

std::string model_to_json(const KripkeModel& m);
KripkeModel model_from_json(const std::string& text);  // throws std::invalid_argument

}  // namespace godel
