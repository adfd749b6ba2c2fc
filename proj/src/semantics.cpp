#include "godel/semantics.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "json.hpp"

namespace godel {

KripkeModel KripkeModel::empty(int worlds, FrameKind kind) {
    KripkeModel m;
    m.worlds = worlds;
    m.kind = kind;
    m.access.assign(worlds, std::vector<Rational>(worlds, Rational(0)));
    return m;
}

void KripkeModel::validate() const {
    auto in_unit = [](const Rational& q) { return q >= 0 && q <= 1; };
    if (worlds < 1) throw std::invalid_argument("model needs at least one world");
    if (static_cast<int>(access.size()) != worlds) throw std::invalid_argument("access matrix has wrong size");
    for (const auto& row : access) {
        if (static_cast<int>(row.size()) != worlds) throw std::invalid_argument("access matrix has wrong size");
        for (const Rational& q : row) {
            if (!in_unit(q)) throw std::invalid_argument("access value outside [0,1]");
            if (kind == FrameKind::Crisp && q != 0 && q != 1)
                throw std::invalid_argument("crisp model with access value " + to_string(q));
        }
    }
    for (const auto& [name, vals] : valuation) {
        if (static_cast<int>(vals.size()) != worlds)
            throw std::invalid_argument("valuation of " + name + " has wrong length");
        for (const Rational& q : vals)
            if (!in_unit(q)) throw std::invalid_argument("valuation of " + name + " outside [0,1]");
    }
}

namespace {

class Evaluator {
public:
    explicit Evaluator(const KripkeModel& m) : m_(m), memo_(m.worlds) {}

    Rational at(Formula f, int x) {
        auto& memo = memo_[x];
        if (auto it = memo.find(f); it != memo.end()) return it->second;
        Rational v = compute(f, x);
        memo.emplace(f, v);
        return v;
    }

private:
    Rational compute(Formula f, int x) {
        switch (f->op) {
        case Op::Var: {
            auto it = m_.valuation.find(f->name);
            if (it == m_.valuation.end()) throw EvalError("unbound variable " + f->name);
            return it->second[x];
        }
        case Op::Bot: return 0;
        case Op::Top: return 1;
        case Op::And: return std::min(at(f->l, x), at(f->r, x));
        case Op::Or: return std::max(at(f->l, x), at(f->r, x));
        case Op::Imp: return residuum(at(f->l, x), at(f->r, x));
        case Op::Box: {
            Rational v = 1;
            for (int y = 0; y < m_.worlds; ++y) v = std::min(v, residuum(m_.access[x][y], at(f->l, y)));
            return v;
        }
        case Op::Dia: {
            Rational v = 0;
            for (int y = 0; y < m_.worlds; ++y) v = std::max(v, std::min(at(f->l, y), m_.access[x][y]));
            return v;
        }
        }
        throw std::logic_error("unknown operator");
    }
    const KripkeModel& m_;
    std::vector<std::unordered_map<Formula, Rational>> memo_;
};

bool compare_holds(const Rational& a, RelKind k, const Rational& b) { return k == RelKind::Lt ? a < b : a <= b; }

}  // namespace

Rational eval_formula(const KripkeModel& m, Formula f, int x) {
    if (x < 0 || x >= m.worlds) throw std::out_of_range("world out of range");
    return Evaluator(m).at(f, x);
}

bool sequent_holds_at(const KripkeModel& m, const Sequent& s, int x) {
    if (x < 0 || x >= m.worlds) throw std::out_of_range("world out of range");
    Evaluator ev(m);
    for (const Relation& r : s)
        if (compare_holds(ev.at(r.lhs, x), r.kind, ev.at(r.rhs, x))) return true;
    return false;
}

Rational eval_prop(const std::map<std::string, Rational>& v, Formula f) {
    KripkeModel m = KripkeModel::empty(1, FrameKind::Crisp);
    for (auto& [n, q] : v) m.valuation[n] = {q};
    return eval_formula(m, f, 0);
}

bool prop_holds(const std::map<std::string, Rational>& v, const Sequent& s) {
    KripkeModel m = KripkeModel::empty(1, FrameKind::Crisp);
    for (auto& [n, q] : v) m.valuation[n] = {q};
    return sequent_holds_at(m, s, 0);
}

// ---------------------------------------------------------------------------
// Grid evaluation.  Truth values are indices 0..k standing for i/k; the
// Gödel operations never leave the grid.

namespace {

using G = std::uint8_t;

struct Compiled {
    std::vector<Formula> nodes;
    std::vector<Op> op;
    std::vector<int> l, r, var, nest;
    std::vector<std::string> vars;
    struct Rel {
        int a;
        RelKind kind;
        int b;
    };
    std::vector<Rel> rels;
    int max_nest = 0;

    explicit Compiled(const Sequent& s) {
        std::vector<Formula> post;
        for (const Relation& rel : s) {
            collect_subformulas(rel.lhs, post);
            collect_subformulas(rel.rhs, post);
        }
        std::unordered_map<Formula, int> idx;
        std::set<std::string> names;
        for (Formula f : post) {
            if (idx.count(f)) continue;
            idx[f] = static_cast<int>(nodes.size());
            nodes.push_back(f);
            if (f->op == Op::Var) names.insert(f->name);
        }
        vars.assign(names.begin(), names.end());
        for (Formula f : nodes) {
            op.push_back(f->op);
            l.push_back(f->l ? idx.at(f->l) : -1);
            r.push_back(f->r ? idx.at(f->r) : -1);
            var.push_back(f->op == Op::Var
                              ? static_cast<int>(std::lower_bound(vars.begin(), vars.end(), f->name) - vars.begin())
                              : -1);
            nest.push_back(f->nesting);
            max_nest = std::max(max_nest, f->nesting);
        }
        for (const Relation& rel : s) rels.push_back({idx.at(rel.lhs), rel.kind, idx.at(rel.rhs)});
    }
};

inline G g_imp(G a, G b, G k) { return a <= b ? k : b; }

inline G combine(Op op, G a, G b, G k) {
    switch (op) {
    case Op::And: return std::min(a, b);
    case Op::Or: return std::max(a, b);
    case Op::Imp: return g_imp(a, b, k);
    default: return 0;
    }
}

inline G modal_step(Op op, G acc, G access, G body, G k) {
    return op == Op::Box ? std::min(acc, g_imp(access, body, k)) : std::max(acc, std::min(body, access));
}

inline G modal_unit(Op op, G k) { return op == Op::Box ? k : 0; }

inline bool rel_holds(G a, RelKind kind, G b) { return kind == RelKind::Lt ? a < b : a <= b; }

// A grid model: access[x*w+y], val[var*w+x].
struct GridModel {
    int w;
    G k;
    std::vector<G> access;
    std::vector<G> val;
};

// Full evaluation of every node at every world; out[node*w + x].
void eval_all(const Compiled& c, const GridModel& m, std::vector<G>& out) {
    const int w = m.w;
    out.assign(c.nodes.size() * w, 0);
    for (std::size_t n = 0; n < c.nodes.size(); ++n) {
        for (int x = 0; x < w; ++x) {
            G v = 0;
            switch (c.op[n]) {
            case Op::Var: v = m.val[c.var[n] * w + x]; break;
            case Op::Bot: v = 0; break;
            case Op::Top: v = m.k; break;
            case Op::And:
            case Op::Or:
            case Op::Imp: v = combine(c.op[n], out[c.l[n] * w + x], out[c.r[n] * w + x], m.k); break;
            case Op::Box:
            case Op::Dia:
                v = modal_unit(c.op[n], m.k);
                for (int y = 0; y < w; ++y) v = modal_step(c.op[n], v, m.access[x * w + y], out[c.l[n] * w + y], m.k);
                break;
            }
            out[n * w + x] = v;
        }
    }
}

bool fails_at(const Compiled& c, const std::vector<G>& vals, int w, int x) {
    for (const auto& rel : c.rels)
        if (rel_holds(vals[rel.a * w + x], rel.kind, vals[rel.b * w + x])) return false;
    return true;
}

KripkeModel to_model(const Compiled& c, const GridModel& g, FrameKind kind) {
    KripkeModel m = KripkeModel::empty(g.w, kind);
    for (int x = 0; x < g.w; ++x)
        for (int y = 0; y < g.w; ++y) m.access[x][y] = Rational(g.access[x * g.w + y], g.k);
    for (std::size_t v = 0; v < c.vars.size(); ++v) {
        auto& row = m.valuation[c.vars[v]];
        for (int x = 0; x < g.w; ++x) row.push_back(Rational(g.val[v * g.w + x], g.k));
    }
    return m;
}

// Odometer over vectors with entries drawn from `alphabet`.
bool advance(std::vector<G>& digits, const std::vector<G>& alphabet, std::vector<int>& pos) {
    for (std::size_t i = digits.size(); i-- > 0;) {
        if (++pos[i] < static_cast<int>(alphabet.size())) {
            digits[i] = alphabet[pos[i]];
            return true;
        }
        pos[i] = 0;
        digits[i] = alphabet[0];
    }
    return false;
}

class BudgetOut {};

class Searcher {
public:
    Searcher(const Compiled& c, G k, FrameKind kind, std::uint64_t budget)
        : c_(c), k_(k), kind_(kind), budget_(budget) {
        for (int i = 0; i <= k; ++i) values_.push_back(static_cast<G>(i));
        if (kind == FrameKind::Crisp) access_values_ = {0, k};
        else access_values_ = values_;
    }

    std::uint64_t work() const { return work_; }

    // Exhaustive search over models with exactly w worlds; world 0 is refuted.
    std::optional<GridModel> exhaustive(int w) {
        if (c_.max_nest <= 2) return dp(w);
        return brute(w);
    }

    std::optional<GridModel> random(int max_w, std::uint64_t seed, std::size_t samples) {
        std::mt19937_64 rng(seed);
        std::vector<G> vals;
        for (std::size_t s = 0; s < samples; ++s) {
            int w = std::uniform_int_distribution<int>(1, max_w)(rng);
            GridModel m{w, k_, std::vector<G>(w * w), std::vector<G>(c_.vars.size() * w)};
            for (G& a : m.access) a = access_values_[rng() % access_values_.size()];
            for (G& v : m.val) v = values_[rng() % values_.size()];
            charge(c_.nodes.size() * w * w);
            eval_all(c_, m, vals);
            if (fails_at(c_, vals, w, 0)) return m;
        }
        return std::nullopt;
    }

private:
    void charge(std::uint64_t n) {
        work_ += n;
        if (work_ > budget_) throw BudgetOut{};
    }

    std::optional<GridModel> brute(int w) {
        GridModel m{w, k_, std::vector<G>(w * w, access_values_[0]), std::vector<G>(c_.vars.size() * w, 0)};
        std::vector<int> apos(m.access.size(), 0);
        std::vector<G> vals;
        do {
            std::vector<int> vpos(m.val.size(), 0);
            std::fill(m.val.begin(), m.val.end(), 0);
            do {
                charge(c_.nodes.size() * w * w);
                eval_all(c_, m, vals);
                if (fails_at(c_, vals, w, 0)) return m;
            } while (advance(m.val, values_, vpos));
        } while (advance(m.access, access_values_, apos));
        return std::nullopt;
    }

    // Values at world x of all nodes of nesting <= 1, given the row of x.
    void stage1(const std::vector<G>& base, const G* row, int w, int x, std::vector<G>& out) {
        const std::size_t n = c_.nodes.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (c_.nest[i] == 0) {
                out[i] = base[i * w + x];
                continue;
            }
            if (c_.nest[i] > 1) continue;
            G v;
            if (c_.op[i] == Op::Box || c_.op[i] == Op::Dia) {
                v = modal_unit(c_.op[i], k_);
                for (int y = 0; y < w; ++y) v = modal_step(c_.op[i], v, row[y], base[c_.l[i] * w + y], k_);
            } else {
                v = combine(c_.op[i], out[c_.l[i]], out[c_.r[i]], k_);
            }
            out[i] = v;
        }
        charge(n * w);
    }

    std::uint32_t encode(const std::vector<G>& vals, const std::vector<int>& which) const {
        std::uint32_t code = 0;
        for (int i : which) code = code * (k_ + 1) + vals[i];
        return code;
    }

    // Nesting <= 2: enumerate valuations, summarize each non-root world by the
    // set of body vectors it can realize, then fold world contributions into
    // the root's outer modal values.
    std::optional<GridModel> dp(int w) {
        const std::size_t n = c_.nodes.size();
        const std::size_t nv = c_.vars.size();
        std::vector<int> outer;   // modal nodes of nesting 2
        std::vector<int> bodies;  // their bodies
        for (std::size_t i = 0; i < n; ++i)
            if ((c_.op[i] == Op::Box || c_.op[i] == Op::Dia) && c_.nest[i] == 2) {
                outer.push_back(static_cast<int>(i));
                bodies.push_back(c_.l[i]);
            }
        const std::size_t m2 = outer.size();
        GridModel m{w, k_, std::vector<G>(w * w, 0), std::vector<G>(nv * w, 0)};
        std::vector<int> vpos(m.val.size(), 0);
        std::vector<G> base, s1(n), s2(n);
        std::vector<G> row(w, 0);
        std::vector<int> rpos(w, 0);
        std::vector<std::vector<std::vector<G>>> realizable(w);  // per world, body vectors
        do {
            if (w == 3 && !sym_ok(m.val, nv, w)) continue;
            // Modal-free values at every world.
            GridModel flat = m;
            charge(n * w);
            eval_all(c_, flat, base);  // access all 0: nesting-0 values are exact
            for (int y = 1; y < w && m2 > 0; ++y) {
                realizable[y].clear();
                std::vector<std::uint32_t> seen;
                std::fill(row.begin(), row.end(), access_values_[0]);
                std::fill(rpos.begin(), rpos.end(), 0);
                do {
                    stage1(base, row.data(), w, y, s1);
                    std::vector<G> vec(m2);
                    for (std::size_t j = 0; j < m2; ++j) vec[j] = s1[bodies[j]];
                    std::uint32_t code = encode(s1, bodies);
                    if (std::find(seen.begin(), seen.end(), code) == seen.end()) {
                        seen.push_back(code);
                        realizable[y].push_back(std::move(vec));
                    }
                } while (advance(row, access_values_, rpos));
            }
            std::fill(row.begin(), row.end(), access_values_[0]);
            std::fill(rpos.begin(), rpos.end(), 0);
            do {
                stage1(base, row.data(), w, 0, s1);
                // Tuples of outer modal values at world 0, folded world by world.
                std::vector<std::vector<G>> tuples(1, std::vector<G>(m2));
                for (std::size_t j = 0; j < m2; ++j)
                    tuples[0][j] = modal_step(c_.op[outer[j]], modal_unit(c_.op[outer[j]], k_), row[0],
                                              s1[bodies[j]], k_);
                for (int y = 1; y < w && m2 > 0; ++y) {
                    std::vector<std::vector<G>> next;
                    std::vector<std::uint32_t> seen;
                    for (const auto& t : tuples)
                        for (const auto& b : realizable[y]) {
                            std::vector<G> u(m2);
                            for (std::size_t j = 0; j < m2; ++j)
                                u[j] = modal_step(c_.op[outer[j]], t[j], row[y], b[j], k_);
                            std::uint32_t code = 0;
                            for (G g : u) code = code * (k_ + 1) + g;
                            if (std::find(seen.begin(), seen.end(), code) != seen.end()) continue;
                            seen.push_back(code);
                            next.push_back(std::move(u));
                        }
                    charge(tuples.size() * realizable[y].size() * (m2 + 1));
                    tuples = std::move(next);
                }
                for (const auto& t : tuples) {
                    s2 = s1;
                    for (std::size_t j = 0; j < m2; ++j) s2[outer[j]] = t[j];
                    for (std::size_t i = 0; i < n; ++i)
                        if (c_.nest[i] == 2 && c_.op[i] != Op::Box && c_.op[i] != Op::Dia)
                            s2[i] = combine(c_.op[i], s2[c_.l[i]], s2[c_.r[i]], k_);
                    charge(n);
                    bool fails = true;
                    for (const auto& rel : c_.rels)
                        if (rel_holds(s2[rel.a], rel.kind, s2[rel.b])) {
                            fails = false;
                            break;
                        }
                    if (fails) return reconstruct(m, row, w);
                }
            } while (advance(row, access_values_, rpos));
        } while (advance(m.val, values_, vpos));
        return std::nullopt;
    }

    // Worlds 1 and 2 are interchangeable; keep the lexicographically smaller first.
    bool sym_ok(const std::vector<G>& val, std::size_t nv, int w) const {
        for (std::size_t v = 0; v < nv; ++v) {
            G a = val[v * w + 1], b = val[v * w + 2];
            if (a != b) return a < b;
        }
        return true;
    }

    // The DP found that some choice of the remaining rows refutes world 0; find it.
    std::optional<GridModel> reconstruct(GridModel m, const std::vector<G>& row0, int w) {
        for (int y = 0; y < w; ++y) m.access[y] = row0[y];
        std::vector<G> rest((w - 1) * w, access_values_[0]);
        std::vector<int> pos(rest.size(), 0);
        std::vector<G> vals;
        do {
            std::copy(rest.begin(), rest.end(), m.access.begin() + w);
            eval_all(c_, m, vals);
            if (fails_at(c_, vals, w, 0)) return m;
        } while (advance(rest, access_values_, pos));
        throw std::logic_error("countermodel search: reconstruction failed");
    }

    const Compiled& c_;
    G k_;
    FrameKind kind_;
    std::uint64_t budget_;
    std::uint64_t work_ = 0;
    std::vector<G> values_, access_values_;
};

}  // namespace

bool prop_grid_oracle(const Sequent& s) {
    for (const Relation& r : s)
        if (r.lhs->nesting > 0 || r.rhs->nesting > 0 || r.lhs->has_box || r.lhs->has_dia || r.rhs->has_box ||
            r.rhs->has_dia)
            throw std::invalid_argument("prop_grid_oracle: modal formula in " + render(r));
    Compiled c(s);
    const G k = static_cast<G>(c.vars.size() + 1);
    std::vector<G> alphabet;
    for (int i = 0; i <= k; ++i) alphabet.push_back(static_cast<G>(i));
    GridModel m{1, k, {0}, std::vector<G>(c.vars.size(), 0)};
    std::vector<int> pos(m.val.size(), 0);
    std::vector<G> vals;
    do {
        eval_all(c, m, vals);
        if (fails_at(c, vals, 1, 0)) return false;
    } while (advance(m.val, alphabet, pos));
    return true;
}

FrameKind frame_of(Logic logic) { return logic == Logic::GKFDia ? FrameKind::Fuzzy : FrameKind::Crisp; }

SearchResult countermodel_search(Logic logic, const Sequent& s, const SearchConfig& cfg) {
    if (cfg.max_worlds < 1 || cfg.grid < 1 || cfg.grid > 60) throw std::invalid_argument("bad search bounds");
    if (!in_fragment(s, logic)) throw std::invalid_argument("sequent outside the fragment of the logic");
    FrameKind kind = cfg.frame.value_or(frame_of(logic));
    Compiled c(s);
    Searcher search(c, static_cast<G>(cfg.grid), kind, cfg.budget);
    SearchResult res;
    std::optional<GridModel> found;
    try {
        if (cfg.mode == SearchConfig::Mode::Random) {
            found = search.random(cfg.max_worlds, cfg.seed, cfg.samples);
        } else {
            // Without modalities one world suffices.
            int top_w = c.max_nest == 0 ? 1 : cfg.max_worlds;
            for (int w = 1; w <= top_w && !found; ++w) found = search.exhaustive(w);
        }
    } catch (const BudgetOut&) {
        res.status = SearchResult::Status::BudgetExhausted;
        res.work = search.work();
        return res;
    }
    res.work = search.work();
    if (!found) return res;
    KripkeModel m = to_model(c, *found, kind);
    if (sequent_holds_at(m, s, 0)) throw std::logic_error("countermodel search: witness does not refute");
    res.status = SearchResult::Status::Found;
    res.model = std::move(m);
    res.world = 0;
    return res;
}

// ---------------------------------------------------------------------------

PiecewiseLinear::PiecewiseLinear(std::vector<std::pair<Rational, Rational>> points) : pts_(std::move(points)) {
    if (pts_.size() < 2 || pts_.front() != std::pair<Rational, Rational>{0, 0} ||
        pts_.back() != std::pair<Rational, Rational>{1, 1})
        throw std::invalid_argument("automorphism must map 0 to 0 and 1 to 1");
    for (std::size_t i = 1; i < pts_.size(); ++i)
        if (pts_[i].first <= pts_[i - 1].first || pts_[i].second <= pts_[i - 1].second)
            throw std::invalid_argument("automorphism must be strictly increasing");
}

Rational PiecewiseLinear::operator()(const Rational& x) const {
    if (x < 0 || x > 1) throw std::invalid_argument("argument outside [0,1]");
    for (std::size_t i = 1; i < pts_.size(); ++i) {
        const auto& [x0, y0] = pts_[i - 1];
        const auto& [x1, y1] = pts_[i];
        if (x <= x1) return y0 + (x - x0) * (y1 - y0) / (x1 - x0);
    }
    return 1;
}

KripkeModel automorphism_transform(const KripkeModel& m, const PiecewiseLinear& h) {
    m.validate();
    KripkeModel out = m;
    for (auto& row : out.access)
        for (Rational& q : row) q = h(q);
    for (auto& [n, vals] : out.valuation)
        for (Rational& q : vals) q = h(q);
    return out;
}

KripkeModel lambda_shift(const KripkeModel& m, const Rational& lambda) {
    m.validate();
    if (m.kind != FrameKind::Crisp) throw std::invalid_argument("lambda_shift needs a crisp model");
    if (lambda <= 0 || lambda > 1) throw std::invalid_argument("lambda must lie in (0,1]");
    KripkeModel out = m;
    for (auto& [n, vals] : out.valuation)
        for (Rational& q : vals) q = residuum(lambda, q);
    return out;
}

// ---------------------------------------------------------------------------

namespace {

nlohmann::json rat_json(const Rational& q) { return nlohmann::json::array({q.numerator(), q.denominator()}); }

Rational rat_from(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
        throw std::invalid_argument("rational must be [num, den]");
    std::int64_t d = j[1].get<std::int64_t>();
    if (d <= 0) throw std::invalid_argument("rational denominator must be positive");
    return Rational(j[0].get<std::int64_t>(), d);
}

}  // namespace

std::string model_to_json(const KripkeModel& m) {
    nlohmann::json j;
    j["worlds"] = m.worlds;
    j["kind"] = m.kind == FrameKind::Crisp ? "crisp" : "fuzzy";
    nlohmann::json acc = nlohmann::json::array();
    for (const auto& row : m.access) {
        nlohmann::json r = nlohmann::json::array();
        for (const Rational& q : row) r.push_back(rat_json(q));
        acc.push_back(r);
    }
    j["access"] = acc;
    nlohmann::json val = nlohmann::json::object();
    for (const auto& [n, vals] : m.valuation) {
        nlohmann::json r = nlohmann::json::array();
        for (const Rational& q : vals) r.push_back(rat_json(q));
        val[n] = r;
    }
    j["valuation"] = val;
    return j.dump(2);
}

KripkeModel model_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed model JSON: ") + e.what());
    }
    try {
        KripkeModel m;
        m.worlds = j.at("worlds").get<int>();
        std::string kind = j.at("kind").get<std::string>();
        if (kind == "crisp") m.kind = FrameKind::Crisp;
        else if (kind == "fuzzy") m.kind = FrameKind::Fuzzy;
        else throw std::invalid_argument("kind must be crisp or fuzzy");
        for (const auto& row : j.at("access")) {
            std::vector<Rational> r;
            for (const auto& q : row) r.push_back(rat_from(q));
            m.access.push_back(std::move(r));
        }
        for (const auto& [n, vals] : j.at("valuation").items()) {
            std::vector<Rational> r;
            for (const auto& q : vals) r.push_back(rat_from(q));
            m.valuation[n] = std::move(r);
        }
        m.validate();
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed model JSON: ") + e.what());
    }
}

}  // namespace godel
