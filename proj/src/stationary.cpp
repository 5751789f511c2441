#include "vlmc/stationary.hpp"
#include "vlmc/error.hpp"

#include <cmath>
#include <deque>
#include <map>
#include <set>

namespace vlmc {

namespace {

bool negligible(const Number& x) {
    if (x.exact()) return x.is_zero();
    return std::fabs(x.to_double()) <= 1e-11;
}

bool is_one(const Number& x) { return x == Number(1); }

void require_unit(const Number& a, const Number& hi, const char* what) {
    if (a < Number(0) || a > hi)
        throw Error(ErrorKind::BadParams, std::string(what) + " must lie in [0, " + hi.str() + "], got " + a.str());
}

nlohmann::json num(const Number& x) { return x.str(); }

nlohmann::json pi_of_minimal(const StationaryMeasure& m) {
    nlohmann::json pi = nlohmann::json::object();
    for (const Word& c : m.tree().minimal_contexts()) pi[c] = num(m.measure_of(reversed(c)));
    return pi;
}

} // namespace

// ---------------------------------------------------------------- comb

CombSolution solve_comb(const QFamily& fam, const Number& q_inf0, std::optional<Number> a) {
    CombSolution sol;
    sol.c = CSequence::comb(fam);
    sol.q_inf0 = q_inf0;
    bool conv = sol.c.converges();
    if (!is_one(q_inf0)) {
        if (!conv) throw Error(ErrorKind::NoStationaryMeasure, "q_0inf(0) != 1 and sum c_n diverges");
        sol.S1 = sol.c.total();
        sol.pi1 = Number(1) / *sol.S1;
        sol.case_tag = "irreducible";
        sol.a = Number(0);
        return sol;
    }
    if (!conv) {
        sol.case_tag = "reducible-divergent";
        sol.pi1 = Number(0);
        sol.a = Number(1);
        return sol;
    }
    if (!a) throw Error(ErrorKind::MissingParameter, "q_0inf(0) = 1 with sum c_n finite: pass a = pi(0^inf) in [0, 1]");
    require_unit(*a, Number(1), "a");
    sol.S1 = sol.c.total();
    sol.pi1 = (Number(1) - *a) / *sol.S1;
    sol.case_tag = "reducible-family";
    sol.a = *a;
    return sol;
}

bool CombMeasure::is_dirac() const {
    return sol_.case_tag == "reducible-divergent" || sol_.trivial() || is_one(sol_.a);
}

std::size_t CombMeasure::anchor_length(const Word& w) const {
    auto i = w.find('1');
    return i == Word::npos ? w.size() : i + 1;
}

Number CombMeasure::anchor_prob(const Word& x) const {
    std::size_t m = x.size();
    if (!x.empty() && x.back() == '1') return sol_.pi1 * sol_.c.c(m - 1);
    // 0^m: the 0^inf mass plus every context 0^k 1 with k >= m
    if (sol_.case_tag == "reducible-divergent") return Number(1);
    if (sol_.pi1.is_zero()) return sol_.a;
    return sol_.a + sol_.pi1 * sol_.c.rest(m);
}

nlohmann::json CombMeasure::describe() const {
    nlohmann::json j;
    j["case"] = sol_.case_tag;
    j["pi"] = pi_of_minimal(*this);
    j["S1"] = sol_.S1 ? num(*sol_.S1) : nlohmann::json("inf");
    j["a"] = num(sol_.a);
    j["trivial"] = sol_.trivial();
    return j;
}

// ---------------------------------------------------------------- bamboo

BambooSolution solve_bamboo(const QFamily& fam1, const QFamily& fam00, const Number& q_inf0,
                            std::optional<Number> a) {
    Number q = fam1.q0(0);
    BambooSolution sol;
    sol.c1 = CSequence::bamboo(fam1, q);
    sol.c00 = CSequence::bamboo(fam00, q);
    sol.q1_0 = q;
    sol.S1 = sol.c1.total();
    if (!is_one(q)) {
        sol.S00 = sol.c00.total();
        sol.determinant = sol.S1 - *sol.S00 * (Number(1) + q);
        if (negligible(sol.determinant)) {
            // S(1) = 1 + q_1(0) and S(00) = 1: only the second equation remains
            if (!a) throw Error(ErrorKind::MissingParameter, "degenerate bamboo: pass a = pi(00) in [0, 1]");
            require_unit(*a, Number(1), "a");
            sol.pi00 = *a;
            sol.pi1 = (Number(1) - *a) / (Number(1) + q);
            sol.case_tag = "degenerate-determinant-family";
            return sol;
        }
        sol.pi1 = (Number(1) - *sol.S00) / sol.determinant;
        sol.pi00 = (sol.S1 - Number(1) - q) / sol.determinant;
        sol.case_tag = "generic";
        return sol;
    }
    Number q_inf1 = Number(1) - q_inf0;
    if (!sol.c00.converges()) {
        // a periodic point carrying mass must be fixed by the chain, which needs q_(01)inf(1) = 1
        if (!is_one(q_inf1))
            throw Error(ErrorKind::NoStationaryMeasure, "q_1(0) = 1, S(00) infinite and q_(01)inf(1) != 1");
        sol.pi1 = Number::ratio(1, 2);
        sol.pi00 = Number(0);
        sol.pi_infty = Number::ratio(1, 2);
        sol.case_tag = "dirac-mixture";
        return sol;
    }
    sol.S00 = sol.c00.total();
    if (!a) throw Error(ErrorKind::MissingParameter, "q_1(0) = 1 with S(00) finite: pass a = pi((10)^inf) in [0, 1/2]");
    require_unit(*a, Number::ratio(1, 2), "a");
    if (!a->is_zero() && !is_one(q_inf1))
        throw Error(ErrorKind::BadParams, "a > 0 needs q_(01)inf(1) = 1");
    Number S00 = *sol.S00;
    sol.pi1 = (S00 + *a - Number(1)) / (Number(2) * S00 - Number(1));
    sol.pi00 = Number(1) - Number(2) * sol.pi1;
    sol.pi_infty = *a;
    sol.case_tag = "one-parameter";
    return sol;
}

bool BambooMeasure::is_dirac() const {
    if (sol_.case_tag == "dirac-mixture") return true;
    if (sol_.case_tag == "one-parameter" && sol_.pi_infty == Number::ratio(1, 2)) return true;
    return sol_.q1_0.is_zero() && sol_.pi00.is_zero();
}

std::size_t BambooMeasure::anchor_length(const Word& w) const {
    for (std::size_t j = 1; j < w.size(); ++j)
        if (w[j] == w[j - 1]) return j + 1;
    return w.size();
}

Number BambooMeasure::double_prob(const Word& alternating) const { return measure_of(alternating + alternating.back()); }

Number BambooMeasure::anchor_prob(const Word& x) const {
    if (x.empty()) return Number(1);
    std::size_t n = x.size();
    if (n < 2 || x[n - 1] != x[n - 2]) return alternating_prob(x);
    Word A = x.substr(0, n - 1);
    if (A == "0") return sol_.pi00;
    if (A.back() == '1') return measure_of(A) * tree_.q("1", '1');
    // A = b A'' with A'' ending in 0: pi(A''0) = pi(b A''0) + pi(b' A''0), and b' A''0 starts with a double
    Word tail = A.substr(1);
    Number p = measure_of(tail + '0') - measure_of(flip(A[0]) + tail + '0');
    if (!p.exact() && p < Number(0)) p = Number(0);
    return p;
}

Number BambooMeasure::alternating_prob(const Word& x) const {
    std::size_t n = x.size();
    if (x.back() == '1') {
        if (n == 1) return sol_.pi1;
        Word y = x.substr(0, n - 1);
        Number p = measure_of(y) - double_prob(y);
        if (!p.exact() && p < Number(0)) p = Number(0);
        return p;
    }
    // (10)^k or 0(10)^k: the periodic mass plus the contexts 1(10)^j, (10)^j 00 deep enough
    std::size_t k = x[0] == '1' ? n / 2 : (n - 1) / 2;
    std::size_t k1 = x[0] == '1' ? k : k + 1;
    Number p = sol_.pi_infty + sol_.pi1 * sol_.c1.rest(k1);
    if (!sol_.pi00.is_zero()) p += sol_.pi00 * sol_.c00.rest(k);
    return p;
}

nlohmann::json BambooMeasure::describe() const {
    nlohmann::json j;
    j["case"] = sol_.case_tag;
    j["pi"] = pi_of_minimal(*this);
    j["S1"] = num(sol_.S1);
    j["S00"] = sol_.S00 ? num(*sol_.S00) : nlohmann::json("inf");
    j["pi_infty"] = num(sol_.pi_infty);
    if (sol_.case_tag == "generic" || sol_.case_tag == "degenerate-determinant-family")
        j["determinant"] = num(sol_.determinant);
    return j;
}

// ---------------------------------------------------------------- finite trees

FiniteTreeSolution solve_finite_tree_raw(const ContextTree& tree) {
    if (!tree.is_finite()) throw Error(ErrorKind::UnsupportedTree, "solve_finite_tree needs a finite tree");
    FiniteTreeSolution sol;
    sol.h = *tree.height();
    if (sol.h > 20) throw Error(ErrorKind::HeightTooLarge, "height " + std::to_string(sol.h) + " > 20");

    // walk the key chain from the empty history; transient short keys are dropped
    std::set<Word> seen{""};
    std::deque<Word> todo{""};
    while (!todo.empty()) {
        Word k = todo.front();
        todo.pop_front();
        for (char a : {'0', '1'}) {
            Word nk = tree.next_key(k, a);
            if (seen.insert(nk).second) todo.push_back(nk);
        }
    }
    std::map<Word, std::size_t> index;
    for (const Word& k : seen)
        if (tree.sufficient(k)) {
            index[k] = sol.keys.size();
            sol.keys.push_back(k);
        }
    std::size_t n = sol.keys.size();
    sol.next.resize(n);
    sol.prob.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        Word c = tree.pref_context(sol.keys[i]);
        for (int a = 0; a < 2; ++a) {
            sol.next[i][a] = index.at(tree.next_key(sol.keys[i], letter(a)));
            sol.prob[i][a] = tree.q(c, letter(a));
        }
    }

    // null space of (P - I)^T by reduced row echelon form
    std::vector<std::vector<Number>> M(n, std::vector<Number>(n, Number(0)));
    for (std::size_t i = 0; i < n; ++i) {
        M[i][i] -= Number(1);
        for (int a = 0; a < 2; ++a) M[sol.next[i][a]][i] += sol.prob[i][a];
    }
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < n; ++col) {
        std::size_t best = row;
        for (std::size_t r = row; r < n; ++r)
            if (abs(M[r][col]) > abs(M[best][col])) best = r;
        if (negligible(M[best][col])) continue;
        std::swap(M[row], M[best]);
        Number piv = M[row][col];
        for (std::size_t j = col; j < n; ++j) M[row][j] /= piv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == row || M[r][col].is_zero()) continue;
            Number f = M[r][col];
            for (std::size_t j = col; j < n; ++j) M[r][j] -= f * M[row][j];
        }
        pivot_col.push_back(col);
        ++row;
    }
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Number> v(n, Number(0));
        v[f] = Number(1);
        for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -M[i][f];
        sol.basis.push_back(std::move(v));
    }
    sol.null_dimension = sol.basis.size();
    if (sol.null_dimension != 1) return sol;

    std::vector<Number> v = sol.basis.front();
    Number total(0);
    for (const auto& x : v) total += x;
    for (auto& x : v) {
        x /= total;
        if (!x.exact() && x < Number(0)) x = Number(0);
    }
    // residual of v P = v
    std::vector<Number> w(n, Number(0));
    for (std::size_t i = 0; i < n; ++i)
        for (int a = 0; a < 2; ++a) w[sol.next[i][a]] += v[i] * sol.prob[i][a];
    for (std::size_t i = 0; i < n; ++i) {
        Number r = abs(w[i] - v[i]);
        if (r.exact() ? !r.is_zero() : r.to_double() > 1e-12)
            throw Error(ErrorKind::SingularSystem, "stationary residual " + r.str() + " too large");
    }
    sol.stationary = std::move(v);
    sol.basis.clear();
    return sol;
}

FiniteTreeSolution solve_finite_tree(const ContextTree& tree) {
    FiniteTreeSolution sol = solve_finite_tree_raw(tree);
    if (sol.null_dimension != 1)
        throw Error(ErrorKind::NonUnique,
                    "fixed-point space has dimension " + std::to_string(sol.null_dimension));
    return sol;
}

FiniteMeasure::FiniteMeasure(ContextTree tree, FiniteTreeSolution sol)
    : StationaryMeasure(std::move(tree)), sol_(std::move(sol)) {
    if (sol_.stationary.size() != sol_.keys.size())
        throw Error(ErrorKind::NonUnique, "finite tree without a unique stationary vector");
}

bool FiniteMeasure::is_dirac() const {
    // deterministic moves on the whole support leave only periodic orbits
    for (std::size_t i = 0; i < sol_.keys.size(); ++i) {
        if (sol_.stationary[i].is_zero()) continue;
        if (!sol_.prob[i][0].is_zero() && !sol_.prob[i][1].is_zero()) return false;
    }
    return true;
}

Number FiniteMeasure::anchor_prob(const Word& x) const {
    Number total(0);
    for (std::size_t i = 0; i < sol_.keys.size(); ++i) {
        Number p = sol_.stationary[i];
        std::size_t s = i;
        for (char ch : x) {
            if (p.is_zero()) break;
            int a = letter_index(ch);
            p *= sol_.prob[s][a];
            s = sol_.next[s][a];
        }
        total += p;
    }
    return total;
}

nlohmann::json FiniteMeasure::describe() const {
    nlohmann::json j;
    j["case"] = "finite";
    j["pi"] = pi_of_minimal(*this);
    j["h"] = sol_.h;
    nlohmann::json st = nlohmann::json::object();
    for (std::size_t i = 0; i < sol_.keys.size(); ++i) st[sol_.keys[i]] = num(sol_.stationary[i]);
    j["states"] = st;
    return j;
}

// ---------------------------------------------------------------- shared

std::size_t StationaryMeasure::anchor_length(const Word& w) const {
    for (std::size_t k = 0; k <= w.size(); ++k)
        if (tree_.sufficient(w.substr(0, k))) return k;
    return w.size();
}

Number StationaryMeasure::measure_of(const Word& w) const {
    if (w.empty()) return Number(1);
    std::lock_guard<std::recursive_mutex> lock(memo_mutex_);
    if (auto it = memo_.find(w); it != memo_.end()) return it->second;
    std::size_t k = anchor_length(w);
    Number p;
    const Word head = w.substr(0, w.size() - 1);
    if (k < w.size() && anchor_length(head) == k) {
        // same anchor as the one-letter-shorter word: extend its memoized value
        p = measure_of(head);
        if (!p.is_zero()) p *= tree_.q(tree_.pref_context(head), w.back());
    } else {
        p = anchor_prob(w.substr(0, k));
        for (std::size_t j = k; j < w.size() && !p.is_zero(); ++j)
            p *= tree_.q(tree_.pref_context(w.substr(0, j)), w[j]);
    }
    memo_.emplace(w, p);
    return p;
}

std::unique_ptr<StationaryMeasure> solve_stationary(const ContextTree& tree, std::optional<Number> a) {
    if (!a) a = tree.parameter_a;
    switch (tree.shape()) {
    case ContextTree::Shape::Finite:
        return std::make_unique<FiniteMeasure>(tree, solve_finite_tree(tree));
    case ContextTree::Shape::Comb:
        return std::make_unique<CombMeasure>(tree, solve_comb(tree.comb_family(), tree.q_infinite_leaf_0(), a));
    case ContextTree::Shape::Bamboo:
        return std::make_unique<BambooMeasure>(
            tree, solve_bamboo(tree.bamboo_family_1(), tree.bamboo_family_00(), tree.q_infinite_leaf_0(), a));
    case ContextTree::Shape::Other:
        break;
    }
    throw Error(ErrorKind::UnsupportedTree, "stationary solver covers finite trees, the comb and the bamboo");
}

PalindromeReport check_palindrome_identity(const StationaryMeasure& m, std::size_t nmax) {
    PalindromeReport rep;
    rep.nmax = nmax;
    for (std::size_t n = 0; n <= nmax; ++n) {
        Word z0(n, '0'), z1(n, '1');
        rep.max_discrepancy = max(rep.max_discrepancy, abs(m.measure_of("1" + z0) - m.measure_of(z0 + "1")));
        rep.max_discrepancy = max(rep.max_discrepancy, abs(m.measure_of("0" + z1) - m.measure_of(z1 + "0")));
    }
    return rep;
}

} // namespace vlmc
