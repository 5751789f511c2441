#pragma once

#include "vlmc/context_tree.hpp"
#include "vlmc/number.hpp"
#include "vlmc/series.hpp"
#include "vlmc/word.hpp"

#include <json.hpp>

#include <array>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace vlmc {

struct CombSolution {
    CSequence c;
    std::optional<Number> S1; // empty when sum c_n diverges
    Number pi1{0};
    /// "irreducible", "reducible-divergent" or "reducible-family"
    std::string case_tag;
    Number a{0}; // mass of 0^infinity
    Number q_inf0{1};
    bool trivial() const { return c.rho(0).is_zero(); }
};

struct BambooSolution {
    CSequence c1, c00;
    Number S1{1};
    std::optional<Number> S00;
    Number q1_0{0};
    Number pi1{0}, pi00{0};
    Number pi_infty{0}; // mass of the single point ...1010
    Number determinant{0};
    /// "generic", "degenerate-determinant-family", "dirac-mixture" or "one-parameter"
    std::string case_tag;
};

struct FiniteTreeSolution {
    std::size_t h = 0;
    /// Chain states: the shortest sufficient suffixes of histories (length <= h).
    std::vector<Word> keys;
    std::vector<Number> stationary;
    /// next[i][a] is the index of key(keys[i] + a), taken with probability prob[i][a].
    std::vector<std::array<std::size_t, 2>> next;
    std::vector<std::array<Number, 2>> prob;
    std::size_t null_dimension = 1;
    std::vector<std::vector<Number>> basis; // filled when null_dimension > 1
};

CombSolution solve_comb(const QFamily& fam, const Number& q_inf0, std::optional<Number> a = {});
BambooSolution solve_bamboo(const QFamily& fam1, const QFamily& fam00, const Number& q_inf0,
                            std::optional<Number> a = {});
/// Throws HeightTooLarge above height 20 and NonUnique when the fixed-point space has dimension > 1.
FiniteTreeSolution solve_finite_tree(const ContextTree& tree);
/// Same, but reports non-uniqueness in the result instead of throwing.
FiniteTreeSolution solve_finite_tree_raw(const ContextTree& tree);

/// Stationary measure on cylinders: w -> pi(w) = P(history ends with w).
/// Cylinder values are memoized behind a lock.
class StationaryMeasure {
public:
    explicit StationaryMeasure(ContextTree tree) : tree_(std::move(tree)) {}
    virtual ~StationaryMeasure() = default;

    const ContextTree& tree() const { return tree_; }
    NumericMode mode() const { return tree_.mode(); }

    /// Product formula from the shortest sufficient prefix of w on.
    Number measure_of(const Word& w) const;

    virtual std::string case_tag() const = 0;
    /// Concentrated on finitely many sequences (the map construction refuses these).
    virtual bool is_dirac() const = 0;
    /// case, pi of the minimal contexts, S1 and backend extras.
    virtual nlohmann::json describe() const = 0;

protected:
    /// Probability of a word none of whose proper prefixes is sufficient.
    virtual Number anchor_prob(const Word& x) const = 0;
    /// Length of the shortest sufficient prefix of w, or |w| when there is none.
    virtual std::size_t anchor_length(const Word& w) const;

    ContextTree tree_;
    mutable std::unordered_map<Word, Number> memo_;
    mutable std::recursive_mutex memo_mutex_;
};

class CombMeasure : public StationaryMeasure {
public:
    CombMeasure(ContextTree tree, CombSolution sol) : StationaryMeasure(std::move(tree)), sol_(std::move(sol)) {}
    const CombSolution& solution() const { return sol_; }
    std::string case_tag() const override { return sol_.case_tag; }
    bool is_dirac() const override;
    nlohmann::json describe() const override;

protected:
    Number anchor_prob(const Word& x) const override;
    std::size_t anchor_length(const Word& w) const override;

private:
    CombSolution sol_;
};

class BambooMeasure : public StationaryMeasure {
public:
    BambooMeasure(ContextTree tree, BambooSolution sol)
        : StationaryMeasure(std::move(tree)), sol_(std::move(sol)) {}
    const BambooSolution& solution() const { return sol_; }
    std::string case_tag() const override { return sol_.case_tag; }
    bool is_dirac() const override;
    nlohmann::json describe() const override;

    /// pi(A a) where A is alternating and a repeats its last letter.
    Number double_prob(const Word& alternating) const;

protected:
    Number anchor_prob(const Word& x) const override;
    std::size_t anchor_length(const Word& w) const override;

private:
    BambooSolution sol_;
    Number alternating_prob(const Word& x) const;
};

class FiniteMeasure : public StationaryMeasure {
public:
    FiniteMeasure(ContextTree tree, FiniteTreeSolution sol);
    const FiniteTreeSolution& solution() const { return sol_; }
    std::string case_tag() const override { return "finite"; }
    bool is_dirac() const override;
    nlohmann::json describe() const override;

protected:
    Number anchor_prob(const Word& x) const override;

private:
    FiniteTreeSolution sol_;
};

/// Picks the backend from the tree shape. The parameter a (falling back to the
/// tree's own) selects a member of one-parameter families.
std::unique_ptr<StationaryMeasure> solve_stationary(const ContextTree& tree, std::optional<Number> a = {});

struct PalindromeReport {
    Number max_discrepancy{0};
    std::size_t nmax = 0;
};

/// pi(1 0^n) against pi(0^n 1) and pi(0 1^n) against pi(1^n 0) for n <= nmax.
PalindromeReport check_palindrome_identity(const StationaryMeasure& m, std::size_t nmax);

} // namespace vlmc
