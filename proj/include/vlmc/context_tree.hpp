#pragma once

#include "vlmc/number.hpp"
#include "vlmc/qfamily.hpp"
#include "vlmc/word.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

namespace vlmc {

/// Periodic infinite leaf period^infinity. The context hanging off the spine after
/// n full periods and i more letters takes q from families[i] at index n.
struct InfiniteBranch {
    Word period;
    std::vector<QFamily> families;
    Number q_infinite_leaf_0{1};
};

enum class NodeKind {
    FiniteContext, // declared leaf
    FamilyContext, // leaf hanging off a spine, q from a family
    Internal,      // proper prefix of a declared leaf
    Spine,         // prefix of an infinite leaf
    Outside,
};

struct PrefResult {
    bool is_context = false;
    /// The context c, or the reversed input when it ends inside the tree.
    Word word;
};

/// Saturated binary context tree with probabilities, validated on construction.
/// Immutable once built.
class ContextTree {
public:
    enum class Shape { Finite, Comb, Bamboo, Other };

    /// Validates the description; throws NotSaturated, NotPrefixFree, BadProbability,
    /// DanglingBranch or ParseError.
    ContextTree(std::map<Word, Number> finite_contexts, std::vector<InfiniteBranch> branches, NumericMode mode);

    NodeKind classify(const Word& node) const;
    bool is_context(const Word& node) const;
    bool is_internal(const Word& node) const;

    /// q_c(0) for a context c; throws UnresolvedInternal for other nodes.
    Number q0(const Word& context) const;
    Number q(const Word& context, char a) const;
    /// q of the infinite leaf of the given branch.
    const Number& q_infinite_leaf_0(std::size_t branch = 0) const { return branches_.at(branch).q_infinite_leaf_0; }

    /// Reads the suffix right to left from the root.
    PrefResult pref(const Word& suffix) const;
    /// Like pref but throws InsufficientHistory when no context is reached.
    Word pref_context(const Word& suffix) const;

    /// Empty for infinite trees.
    std::optional<std::size_t> height() const { return height_; }
    bool is_finite() const { return branches_.empty(); }
    std::size_t max_finite_depth() const { return max_finite_depth_; }
    Shape shape() const { return shape_; }
    NumericMode mode() const { return mode_; }

    const std::map<Word, Number>& finite_contexts() const { return finite_; }
    const std::vector<InfiniteBranch>& branches() const { return branches_; }

    /// Contexts of length <= depth in alphabetical order.
    std::vector<Word> leaves_to_depth(std::size_t depth) const;
    /// Contexts containing no other context as a factor.
    std::vector<Word> minimal_contexts() const;

    /// A history suffix s is sufficient when every continuation y has pref(s y)
    /// resolved inside s y, so that s alone fixes the law of the whole future.
    /// Equivalently: reversed(s) is not a suffix of any internal node.
    bool sufficient(const Word& s) const;
    /// Shortest sufficient suffix of x, or x itself when none exists.
    Word key(const Word& x) const;
    /// key(x + a) given key(x) = k.
    Word next_key(const Word& k, char a) const;

    /// The comb/bamboo family accessors; throw UnsupportedTree for other shapes.
    const QFamily& comb_family() const;
    const QFamily& bamboo_family_1() const;
    const QFamily& bamboo_family_00() const;

    /// Optional parameter a carried by the tree document (one-parameter families).
    std::optional<Number> parameter_a;

private:
    std::map<Word, Number> finite_;
    std::vector<InfiniteBranch> branches_;
    NumericMode mode_;
    std::unordered_set<Word> finite_internal_;
    std::unordered_set<Word> insufficient_reversed_;
    std::optional<std::size_t> height_;
    std::size_t max_finite_depth_ = 0;
    std::size_t max_period_ = 0;
    Shape shape_ = Shape::Other;

    bool on_spine(const Word& node, std::size_t* branch = nullptr) const;
    void validate() const;
};

// tree documents

ContextTree tree_from_json(const nlohmann::json& doc, NumericMode mode);
nlohmann::json tree_to_json(const ContextTree& tree);
/// Throws IoError when the file cannot be read.
ContextTree load_tree(const std::string& path, NumericMode mode);

/// Canonical trees used across tests and the CLI.
ContextTree make_comb(const QFamily& fam, Number q_inf0, NumericMode mode = NumericMode::Rational);
ContextTree make_bamboo(const QFamily& fam1, const QFamily& fam00, Number q_inf0,
                        NumericMode mode = NumericMode::Rational);
ContextTree make_finite(const std::map<Word, Number>& q0s, NumericMode mode = NumericMode::Rational);

} // namespace vlmc
