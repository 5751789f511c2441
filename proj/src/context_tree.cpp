#include "vlmc/context_tree.hpp"
#include "vlmc/error.hpp"

#include <algorithm>

namespace vlmc {

ContextTree::ContextTree(std::map<Word, Number> finite_contexts, std::vector<InfiniteBranch> branches,
                         NumericMode mode)
    : finite_(std::move(finite_contexts)), branches_(std::move(branches)), mode_(mode) {
    if (finite_.empty() && branches_.empty()) throw Error(ErrorKind::Parse, "tree has no contexts");
    for (const auto& [c, q] : finite_) {
        require_binary(c, "context");
        if (q < Number(0) || q > Number(1))
            throw Error(ErrorKind::BadProbability, "q_" + c + "(0) = " + q.str() + " is outside [0,1]");
        for (std::size_t k = 0; k < c.size(); ++k) finite_internal_.insert(c.substr(0, k));
        max_finite_depth_ = std::max(max_finite_depth_, c.size());
    }
    for (const auto& b : branches_) {
        if (b.period.empty()) throw Error(ErrorKind::Parse, "infinite branch with empty period");
        require_binary(b.period, "period");
        if (b.families.size() != b.period.size())
            throw Error(ErrorKind::Parse, "branch with period '" + b.period + "' needs " +
                                              std::to_string(b.period.size()) + " families");
        if (b.q_infinite_leaf_0 < Number(0) || b.q_infinite_leaf_0 > Number(1))
            throw Error(ErrorKind::BadProbability, "infinite leaf probability outside [0,1]");
        max_period_ = std::max(max_period_, b.period.size());
    }
    for (const auto& u : finite_internal_)
        for (std::size_t k = 0; k <= u.size(); ++k) insufficient_reversed_.insert(u.substr(k));

    validate();

    if (branches_.empty()) {
        height_ = max_finite_depth_;
        shape_ = Shape::Finite;
    } else if (finite_.empty() && branches_.size() == 1) {
        if (branches_[0].period == "0") shape_ = Shape::Comb;
        else if (branches_[0].period == "01") shape_ = Shape::Bamboo;
    }
}

void ContextTree::validate() const {
    for (const auto& [c, q] : finite_) {
        if (on_spine(c)) throw Error(ErrorKind::DanglingBranch, "context '" + c + "' lies on an infinite branch");
        if (finite_internal_.count(c))
            throw Error(ErrorKind::NotPrefixFree, "context '" + c + "' is a prefix of another context");
    }
    for (const auto& u : finite_internal_) {
        for (char a : {'0', '1'}) {
            if (classify(u + a) == NodeKind::Outside)
                throw Error(ErrorKind::NotSaturated, "internal node '" + u + "' has no child '" + (u + a) + "'");
        }
    }
}

bool ContextTree::on_spine(const Word& node, std::size_t* branch) const {
    for (std::size_t b = 0; b < branches_.size(); ++b) {
        const Word& p = branches_[b].period;
        bool ok = true;
        for (std::size_t i = 0; i < node.size() && ok; ++i) ok = node[i] == p[i % p.size()];
        if (ok) {
            if (branch) *branch = b;
            return true;
        }
    }
    return false;
}

NodeKind ContextTree::classify(const Word& node) const {
    if (finite_.count(node)) return NodeKind::FiniteContext;
    if (on_spine(node)) return NodeKind::Spine;
    if (finite_internal_.count(node)) return NodeKind::Internal;
    if (!node.empty() && on_spine(node.substr(0, node.size() - 1))) return NodeKind::FamilyContext;
    return NodeKind::Outside;
}

bool ContextTree::is_context(const Word& node) const {
    auto k = classify(node);
    return k == NodeKind::FiniteContext || k == NodeKind::FamilyContext;
}

bool ContextTree::is_internal(const Word& node) const {
    auto k = classify(node);
    return k == NodeKind::Internal || k == NodeKind::Spine;
}

Number ContextTree::q0(const Word& context) const {
    auto it = finite_.find(context);
    if (it != finite_.end()) return it->second;
    if (!context.empty() && !on_spine(context) && !finite_internal_.count(context)) {
        Word parent = context.substr(0, context.size() - 1);
        for (const auto& b : branches_) {
            const Word& p = b.period;
            bool ok = true;
            for (std::size_t i = 0; i < parent.size() && ok; ++i) ok = parent[i] == p[i % p.size()];
            if (ok) {
                std::size_t d = parent.size();
                return b.families[d % p.size()].q0(d / p.size());
            }
        }
    }
    throw Error(ErrorKind::UnresolvedInternal, "'" + context + "' is not a context");
}

Number ContextTree::q(const Word& context, char a) const {
    Number z = q0(context);
    return a == '0' ? z : Number(1) - z;
}

PrefResult ContextTree::pref(const Word& suffix) const {
    Word node;
    std::size_t i = suffix.size();
    while (true) {
        NodeKind k = classify(node);
        if (k == NodeKind::FiniteContext || k == NodeKind::FamilyContext) return {true, node};
        if (k == NodeKind::Outside) throw Error(ErrorKind::UnresolvedInternal, "walked out of the tree at '" + node + "'");
        if (i == 0) return {false, node};
        node.push_back(suffix[--i]);
    }
}

Word ContextTree::pref_context(const Word& suffix) const {
    PrefResult r = pref(suffix);
    if (!r.is_context)
        throw Error(ErrorKind::InsufficientHistory,
                    "history '" + suffix + "' ends at internal node '" + r.word + "'");
    return r.word;
}

std::vector<Word> ContextTree::leaves_to_depth(std::size_t depth) const {
    std::vector<Word> out;
    std::vector<Word> stack{Word()};
    while (!stack.empty()) {
        Word v = std::move(stack.back());
        stack.pop_back();
        if (v.size() > depth) continue;
        NodeKind k = classify(v);
        if (k == NodeKind::FiniteContext || k == NodeKind::FamilyContext) {
            out.push_back(v);
        } else if (k == NodeKind::Internal || k == NodeKind::Spine) {
            stack.push_back(v + '1');
            stack.push_back(v + '0');
        }
    }
    return out;
}

std::vector<Word> ContextTree::minimal_contexts() const {
    // Off-spine leaves deeper than one extra period contain the same-phase leaf one
    // period up as a suffix, so the enumeration below is exhaustive.
    std::size_t depth = is_finite() ? max_finite_depth_ : max_finite_depth_ + 2 * max_period_ + 1;
    std::vector<Word> out;
    for (const Word& c : leaves_to_depth(depth)) {
        bool minimal = true;
        for (std::size_t len = 1; len < c.size() && minimal; ++len)
            for (std::size_t i = 0; i + len <= c.size() && minimal; ++i)
                if (is_context(c.substr(i, len))) minimal = false;
        if (minimal) out.push_back(c);
    }
    return out;
}

bool ContextTree::sufficient(const Word& s) const {
    Word r = reversed(s);
    if (insufficient_reversed_.count(r)) return false;
    for (const auto& b : branches_) {
        if (is_factor(r, periodic_prefix(b.period, r.size() + b.period.size()))) return false;
    }
    return true;
}

Word ContextTree::key(const Word& x) const {
    for (std::size_t len = 0; len <= x.size(); ++len) {
        Word s = x.substr(x.size() - len);
        if (sufficient(s)) return s;
    }
    return x;
}

Word ContextTree::next_key(const Word& k, char a) const { return key(k + a); }

const QFamily& ContextTree::comb_family() const {
    if (shape_ != Shape::Comb) throw Error(ErrorKind::UnsupportedTree, "tree is not an infinite comb");
    return branches_[0].families[0];
}

const QFamily& ContextTree::bamboo_family_1() const {
    if (shape_ != Shape::Bamboo) throw Error(ErrorKind::UnsupportedTree, "tree is not a bamboo blossom");
    return branches_[0].families[0];
}

const QFamily& ContextTree::bamboo_family_00() const {
    if (shape_ != Shape::Bamboo) throw Error(ErrorKind::UnsupportedTree, "tree is not a bamboo blossom");
    return branches_[0].families[1];
}

ContextTree make_comb(const QFamily& fam, Number q_inf0, NumericMode mode) {
    return ContextTree({}, {InfiniteBranch{"0", {fam}, q_inf0}}, mode);
}

ContextTree make_bamboo(const QFamily& fam1, const QFamily& fam00, Number q_inf0, NumericMode mode) {
    return ContextTree({}, {InfiniteBranch{"01", {fam1, fam00}, q_inf0}}, mode);
}

ContextTree make_finite(const std::map<Word, Number>& q0s, NumericMode mode) { return ContextTree(q0s, {}, mode); }

} // namespace vlmc
