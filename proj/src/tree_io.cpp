#include "vlmc/context_tree.hpp"
#include "vlmc/error.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace vlmc {

namespace {

Number checked_pair(const nlohmann::json& entry, const std::string& where, NumericMode mode) {
    if (!entry.contains("q0")) throw Error(ErrorKind::Parse, where + " needs 'q0'");
    Number q0 = number_from_json(entry.at("q0"), mode);
    if (entry.contains("q1")) {
        Number q1 = number_from_json(entry.at("q1"), mode);
        Number gap = abs(q0 + q1 - Number(1));
        bool ok = (q0.exact() && q1.exact()) ? gap.is_zero() : gap.to_double() <= 1e-12;
        if (!ok) throw Error(ErrorKind::BadProbability, where + ": q0 + q1 = " + (q0 + q1).str() + " != 1");
    }
    return q0;
}

} // namespace

ContextTree tree_from_json(const nlohmann::json& doc, NumericMode mode) {
    if (!doc.is_object()) throw Error(ErrorKind::Parse, "tree document must be a JSON object");
    std::map<Word, Number> finite;
    if (doc.contains("finite_contexts")) {
        for (const auto& e : doc.at("finite_contexts")) {
            if (!e.contains("word")) throw Error(ErrorKind::Parse, "finite context needs 'word'");
            Word w = e.at("word").get<std::string>();
            require_binary(w, "context");
            if (finite.count(w)) throw Error(ErrorKind::Parse, "context '" + w + "' declared twice");
            finite.emplace(w, checked_pair(e, "context '" + w + "'", mode));
        }
    }
    std::vector<InfiniteBranch> branches;
    if (doc.contains("infinite_branches")) {
        for (const auto& e : doc.at("infinite_branches")) {
            InfiniteBranch b;
            if (!e.contains("period")) throw Error(ErrorKind::Parse, "infinite branch needs 'period'");
            b.period = e.at("period").get<std::string>();
            if (e.contains("families")) {
                for (const auto& f : e.at("families")) b.families.push_back(QFamily::from_json(f, mode));
            } else if (e.contains("family")) {
                b.families.push_back(QFamily::from_json(e.at("family"), mode));
            } else {
                throw Error(ErrorKind::Parse, "infinite branch needs 'family' or 'families'");
            }
            b.q_infinite_leaf_0 =
                e.contains("q_infinite_leaf_0") ? number_from_json(e.at("q_infinite_leaf_0"), mode) : Number(1);
            branches.push_back(std::move(b));
        }
    }
    ContextTree tree(std::move(finite), std::move(branches), mode);
    if (doc.contains("a") && !doc.at("a").is_null()) tree.parameter_a = number_from_json(doc.at("a"), mode);
    return tree;
}

nlohmann::json tree_to_json(const ContextTree& tree) {
    nlohmann::json doc;
    doc["finite_contexts"] = nlohmann::json::array();
    for (const auto& [w, q] : tree.finite_contexts())
        doc["finite_contexts"].push_back({{"word", w}, {"q0", number_to_json(q)}});
    doc["infinite_branches"] = nlohmann::json::array();
    for (const auto& b : tree.branches()) {
        nlohmann::json e;
        e["period"] = b.period;
        e["families"] = nlohmann::json::array();
        for (const auto& f : b.families) e["families"].push_back(f.to_json());
        e["q_infinite_leaf_0"] = number_to_json(b.q_infinite_leaf_0);
        doc["infinite_branches"].push_back(e);
    }
    if (tree.parameter_a) doc["a"] = number_to_json(*tree.parameter_a);
    return doc;
}

ContextTree load_tree(const std::string& path, NumericMode mode) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot read tree file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(buf.str());
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, path + ": " + e.what());
    }
    try {
        return tree_from_json(doc, mode);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, path + ": " + e.what());
    }
}

} // namespace vlmc
