#pragma once

#include "vlmc/context_tree.hpp"
#include "vlmc/simulate.hpp"

#include <map>
#include <string>
#include <vector>

namespace testing {

using vlmc::Number;
using vlmc::Word;

inline Number rat(long p, long q) { return Number::ratio(p, q); }

inline std::vector<Word> all_words(std::size_t n) {
    std::vector<Word> out{""};
    for (std::size_t i = 0; i < out.size(); ++i)
        if (out[i].size() < n) {
            out.push_back(out[i] + '0');
            out.push_back(out[i] + '1');
        }
    return out;
}

inline std::size_t below(vlmc::RandomStream& rng, std::size_t n) {
    auto k = static_cast<std::size_t>(rng.uniform() * static_cast<double>(n));
    return k < n ? k : n - 1;
}

inline Word random_word(vlmc::RandomStream& rng, std::size_t len) {
    Word w;
    for (std::size_t i = 0; i < len; ++i) w += rng.uniform() < 0.5 ? '0' : '1';
    return w;
}

// q in {1/10, ..., 9/10}
inline Number random_q(vlmc::RandomStream& rng) { return rat(1 + static_cast<long>(below(rng, 9)), 10); }

inline vlmc::ContextTree random_finite_tree(vlmc::RandomStream& rng, std::size_t max_height) {
    std::map<Word, Number> q;
    std::vector<Word> todo{"0", "1"};
    while (!todo.empty()) {
        Word u = todo.back();
        todo.pop_back();
        if (u.size() < max_height && rng.uniform() < 0.6) {
            todo.push_back(u + '0');
            todo.push_back(u + '1');
        } else {
            q[u] = random_q(rng);
        }
    }
    return vlmc::make_finite(q);
}

inline vlmc::QFamily random_family(vlmc::RandomStream& rng) {
    std::vector<Number> table;
    std::size_t len = 1 + below(rng, 4);
    for (std::size_t i = 0; i < len; ++i) table.push_back(random_q(rng));
    return vlmc::QFamily::table_then_constant(table, random_q(rng));
}

inline vlmc::ContextTree intro_tree() {
    return vlmc::make_finite(
        {{"1", rat(1, 3)}, {"00", rat(1, 2)}, {"011", rat(3, 4)}, {"0100", rat(1, 5)}, {"0101", rat(2, 3)}});
}

inline vlmc::ContextTree fourflower() {
    return vlmc::make_finite({{"1", rat(3, 10)}, {"00", rat(4, 10)}, {"010", rat(6, 10)}, {"011", rat(8, 10)}});
}

inline vlmc::ContextTree markov_tree() { return vlmc::make_finite({{"0", rat(4, 10)}, {"1", rat(7, 10)}}); }

inline vlmc::ContextTree comb_const(Number a) { return vlmc::make_comb(vlmc::QFamily::constant(a), a); }

inline vlmc::ContextTree bamboo_half() {
    return vlmc::make_bamboo(vlmc::QFamily::constant(rat(1, 2)), vlmc::QFamily::constant(rat(1, 2)), rat(1, 2));
}

} // namespace testing
