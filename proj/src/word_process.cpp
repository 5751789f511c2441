#include "vlmc/word_process.hpp"

namespace vlmc {

const WordProcess::Move& WordProcess::move(const Word& key) const {
    std::lock_guard<std::mutex> lock(mutex_);
    if (auto it = moves_.find(key); it != moves_.end()) return it->second;
    const ContextTree& t = m_.tree();
    Move mv;
    if (t.sufficient(key)) {
        Word c = t.pref_context(key);
        for (int a = 0; a < 2; ++a) mv.p[a] = t.q(c, letter(a));
    } else {
        Number base = m_.measure_of(key);
        for (int a = 0; a < 2; ++a)
            mv.p[a] = base.is_zero() ? Number(0) : m_.measure_of(key + letter(a)) / base;
    }
    for (int a = 0; a < 2; ++a) mv.next[a] = t.next_key(key, letter(a));
    return moves_.emplace(key, std::move(mv)).first->second;
}

Number WordProcess::emit_prob(const Word& key, const Word& u) const {
    Number p(1);
    Word k = key;
    for (char ch : u) {
        const Move& mv = move(k);
        int a = letter_index(ch);
        p *= mv.p[a];
        if (p.is_zero()) break;
        k = mv.next[a];
    }
    return p;
}

WordProcess::Dist WordProcess::advance(const Dist& d) const {
    Dist out;
    for (const auto& [k, p] : d) {
        if (p.is_zero()) continue;
        const Move& mv = move(k);
        for (int a = 0; a < 2; ++a) {
            if (mv.p[a].is_zero()) continue;
            auto [it, fresh] = out.try_emplace(mv.next[a], p * mv.p[a]);
            if (!fresh) it->second += p * mv.p[a];
        }
    }
    return out;
}

} // namespace vlmc
