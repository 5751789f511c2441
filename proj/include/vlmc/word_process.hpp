#pragma once

#include "vlmc/stationary.hpp"

#include <array>
#include <map>
#include <mutex>

namespace vlmc {

/// The stationary letter process as a Markov chain on keys (shortest sufficient
/// suffixes of the history). A sufficient key moves with q_pref; a short history
/// that does not fix the context yet moves with the stationary ratios
/// pi(k a) / pi(k), taken as 0 when pi(k) = 0. Started from the empty key this
/// generates the stationary process exactly.
class WordProcess {
public:
    explicit WordProcess(const StationaryMeasure& m) : m_(m) {}

    const StationaryMeasure& measure() const { return m_; }
    const ContextTree& tree() const { return m_.tree(); }

    struct Move {
        std::array<Number, 2> p;
        std::array<Word, 2> next;
    };
    /// Law of the next letter and the keys reached; memoized.
    const Move& move(const Word& key) const;

    /// P(next |u| letters = u | history key).
    Number emit_prob(const Word& key, const Word& u) const;

    using Dist = std::map<Word, Number>;
    Dist advance(const Dist& d) const;

private:
    const StationaryMeasure& m_;
    mutable std::map<Word, Move> moves_;
    mutable std::mutex mutex_;
};

} // namespace vlmc
