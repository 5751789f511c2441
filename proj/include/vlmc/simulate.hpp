#pragma once

#include "vlmc/stationary.hpp"
#include "vlmc/word_process.hpp"

#include <json.hpp>

#include <cstdint>
#include <random>
#include <unordered_map>
#include <vector>

namespace vlmc {

/// mt19937_64 seeded through SplitMix64; split(i) derives independent child streams.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed);
    std::uint64_t seed() const { return seed_; }
    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    RandomStream split(std::uint64_t index) const;

private:
    std::uint64_t seed_;
    std::mt19937_64 gen_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// The history as its key: the shortest suffix that fixes the context (or the
/// whole retained history while none does).
struct ChainState {
    Word key;
    bool resolved = false; // key is sufficient
    Word context;          // pref of the key when resolved
};

class Simulator {
public:
    explicit Simulator(const StationaryMeasure& m, std::size_t backward_cap = 4096);

    /// Stationary start: grows the history to the left with the conditional laws
    /// pi(a s) / pi(s) until it fixes the context. Throws DiracState for measures
    /// carried by finitely many sequences.
    ChainState sample_initial(RandomStream& rng) const;
    /// Emits a letter with the law attached to the state and moves on.
    char step(ChainState& s, RandomStream& rng) const;
    /// Stationary start followed by n letters.
    Word run(std::size_t n, RandomStream& rng) const;

private:
    struct Node {
        double p0 = 0.0;
        std::size_t next[2] = {npos, npos};
        Word key;
    };
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    const StationaryMeasure& m_;
    WordProcess wp_;
    std::size_t cap_;
    mutable std::vector<Node> nodes_;
    mutable std::unordered_map<Word, std::size_t> index_;

    std::size_t intern(const Word& key) const;
    std::size_t follow(std::size_t i, int a) const;
    ChainState state_of(const Word& key) const;
};

struct WordStat {
    Word w;
    std::size_t count = 0;
    double freq = 0.0, expected = 0.0, sigma = 0.0;
    bool ok = true;
};

struct OccurrenceStat {
    std::size_t n = 0;
    double empirical = 0.0, expected = 0.0, sigma = 0.0;
    bool ok = true;
};

struct EmpiricalReport {
    std::size_t n_letters = 0;
    double z_limit = 4.0;
    std::vector<WordStat> words;
    Word occurrence_word;
    std::size_t occurrence_replicas = 0;
    std::vector<OccurrenceStat> occurrence;
    bool all_ok = true;
    nlohmann::json to_json() const;
};

/// Sliding-window frequencies of every word of length 1..maxlen against pi(w).
/// sigma comes from the central limit theorem for the window indicators, with
/// the autocovariances summed up to `lags`.
EmpiricalReport empirical_report(const StationaryMeasure& m, const Word& letters, std::size_t maxlen,
                                 double z_limit = 4.0, std::size_t lags = 200);

/// Adds first-occurrence times of w over independent replicas of length nmax,
/// compared with the given law (index n = P(T = n)).
void add_occurrence_check(EmpiricalReport& rep, const StationaryMeasure& m, const Word& w,
                          const std::vector<Number>& law, std::size_t replicas, RandomStream& rng);

} // namespace vlmc
