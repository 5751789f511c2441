#pragma once

#include "vlmc/stationary.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vlmc {

/// Power series cut after x^(size-1).
using Series = std::vector<Number>;

Series series_mul(const Series& a, const Series& b);
/// 1/a; needs a[0] != 0.
Series series_inv(const Series& a);

/// q_c^(n)(u): probability that letters n-|u|+1 .. n are u given the history c
/// reversed (c a context, or a longer node whose reversal fixes the context).
Number conditional_kernel(const StationaryMeasure& m, const Word& c, const Word& u, std::size_t n);

struct BambooShape {
    /// 1: the conditioning word reversed is a context. 2: it is the longer node
    /// 1(01)^l00 or (10)^l11 standing in for the context "1".
    int kind = 1;
    char doubled = '0';
    std::size_t ell = 0;
    bool extra_letter = false; // the tail after the double has odd length
    Word head;                 // w = head + conditioning
    Word conditioning;         // suffix of w starting at its last double
};

/// Splits w at its last double. Throws InternalNodeWord for alternating words
/// ending in 0 and UnclassifiableWord for the other words without a double.
BambooShape classify_bamboo_word(const Word& w);

struct OccurrenceGF {
    Word w;
    std::size_t r = 1, nmax = 0;
    std::string model; // "comb" or "bamboo"
    Word conditioning; // suffix of w the kernels condition on
    Word context;      // conditioning reversed
    std::optional<BambooShape> shape;
    Number pi_w{0};
    Series C, S, phi1, phi;
};

OccurrenceGF occurrence_gf_comb(const StationaryMeasure& m, const Word& w, std::size_t r, std::size_t nmax);
OccurrenceGF occurrence_gf_bamboo(const StationaryMeasure& m, const Word& w, std::size_t r, std::size_t nmax);
/// Dispatches on the tree shape.
OccurrenceGF occurrence_gf(const StationaryMeasure& m, const Word& w, std::size_t r, std::size_t nmax);

/// P(T_w^(r) = n); OutOfRange beyond nmax.
Number occurrence_pmf(const OccurrenceGF& gf, std::size_t n);

/// P(T_w^(r) = n) for n = 0..nmax by dynamic programming over (history key,
/// match automaton state, occurrences so far), started from the stationary law.
std::vector<Number> oracle_occurrence_pmf(const StationaryMeasure& m, const Word& w, std::size_t r,
                                          std::size_t nmax, std::size_t max_states = 1000000);

} // namespace vlmc
