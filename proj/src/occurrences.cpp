#include "vlmc/occurrences.hpp"
#include "vlmc/error.hpp"
#include "vlmc/word_process.hpp"

#include <map>
#include <tuple>

namespace vlmc {

Series series_mul(const Series& a, const Series& b) {
    std::size_t n = std::min(a.size(), b.size());
    Series out(n, Number(0));
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; i + j < n; ++j)
            if (!b[j].is_zero()) out[i + j] += a[i] * b[j];
    }
    return out;
}

Series series_inv(const Series& a) {
    if (a.empty() || a[0].is_zero()) throw Error(ErrorKind::DivisionByZero, "series with zero constant term");
    Series out(a.size(), Number(0));
    out[0] = Number(1) / a[0];
    for (std::size_t n = 1; n < a.size(); ++n) {
        Number acc(0);
        for (std::size_t j = 1; j <= n; ++j)
            if (!a[j].is_zero()) acc += a[j] * out[n - j];
        out[n] = -acc * out[0];
    }
    return out;
}

Number conditional_kernel(const StationaryMeasure& m, const Word& c, const Word& u, std::size_t n) {
    if (n < u.size()) throw Error(ErrorKind::OutOfRange, "horizon shorter than the target word");
    WordProcess wp(m);
    WordProcess::Dist d{{m.tree().key(reversed(c)), Number(1)}};
    for (std::size_t t = 0; t < n - u.size(); ++t) d = wp.advance(d);
    Number total(0);
    for (const auto& [k, p] : d) total += p * wp.emit_prob(k, u);
    return total;
}

BambooShape classify_bamboo_word(const Word& w) {
    require_binary(w);
    if (w.size() <= 1) throw Error(ErrorKind::UnclassifiableWord, "word '" + w + "' has length <= 1");
    std::size_t i = w.size();
    for (std::size_t j = w.size() - 1; j-- > 0;)
        if (w[j] == w[j + 1]) {
            i = j;
            break;
        }
    if (i == w.size()) {
        if (w.back() == '0')
            throw Error(ErrorKind::InternalNodeWord, "'" + w + "' reversed is an internal node of the bamboo");
        throw Error(ErrorKind::UnclassifiableWord, "'" + w + "' is alternating and ends in 1: no double to split at");
    }
    BambooShape sh;
    sh.doubled = w[i];
    sh.head = w.substr(0, i);
    sh.conditioning = w.substr(i);
    Word z = w.substr(i + 2);
    sh.ell = z.size() / 2;
    sh.extra_letter = z.size() % 2 == 1;
    // after the last double the word alternates starting with the other letter
    Word expect = periodic_prefix(Word(1, flip(sh.doubled)) + sh.doubled, z.size());
    if (z != expect || sh.head + sh.conditioning != w)
        throw Error(ErrorKind::UnclassifiableWord, "decomposition of '" + w + "' failed");
    // *00(10)^l and *11(01)^l 0 end on a context; *00(10)^l 1 and *11(01)^l do not
    bool ends_on_context = (sh.doubled == '0') != sh.extra_letter;
    sh.kind = ends_on_context ? 1 : 2;
    return sh;
}

namespace {

OccurrenceGF build(const StationaryMeasure& m, const Word& w, std::size_t r, std::size_t nmax, const Word& cond) {
    if (r == 0) throw Error(ErrorKind::BadParams, "r must be >= 1");
    const std::size_t k = w.size();
    OccurrenceGF gf;
    gf.w = w;
    gf.r = r;
    gf.nmax = nmax;
    gf.conditioning = cond;
    gf.context = reversed(cond);
    gf.pi_w = m.measure_of(w);

    WordProcess wp(m);
    const Word start = m.tree().key(cond);
    const std::size_t len = nmax + 1;
    gf.C.assign(len, Number(0));
    gf.C[0] = Number(1);
    // overlap at shift j: the next j letters must be the last j letters of w
    for (std::size_t j = 1; j < k && j < len; ++j)
        if (w.compare(j, k - j, w, 0, k - j) == 0) gf.C[j] = wp.emit_prob(start, w.substr(k - j));
    gf.S = gf.C;
    WordProcess::Dist d{{start, Number(1)}};
    for (std::size_t j = k; j < len; ++j) {
        Number q(0);
        for (const auto& [key, p] : d) q += p * wp.emit_prob(key, w);
        gf.S[j] += q;
        d = wp.advance(d);
    }

    Series inv = series_inv(gf.S);
    gf.phi1.assign(len, Number(0));
    Number run(0);
    for (std::size_t n = k; n < len; ++n) {
        run += inv[n - k];
        gf.phi1[n] = gf.pi_w * run;
    }
    gf.phi = gf.phi1;
    Series step(len, Number(0));
    for (std::size_t i = 1; i < len; ++i) step[i] = -inv[i];
    for (std::size_t i = 1; i < r; ++i) gf.phi = series_mul(gf.phi, step);
    return gf;
}

} // namespace

OccurrenceGF occurrence_gf_comb(const StationaryMeasure& m, const Word& w, std::size_t r, std::size_t nmax) {
    require_binary(w);
    if (m.tree().shape() != ContextTree::Shape::Comb) throw Error(ErrorKind::UnsupportedTree, "not a comb");
    if (w.empty()) throw Error(ErrorKind::UnclassifiableWord, "empty word");
    if (w.find('1') == Word::npos)
        throw Error(ErrorKind::InternalNodeWord, "'" + w + "' = 0^k reversed is an internal node of the comb");
    OccurrenceGF gf = build(m, w, r, nmax, reversed(m.tree().pref_context(w)));
    gf.model = "comb";
    return gf;
}

OccurrenceGF occurrence_gf_bamboo(const StationaryMeasure& m, const Word& w, std::size_t r, std::size_t nmax) {
    if (m.tree().shape() != ContextTree::Shape::Bamboo) throw Error(ErrorKind::UnsupportedTree, "not a bamboo");
    BambooShape sh = classify_bamboo_word(w);
    OccurrenceGF gf = build(m, w, r, nmax, sh.conditioning);
    gf.model = "bamboo";
    gf.shape = sh;
    return gf;
}

OccurrenceGF occurrence_gf(const StationaryMeasure& m, const Word& w, std::size_t r, std::size_t nmax) {
    switch (m.tree().shape()) {
    case ContextTree::Shape::Comb:
        return occurrence_gf_comb(m, w, r, nmax);
    case ContextTree::Shape::Bamboo:
        return occurrence_gf_bamboo(m, w, r, nmax);
    default:
        throw Error(ErrorKind::UnsupportedTree, "occurrence generating functions cover the comb and the bamboo");
    }
}

Number occurrence_pmf(const OccurrenceGF& gf, std::size_t n) {
    if (n > gf.nmax) throw Error(ErrorKind::OutOfRange, "coefficient " + std::to_string(n) + " beyond nmax");
    return gf.phi[n];
}

std::vector<Number> oracle_occurrence_pmf(const StationaryMeasure& m, const Word& w, std::size_t r,
                                          std::size_t nmax, std::size_t max_states) {
    require_binary(w);
    if (w.empty() || r == 0) throw Error(ErrorKind::BadParams, "need a nonempty word and r >= 1");
    const std::size_t k = w.size();
    // match automaton: delta[j][a] = longest prefix of w that is a suffix of w[0, j) a
    std::vector<std::array<std::size_t, 2>> delta(k + 1);
    for (std::size_t j = 0; j <= k; ++j)
        for (int a = 0; a < 2; ++a) {
            Word t = w.substr(0, std::min(j, k)) + letter(a);
            std::size_t best = 0;
            for (std::size_t l = std::min(k, t.size()); l > 0; --l)
                if (t.compare(t.size() - l, l, w, 0, l) == 0) {
                    best = l;
                    break;
                }
            delta[j][a] = best;
        }

    WordProcess wp(m);
    using State = std::tuple<Word, std::size_t, std::size_t>; // key, matched, occurrences
    std::map<State, Number> cur{{State{"", 0, 0}, Number(1)}};
    std::vector<Number> pmf(nmax + 1, Number(0));
    for (std::size_t n = 1; n <= nmax; ++n) {
        std::map<State, Number> next;
        for (const auto& [st, p] : cur) {
            const auto& [key, j, cnt] = st;
            const auto& mv = wp.move(key);
            for (int a = 0; a < 2; ++a) {
                if (mv.p[a].is_zero()) continue;
                Number pa = p * mv.p[a];
                std::size_t j2 = delta[j][a];
                std::size_t c2 = cnt;
                if (j2 == k) {
                    if (++c2 == r) {
                        pmf[n] += pa;
                        continue;
                    }
                }
                auto [it, fresh] = next.try_emplace(State{mv.next[a], j2, c2}, pa);
                if (!fresh) it->second += pa;
            }
        }
        if (next.size() > max_states)
            throw Error(ErrorKind::StateSpaceTooLarge, std::to_string(next.size()) + " oracle states");
        cur = std::move(next);
    }
    return pmf;
}

} // namespace vlmc
