#include "helpers.hpp"

#include "vlmc/error.hpp"
#include "vlmc/occurrences.hpp"

#include <doctest.h>

using namespace vlmc;
using namespace testing;

namespace {

ErrorKind error_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::Io;
}

// schoolbook truncated series algebra, kept apart from the library's
std::vector<Number> mul(const std::vector<Number>& a, const std::vector<Number>& b) {
    std::vector<Number> c(a.size(), Number(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; i + j < c.size() && j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

// 1/a by solving a * b = 1 term by term
std::vector<Number> inv(const std::vector<Number>& a) {
    std::vector<Number> b(a.size(), Number(0));
    b[0] = Number(1) / a[0];
    for (std::size_t n = 1; n < a.size(); ++n) {
        Number acc(0);
        for (std::size_t j = 1; j <= n; ++j) acc += a[j] * b[n - j];
        b[n] = -acc / a[0];
    }
    return b;
}

} // namespace

TEST_CASE("conditional kernels") {
    auto markov = solve_stationary(markov_tree());
    CHECK(conditional_kernel(*markov, "1", "0", 2) == rat(7, 10) * rat(4, 10) + rat(3, 10) * rat(7, 10));
    CHECK(conditional_kernel(*markov, "1", "1", 1) == rat(3, 10));

    Number a = rat(2, 5);
    auto iid = solve_stationary(comb_const(a));
    for (std::size_t j = 1; j < 8; ++j) CHECK(conditional_kernel(*iid, "1", "1", j) == Number(1) - a);
    CHECK(conditional_kernel(*iid, "1", "101", 5) == (Number(1) - a) * a * (Number(1) - a));

    // marginals over all words of a given length sum to 1
    RandomStream rng(2);
    auto comb = solve_stationary(make_comb(random_family(rng), random_q(rng)));
    auto bam = solve_stationary(make_bamboo(random_family(rng), random_family(rng), random_q(rng)));
    for (auto [m, c] : {std::pair{comb.get(), Word("001")}, std::pair{bam.get(), Word("0100")}})
        for (std::size_t L = 1; L <= 4; ++L) {
            Number total(0);
            for (const Word& u : all_words(L))
                if (u.size() == L) {
                    Number k = conditional_kernel(*m, c, u, 6);
                    CHECK(k >= Number(0));
                    total += k;
                }
            CHECK(total == Number(1));
        }
}

TEST_CASE("i.i.d. comb: first occurrence of 1 is geometric") {
    for (Number a : {rat(1, 2), rat(3, 10), rat(4, 5)}) {
        auto m = solve_stationary(comb_const(a));
        auto gf = occurrence_gf(*m, "1", 1, 20);
        CHECK(gf.model == "comb");
        CHECK(occurrence_pmf(gf, 0).is_zero());
        for (unsigned n = 1; n <= 20; ++n) CHECK(occurrence_pmf(gf, n) == (Number(1) - a) * pow(a, n - 1));
        CHECK(gf.C[0] == Number(1));
    }
    auto half = solve_stationary(comb_const(rat(1, 2)));
    CHECK(occurrence_pmf(occurrence_gf(*half, "1", 1, 5), 3) == rat(1, 8));
    CHECK(error_of([&] { occurrence_pmf(occurrence_gf(*half, "1", 1, 5), 6); }) == ErrorKind::OutOfRange);
}

TEST_CASE("comb formula against the oracle") {
    auto m = solve_stationary(comb_const(rat(1, 2)));
    auto gf = occurrence_gf_comb(*m, "101", 2, 20);
    auto oracle = oracle_occurrence_pmf(*m, "101", 2, 20);
    for (std::size_t n = 0; n <= 20; ++n) CHECK(occurrence_pmf(gf, n) == oracle[n]);

    RandomStream rng(77);
    for (Number a : {rat(3, 10), rat(1, 2), rat(4, 5)}) {
        auto cm = solve_stationary(make_comb(QFamily::table_then_constant({a, rat(1, 3)}, a), rat(1, 2)));
        for (int i = 0; i < 6; ++i) {
            Word w = random_word(rng, 1 + below(rng, 4));
            if (w.find('1') == Word::npos) w += '1';
            std::size_t r = 1 + below(rng, 3);
            auto g = occurrence_gf(*cm, w, r, 18);
            auto o = oracle_occurrence_pmf(*cm, w, r, 18);
            for (std::size_t n = 0; n <= 18; ++n) CHECK(occurrence_pmf(g, n) == o[n]);
        }
    }
}

TEST_CASE("bamboo formula against the oracle") {
    auto m = solve_stationary(bamboo_half());
    auto gf = occurrence_gf_bamboo(*m, "1100", 1, 20);
    auto oracle = oracle_occurrence_pmf(*m, "1100", 1, 20);
    for (std::size_t n = 0; n <= 20; ++n) CHECK(occurrence_pmf(gf, n) == oracle[n]);

    auto skew = solve_stationary(make_bamboo(QFamily::table_then_constant({rat(1, 4), rat(2, 3)}, rat(1, 2)),
                                             QFamily::table_then_constant({rat(3, 5)}, rat(1, 3)), rat(1, 2)));
    for (const Word& w : {Word("100101"), Word("0011"), Word("11010"), Word("0110"), Word("1001")})
        for (std::size_t r : {1u, 2u}) {
            auto g = occurrence_gf(*skew, w, r, 16);
            auto o = oracle_occurrence_pmf(*skew, w, r, 16);
            for (std::size_t n = 0; n <= 16; ++n) CHECK(occurrence_pmf(g, n) == o[n]);
        }
}

TEST_CASE("bamboo word shapes") {
    BambooShape a = classify_bamboo_word("100101");
    CHECK(a.doubled == '0');
    CHECK(a.head == "1");
    CHECK(a.conditioning == "00101");
    CHECK(a.ell == 1);
    CHECK(a.extra_letter);
    CHECK(a.kind == 2);

    BambooShape b = classify_bamboo_word("1001010");
    CHECK(b.ell == 2);
    CHECK_FALSE(b.extra_letter);
    CHECK(b.kind == 1);

    BambooShape c = classify_bamboo_word("0110");
    CHECK(c.doubled == '1');
    CHECK(c.ell == 0);
    CHECK(c.extra_letter);
    CHECK(c.kind == 1);

    BambooShape d = classify_bamboo_word("01101");
    CHECK(d.ell == 1);
    CHECK(d.kind == 2);

    for (const Word& w : {Word("0"), Word("1"), Word("0101")})
        CHECK(error_of([&] { classify_bamboo_word(w); }) == ErrorKind::UnclassifiableWord);
    for (const Word& w : {Word("10"), Word("1010"), Word("010")})
        CHECK(error_of([&] { classify_bamboo_word(w); }) == ErrorKind::InternalNodeWord);
}

TEST_CASE("internal-node words are rejected") {
    auto comb = solve_stationary(comb_const(rat(1, 2)));
    for (const Word& w : {Word("0"), Word("000")})
        CHECK(error_of([&] { occurrence_gf(*comb, w, 1, 10); }) == ErrorKind::InternalNodeWord);
    auto bam = solve_stationary(bamboo_half());
    CHECK(error_of([&] { occurrence_gf(*bam, "1010", 1, 10); }) == ErrorKind::InternalNodeWord);
    CHECK(error_of([&] { occurrence_gf(*comb, "1", 0, 10); }) == ErrorKind::BadParams);
}

TEST_CASE("series identities") {
    RandomStream rng(9);
    auto m = solve_stationary(make_comb(random_family(rng), random_q(rng)));
    for (const Word& w : {Word("1"), Word("0110"), Word("1011")}) {
        auto g1 = occurrence_gf(*m, w, 1, 20);
        // Phi^(1) = x^k pi(w) / ((1 - x) S_w)
        std::vector<Number> num(21, Number(0));
        for (std::size_t n = w.size(); n <= 20; ++n) num[n] = g1.pi_w;
        auto phi1 = mul(num, inv(g1.S));
        for (std::size_t n = 0; n <= 20; ++n) CHECK(g1.phi1[n] == phi1[n]);
        CHECK(g1.phi == g1.phi1);
        CHECK(series_mul(g1.S, series_inv(g1.S))[0] == Number(1));

        for (std::size_t r : {2u, 3u}) {
            auto g = occurrence_gf(*m, w, r, 20);
            std::vector<Number> factor = inv(g.S);
            for (auto& x : factor) x = -x;
            factor[0] += Number(1);
            std::vector<Number> expect = g.phi1;
            for (std::size_t i = 1; i < r; ++i) expect = mul(expect, factor);
            for (std::size_t n = 0; n <= 20; ++n) CHECK(g.phi[n] == expect[n]);
        }
    }
}

TEST_CASE("pmf is a sub-probability with a monotone CDF") {
    RandomStream rng(13);
    for (int i = 0; i < 10; ++i) {
        auto m = solve_stationary(make_comb(random_family(rng), random_q(rng)));
        Word w = random_word(rng, 1 + below(rng, 5)) + "1";
        auto gf = occurrence_gf(*m, w, 1 + below(rng, 2), 25);
        Number cdf(0);
        for (std::size_t n = 0; n <= 25; ++n) {
            Number p = occurrence_pmf(gf, n);
            CHECK(p >= Number(0));
            if (n < w.size()) CHECK(p.is_zero());
            cdf += p;
            CHECK(cdf <= Number(1));
        }
    }
}

TEST_CASE("i.i.d. correlation term is the autocorrelation polynomial") {
    Number a = rat(1, 3); // P(0)
    auto m = solve_stationary(comb_const(a));
    auto prob = [&](const Word& u) {
        Number p(1);
        for (char ch : u) p *= ch == '0' ? a : Number(1) - a;
        return p;
    };
    for (const Word& w : {Word("101"), Word("1101"), Word("11"), Word("10101"), Word("0011")}) {
        auto gf = occurrence_gf(*m, w, 1, 10);
        const std::size_t k = w.size();
        CHECK(gf.pi_w == prob(w));
        CHECK(gf.C[0] == Number(1));
        for (std::size_t j = 1; j < k; ++j) {
            bool overlap = w.substr(j) == w.substr(0, k - j);
            CHECK(gf.C[j] == (overlap ? prob(w.substr(k - j)) : Number(0)));
        }
    }
}

TEST_CASE("renewal at the letter 1") {
    RandomStream rng(200);
    auto m = solve_stationary(make_comb(random_family(rng), random_q(rng)));
    for (int i = 0; i < 200; ++i) {
        Word w = random_word(rng, below(rng, 6)), v = random_word(rng, below(rng, 6));
        CHECK(m->measure_of(w + "1" + v) * m->measure_of("1") == m->measure_of(w + "1") * m->measure_of("1" + v));
    }
}
