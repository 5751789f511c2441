#include "helpers.hpp"

#include "vlmc/error.hpp"
#include "vlmc/stationary.hpp"

#include <doctest.h>

#include <cmath>
#include <map>

using namespace vlmc;
using namespace testing;

namespace {

// Independent oracle for finite trees: the chain on all histories of length h+1,
// iterated in doubles until the law stops moving. prob(w) = P(history ends with w).
struct OrderHChain {
    std::size_t h;
    std::vector<double> law;
    std::vector<Word> states;

    explicit OrderHChain(const ContextTree& t) : h(*t.height() + 1) {
        for (const Word& w : all_words(h))
            if (w.size() == h) states.push_back(w);
        std::map<Word, std::size_t> index;
        for (std::size_t i = 0; i < states.size(); ++i) index[states[i]] = i;
        law.assign(states.size(), 1.0 / static_cast<double>(states.size()));
        for (int it = 0; it < 20000; ++it) {
            std::vector<double> next(states.size(), 0.0);
            for (std::size_t i = 0; i < states.size(); ++i) {
                Word c = t.pref_context(states[i]);
                for (char a : {'0', '1'})
                    next[index[states[i].substr(1) + a]] += law[i] * t.q(c, a).to_double();
            }
            double diff = 0;
            for (std::size_t i = 0; i < states.size(); ++i) diff += std::fabs(next[i] - law[i]);
            law = std::move(next);
            if (diff < 1e-15) break;
        }
    }

    double prob(const Word& w) const {
        double p = 0;
        for (std::size_t i = 0; i < states.size(); ++i)
            if (is_suffix(w, states[i])) p += law[i];
        return p;
    }
};

ErrorKind error_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::Io;
}

} // namespace

TEST_CASE("comb: constant family") {
    CombSolution s = solve_comb(QFamily::constant(rat(1, 2)), rat(3, 10));
    CHECK(s.case_tag == "irreducible");
    REQUIRE(s.S1);
    CHECK(*s.S1 == Number(2));
    CHECK(s.pi1 == rat(1, 2));
    CHECK(s.pi1 * *s.S1 == Number(1));
    for (std::size_t n = 0; n < 10; ++n) {
        CHECK(s.c.c(n) == pow(rat(1, 2), static_cast<unsigned long>(n)));
        CHECK(s.c.rest(n) - s.c.rest(n + 1) == s.c.c(n));
    }
    CHECK(s.c.rest(0) == *s.S1);
}

TEST_CASE("comb: q_1(0) = 0 gives the trivial measure on 1^infinity") {
    CombSolution s = solve_comb(QFamily::table_then_constant({Number(0)}, rat(1, 2)), rat(1, 2));
    CHECK(*s.S1 == Number(1));
    CHECK(s.pi1 == Number(1));
    CHECK(s.trivial());
    auto m = solve_stationary(make_comb(QFamily::table_then_constant({Number(0)}, rat(1, 2)), rat(1, 2)));
    CHECK(m->is_dirac());
    CHECK(m->measure_of("11111") == Number(1));
    CHECK(m->measure_of("10").is_zero());
}

TEST_CASE("comb: reducible cases") {
    auto dirac = solve_stationary(make_comb(QFamily::constant(Number(1)), Number(1)));
    CHECK(dirac->case_tag() == "reducible-divergent");
    CHECK(dirac->is_dirac());
    CHECK(dirac->measure_of("0000") == Number(1));
    CHECK(dirac->measure_of("01").is_zero());

    CHECK(error_of([] { solve_comb(QFamily::constant(rat(1, 2)), Number(1)); }) == ErrorKind::MissingParameter);
    CHECK(error_of([] { solve_comb(QFamily::constant(rat(1, 2)), Number(1), rat(3, 2)); }) == ErrorKind::BadParams);
    CombSolution fam = solve_comb(QFamily::constant(rat(1, 2)), Number(1), rat(1, 4));
    CHECK(fam.case_tag == "reducible-family");
    CHECK(fam.pi1 == (Number(1) - rat(1, 4)) / Number(2));
    // divergent sum without q_{0^inf}(0) = 1: no stationary probability
    CHECK(error_of([] { solve_comb(QFamily::indifferent(0.5), rat(1, 2)); }) == ErrorKind::NoStationaryMeasure);
}

TEST_CASE("comb: cylinder formulas") {
    auto m = solve_stationary(comb_const(rat(1, 2)));
    for (unsigned n = 0; n <= 10; ++n) CHECK(m->measure_of("1" + Word(n, '0')) == pow(rat(1, 2), n + 1));
    CHECK(m->measure_of("") == Number(1));

    RandomStream rng(8);
    for (int i = 0; i < 10; ++i) {
        auto t = make_comb(random_family(rng), random_q(rng));
        auto cm = solve_stationary(t);
        const CombSolution& s = dynamic_cast<const CombMeasure&>(*cm).solution();
        // partition identity truncated at N
        for (std::size_t N : {0u, 3u, 9u}) {
            Number total(0);
            for (std::size_t k = 0; k <= N; ++k) total += cm->measure_of(reversed(Word(k, '0') + "1"));
            CHECK(total == Number(1) - s.pi1 * s.c.rest(N + 1));
        }
        // internal nodes
        for (std::size_t n = 0; n < 8; ++n) {
            Number sum(0);
            for (std::size_t k = 0; k < n; ++k) sum += s.c.c(k);
            CHECK(cm->measure_of(Word(n, '0')) == Number(1) - s.pi1 * sum);
        }
    }
}

TEST_CASE("bamboo: constant families") {
    BambooSolution s = solve_bamboo(QFamily::constant(rat(1, 2)), QFamily::constant(rat(1, 2)), rat(1, 2));
    CHECK(s.case_tag == "generic");
    CHECK(s.S1 == rat(4, 3));
    CHECK(*s.S00 == rat(4, 3));
    CHECK(s.determinant == rat(-2, 3));
    CHECK(s.pi1 == rat(1, 2));
    CHECK(s.pi00 == rat(1, 4));
    CHECK(s.S1 * s.pi1 + *s.S00 * s.pi00 == Number(1));
    CHECK((Number(1) + s.q1_0) * s.pi1 + s.pi00 == Number(1));
}

TEST_CASE("bamboo: q_1(0) = 1 and S(00) infinite gives the two-point mixture") {
    auto t = make_bamboo(QFamily::table_then_constant({Number(1)}, rat(1, 2)), QFamily::constant(Number(0)), Number(0));
    auto m = solve_stationary(t);
    CHECK(m->case_tag() == "dirac-mixture");
    CHECK(m->is_dirac());
    CHECK(m->measure_of("1") == rat(1, 2));
    CHECK(m->measure_of("10") == rat(1, 2));
    CHECK(m->measure_of("0101") == rat(1, 2));
    CHECK(m->measure_of("00").is_zero());
    CHECK(m->measure_of("11").is_zero());
    auto bad = make_bamboo(QFamily::table_then_constant({Number(1)}, rat(1, 2)), QFamily::constant(Number(0)), rat(1, 2));
    CHECK(error_of([&] { solve_stationary(bad); }) == ErrorKind::NoStationaryMeasure);
}

TEST_CASE("bamboo: one-parameter families") {
    auto fam1 = QFamily::table_then_constant({Number(1)}, rat(1, 2));
    CHECK(error_of([&] { solve_bamboo(fam1, QFamily::constant(rat(1, 2)), Number(0)); }) == ErrorKind::MissingParameter);
    CHECK(error_of([&] { solve_bamboo(fam1, QFamily::constant(rat(1, 2)), Number(0), rat(3, 4)); }) ==
          ErrorKind::BadParams);
    auto t = make_bamboo(fam1, QFamily::constant(rat(1, 2)), Number(0));
    auto m = solve_stationary(t, rat(1, 4));
    CHECK(m->case_tag() == "one-parameter");
    for (const Word& w : all_words(6)) CHECK(m->measure_of(w + '0') + m->measure_of(w + '1') == m->measure_of(w));

    // S(1) = 1 + q_1(0) and S(00) = 1: vanishing determinant
    auto d1 = QFamily::table_then_constant({rat(1, 2)}, Number(0));
    auto d00 = QFamily::table_then_constant({Number(1)}, rat(1, 2));
    BambooSolution s = solve_bamboo(d1, d00, rat(1, 2), rat(1, 5));
    CHECK(s.case_tag == "degenerate-determinant-family");
    CHECK(s.S1 == rat(3, 2));
    CHECK(*s.S00 == Number(1));
    CHECK(s.pi00 == rat(1, 5));
    CHECK((Number(1) + s.q1_0) * s.pi1 + s.pi00 == Number(1));
}

TEST_CASE("bamboo: S(1) bounds and internal node formula") {
    RandomStream rng(21);
    for (int i = 0; i < 30; ++i) {
        auto t = make_bamboo(random_family(rng), random_family(rng), random_q(rng));
        auto m = solve_stationary(t);
        const BambooSolution& s = dynamic_cast<const BambooMeasure&>(*m).solution();
        CHECK(s.S1 >= Number(1));
        CHECK(s.S1 <= Number(1) + s.q1_0);
        CHECK(*s.S00 >= Number(1));
        for (long n = 0; n <= 10; ++n) {
            Word w = "0" + periodic_prefix("10", static_cast<std::size_t>(2 * n));
            CHECK(m->measure_of(w) == Number(1) - s.pi1 * s.c1.partial(n) - s.pi00 * s.c00.partial(n - 1));
        }
    }
}

TEST_CASE("finite trees: two-state chain") {
    auto m = solve_stationary(markov_tree());
    // rows (0.4, 0.6) and (0.7, 0.3): pi(0) = 0.7 / (0.6 + 0.7)
    CHECK(m->measure_of("0") == rat(7, 13));
    CHECK(m->measure_of("1") == rat(6, 13));
    CHECK(m->measure_of("10") == rat(6, 13) * rat(7, 10));
}

TEST_CASE("finite trees: three-teeth comb") {
    Number a = rat(1, 2), b = rat(1, 3);
    auto t = make_finite({{"1", a}, {"01", a}, {"001", a}, {"000", b}});
    auto m = solve_stationary(t);
    // pi(0^3) + S_2 pi(1) = 1 and pi(0^3) q_{000}(1) = pi(1) c_3
    Number S2 = Number(1) + a + a * a, c3 = a * a * a;
    Number pi1 = (Number(1) - b) / ((Number(1) - b) * S2 + c3);
    CHECK(pi1 == rat(16, 31));
    CHECK(m->measure_of("1") == pi1);
    CHECK(m->measure_of("000") == Number(1) - S2 * pi1);
}

TEST_CASE("finite trees: four-flower bamboo is uniquely solvable") {
    Number q1 = rat(3, 10), q00 = rat(4, 10), q010 = rat(6, 10), q011 = rat(8, 10);
    Number det = (Number(1) - q00) * (Number(1) + q1) + q1 * q1 * q010 + q1 * (Number(1) - q1) * q011;
    CHECK_FALSE(det.is_zero());
    FiniteTreeSolution s = solve_finite_tree(fourflower());
    CHECK(s.null_dimension == 1);
    auto m = solve_stationary(fourflower());
    OrderHChain oracle(fourflower());
    for (const Word& w : all_words(4)) CHECK(m->measure_of(w).to_double() == doctest::Approx(oracle.prob(w)).epsilon(1e-12));
}

TEST_CASE("finite trees: agreement with the order-h chain") {
    RandomStream rng(99);
    for (int i = 0; i < 25; ++i) {
        ContextTree t = random_finite_tree(rng, 5);
        auto m = solve_stationary(t);
        OrderHChain oracle(t);
        for (const Word& w : all_words(*t.height() + 1))
            CHECK(m->measure_of(w).to_double() == doctest::Approx(oracle.prob(w)).epsilon(1e-10));
        // exact fixed point of the key chain
        const FiniteTreeSolution& s = dynamic_cast<const FiniteMeasure&>(*m).solution();
        std::vector<Number> image(s.keys.size(), Number(0));
        Number total(0);
        for (std::size_t k = 0; k < s.keys.size(); ++k) {
            total += s.stationary[k];
            CHECK(s.stationary[k] >= Number(0));
            for (int a = 0; a < 2; ++a) image[s.next[k][a]] += s.stationary[k] * s.prob[k][a];
        }
        CHECK(total == Number(1));
        for (std::size_t k = 0; k < s.keys.size(); ++k) CHECK(image[k] == s.stationary[k]);
    }
}

TEST_CASE("finite trees: float mode matches rational mode") {
    RandomStream rng(4);
    for (int i = 0; i < 10; ++i) {
        ContextTree exact = random_finite_tree(rng, 5);
        ContextTree approx = tree_from_json(tree_to_json(exact), NumericMode::Float);
        auto me = solve_stationary(exact), ma = solve_stationary(approx);
        for (const Word& w : all_words(4))
            CHECK(ma->measure_of(w).to_double() == doctest::Approx(me->measure_of(w).to_double()).epsilon(1e-12));
    }
}

TEST_CASE("finite trees: non-uniqueness and size limits") {
    auto two_traps = make_finite({{"0", Number(1)}, {"1", Number(0)}});
    CHECK(error_of([&] { solve_finite_tree(two_traps); }) == ErrorKind::NonUnique);
    FiniteTreeSolution raw = solve_finite_tree_raw(two_traps);
    CHECK(raw.null_dimension == 2);
    CHECK(raw.basis.size() == 2);

    std::map<Word, Number> deep;
    for (std::size_t k = 0; k < 21; ++k) deep[Word(k, '0') + "1"] = rat(1, 2);
    deep[Word(21, '0')] = rat(1, 2);
    CHECK(error_of([&] { solve_finite_tree(make_finite(deep)); }) == ErrorKind::HeightTooLarge);
}

TEST_CASE("truncated comb converges to the infinite comb") {
    QFamily f = QFamily::table_then_geometric({rat(1, 2), rat(2, 3)}, rat(9, 10));
    auto inf = solve_stationary(make_comb(f, rat(1, 2)));
    const CombSolution& s = dynamic_cast<const CombMeasure&>(*inf).solution();
    for (std::size_t d : {4u, 8u, 12u}) {
        std::map<Word, Number> q;
        for (std::size_t k = 0; k < d; ++k) q[Word(k, '0') + "1"] = f.q0(k);
        q[Word(d, '0')] = f.q0(d);
        auto fin = solve_stationary(make_finite(q));
        double bound = (s.pi1 * s.c.rest(d)).to_double();
        for (const Word& w : all_words(6))
            CHECK(std::fabs(fin->measure_of(w).to_double() - inf->measure_of(w).to_double()) <= bound + 1e-15);
    }
}

TEST_CASE("additivity and reversal identity on random models") {
    RandomStream rng(12);
    std::vector<ContextTree> trees{comb_const(rat(1, 2)), bamboo_half(), fourflower(), intro_tree()};
    for (int i = 0; i < 8; ++i) {
        trees.push_back(make_comb(random_family(rng), random_q(rng)));
        trees.push_back(make_bamboo(random_family(rng), random_family(rng), random_q(rng)));
        trees.push_back(random_finite_tree(rng, 6));
    }
    for (const auto& t : trees) {
        auto m = solve_stationary(t);
        for (const Word& w : all_words(7)) CHECK(m->measure_of(w + '0') + m->measure_of(w + '1') == m->measure_of(w));
        PalindromeReport rep = check_palindrome_identity(*m, 10);
        CHECK(rep.max_discrepancy.is_zero());
        CHECK(m->measure_of("1") == m->measure_of("1"));
    }
}

TEST_CASE("describe reports the case and the minimal-context masses") {
    auto m = solve_stationary(bamboo_half());
    auto j = m->describe();
    CHECK(j["case"] == "generic");
    CHECK(j["pi"]["1"] == "1/2");
    CHECK(j["pi"]["00"] == "1/4");
    CHECK(j["S1"] == "4/3");
}
