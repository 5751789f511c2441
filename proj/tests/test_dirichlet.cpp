#include "helpers.hpp"

#include "vlmc/dirichlet.hpp"
#include "vlmc/error.hpp"

#include <doctest.h>

#include <cmath>

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

// Riemann zeta by direct summation plus an Euler-Maclaurin tail
double zeta_oracle(double x) {
    const double N = 1000.0;
    double sum = 0.0;
    for (double k = 1.0; k < N; k += 1.0) sum += std::pow(k, -x);
    return sum + std::pow(N, 1.0 - x) / (x - 1.0) + 0.5 * std::pow(N, -x) + x * std::pow(N, -x - 1.0) / 12.0;
}

// For models whose next-letter law does not depend on the past, sum_{|w|=n+1} pi(w)^s is
// kappa times the level n sum, so the part of the series beyond maxlen is known exactly.
void sandwich(const StationaryMeasure& m, const DirichletEvaluation& ev, double kappa, std::size_t maxlen) {
    double b = brute_force_dirichlet(m, ev.s, maxlen), prev = brute_force_dirichlet(m, ev.s, maxlen - 1);
    double rest = (b - prev) * kappa / (1.0 - kappa);
    // +1 for the empty word
    CHECK(1.0 + b <= ev.value + ev.tail_bound + 1e-12);
    CHECK(ev.value <= 1.0 + b + rest + ev.tail_bound + 1e-12);
}

} // namespace

TEST_CASE("memoryless comb") {
    Number a = Number::approx(0.65);
    auto ev = comb_dirichlet(solve_comb(QFamily::constant(a), a), 2.0, 500);
    CHECK(ev.value == doctest::Approx(1.0 / 0.455).epsilon(1e-12));
    CHECK(comb_example_closed_form(1, {0.65}, 2.0) == doctest::Approx(1.0 / 0.455).epsilon(1e-12));
    CHECK(comb_example_closed_form(1, {0.5}, 2.0) == doctest::Approx(2.0).epsilon(1e-14));
    for (double s : {1.5, 2.0, 3.0}) {
        auto e = comb_dirichlet(solve_comb(QFamily::constant(a), a), s, 500);
        CHECK(std::fabs(e.value - comb_example_closed_form(1, {0.65}, s)) <= 1e-10);
    }
}

TEST_CASE("s = 1 is a pole") {
    RandomStream rng(6);
    for (int i = 0; i < 5; ++i) {
        CombSolution sol = solve_comb(random_family(rng), random_q(rng));
        CHECK(error_of([&] { comb_dirichlet(sol, 1.0, 100); }) == ErrorKind::PoleAt);
    }
}

TEST_CASE("alternating comb") {
    auto sol = solve_comb(QFamily::periodic({rat(3, 10), rat(7, 10)}), rat(1, 2));
    for (double s : {1.5, 2.0, 3.0})
        CHECK(std::fabs(comb_dirichlet(sol, s, 2000).value - comb_example_closed_form(2, {0.3, 0.7}, s)) <= 1e-10);
}

TEST_CASE("zeta comb") {
    double z2 = zeta_oracle(2.0), z3 = zeta_oracle(3.0);
    CHECK(z2 == doctest::Approx(M_PI * M_PI / 6.0).epsilon(1e-13));
    CombSolution sol = solve_comb(QFamily::zeta(3.0), rat(1, 2));
    REQUIRE(sol.S1);
    CHECK(sol.S1->to_double() == doctest::Approx(1.0 + z2 / z3).epsilon(1e-10));
    auto ev = comb_dirichlet(sol, 2.0, 2000);
    CHECK(ev.parts.at("S1") == doctest::Approx(1.0 + z2 / z3).epsilon(1e-10));
    CHECK(std::fabs(ev.value - comb_example_closed_form(3, {3.0}, 2.0)) <= 1e-8 + ev.tail_bound);
    CHECK(error_of([] { comb_example_closed_form(3, {2.0}, 2.0); }) == ErrorKind::BadParams);
}

TEST_CASE("indifferent comb") {
    CombSolution sol = solve_comb(QFamily::indifferent(1.5), rat(1, 2));
    for (std::size_t n = 0; n < 50; ++n)
        CHECK(sol.c.c(n).to_double() == doctest::Approx(std::pow(1.0 + double(n), -1.5)).epsilon(1e-12));
    auto ev = comb_dirichlet(sol, 3.0, 2000);
    CHECK(std::fabs(ev.value - comb_example_closed_form(4, {1.5}, 3.0)) <= 1e-8 + ev.tail_bound);
    // sum R_n^s needs (alpha - 1) s > 1
    CHECK(error_of([&] { comb_dirichlet(sol, 2.0, 2000); }) == ErrorKind::DivergentAt);
    CHECK(error_of([] { comb_example_closed_form(4, {1.5}, 2.0); }) == ErrorKind::DivergentAt);
    CHECK(error_of([] { comb_example_closed_form(4, {2.5}, 3.0); }) == ErrorKind::BadParams);
    CHECK(error_of([] { comb_example_closed_form(5, {0.5}, 3.0); }) == ErrorKind::BadParams);
}

TEST_CASE("comb sandwich against the brute-force partial sums") {
    auto m = solve_stationary(comb_const(rat(1, 2)));
    const CombSolution& sol = dynamic_cast<const CombMeasure&>(*m).solution();
    auto ev = comb_dirichlet(sol, 2.0, 1000);
    CHECK(ev.value == doctest::Approx(2.0).epsilon(1e-14));
    for (std::size_t L : {8u, 12u, 16u}) {
        CHECK(brute_force_dirichlet(*m, 2.0, L) == doctest::Approx(1.0 - std::ldexp(1.0, -int(L))).epsilon(1e-14));
        sandwich(*m, ev, 0.5, L);
    }
    Number a = Number::approx(0.3);
    auto m3 = solve_stationary(make_comb(QFamily::constant(a), a, NumericMode::Float));
    auto ev3 = comb_dirichlet(dynamic_cast<const CombMeasure&>(*m3).solution(), 1.5, 1000);
    for (std::size_t L : {8u, 12u, 16u}) sandwich(*m3, ev3, std::pow(0.3, 1.5) + std::pow(0.7, 1.5), L);
}

TEST_CASE("tail bound shrinks with the truncation") {
    CombSolution sol = solve_comb(QFamily::table_then_geometric({rat(1, 2), rat(2, 3)}, rat(9, 10)), rat(1, 2));
    double prev = INFINITY;
    for (std::size_t N : {10u, 40u, 160u}) {
        auto ev = comb_dirichlet(sol, 2.0, N);
        CHECK(ev.tail_bound >= 0.0);
        CHECK(ev.tail_bound <= prev);
        prev = ev.tail_bound;
    }
}

TEST_CASE("Lambda_1 identity") {
    RandomStream rng(31);
    for (int i = 0; i < 10; ++i) {
        CombSolution sol = solve_comb(random_family(rng), random_q(rng));
        for (double s : {1.5, 2.0}) {
            auto ev = comb_dirichlet(sol, s, 500);
            const auto& p = ev.parts;
            CHECK(p.at("Lambda_1") * (1.0 - p.at("sum_delta")) ==
                  doctest::Approx(std::pow(p.at("S1"), -s) * p.at("sum_c")).epsilon(1e-12));
        }
    }
}

TEST_CASE("small brute-force cases") {
    auto m = solve_stationary(intro_tree());
    Number p0 = m->measure_of("0"), p1 = m->measure_of("1");
    CHECK(brute_force_dirichlet_exact(*m, 2, 1) == p0 * p0 + p1 * p1);
    CHECK(brute_force_dirichlet(*m, 2.5, 1) ==
          doctest::Approx(std::pow(p0.to_double(), 2.5) + std::pow(p1.to_double(), 2.5)).epsilon(1e-14));
    Number total(0);
    for (const Word& w : all_words(4))
        if (!w.empty()) total += m->measure_of(w) * m->measure_of(w);
    CHECK(brute_force_dirichlet_exact(*m, 2, 4) == total);

    auto dirac = solve_stationary(make_comb(QFamily::constant(Number(1)), Number(1)));
    for (std::size_t L : {1u, 5u, 12u}) {
        CHECK(brute_force_dirichlet(*dirac, 2.0, L) == double(L));
        CHECK(brute_force_dirichlet_exact(*dirac, 3, L) == Number(static_cast<long>(L)));
    }
    CHECK(error_of([] { comb_dirichlet(solve_comb(QFamily::constant(Number(1)), Number(1)), 2.0, 10); }) ==
          ErrorKind::Undefined);
}

TEST_CASE("bamboo pipeline") {
    auto m = solve_stationary(bamboo_half());
    const auto& bm = dynamic_cast<const BambooMeasure&>(*m);
    CHECK(m->measure_of("000") == m->measure_of("00") * rat(1, 2));
    auto ev = bamboo_dirichlet(bm, 2.0, 1000);
    CHECK(ev.value >= 1.0 + brute_force_dirichlet(*m, 2.0, 6));
    // every next letter has probability 1/2, so Lambda(2) = sum_n 2^n 4^-n = 2
    CHECK(ev.value == doctest::Approx(2.0).epsilon(1e-12));
    for (std::size_t L : {8u, 12u, 16u}) sandwich(*m, ev, 0.5, L);
    for (const char* k : {"Lambda_00", "Lambda_1", "A", "A_00", "A_1", "A_100", "B_00", "B_1", "C_00", "C_1"})
        CHECK(ev.parts.count(k) == 1);

    auto mix = solve_stationary(
        make_bamboo(QFamily::table_then_constant({Number(1)}, rat(1, 2)), QFamily::constant(Number(0)), Number(0)));
    CHECK(error_of([&] { bamboo_dirichlet(dynamic_cast<const BambooMeasure&>(*mix), 2.0, 100); }) ==
          ErrorKind::Undefined);
}

TEST_CASE("bamboo with unequal families stays above its partial sums") {
    auto m = solve_stationary(make_bamboo(QFamily::constant(rat(1, 3)), QFamily::constant(rat(3, 5)), rat(1, 2)));
    auto ev = bamboo_dirichlet(dynamic_cast<const BambooMeasure&>(*m), 2.0, 1000);
    for (std::size_t L : {4u, 8u, 12u}) CHECK(1.0 + brute_force_dirichlet(*m, 2.0, L) <= ev.value + ev.tail_bound);
}
