#include "vlmc/dirichlet.hpp"
#include "vlmc/error.hpp"
#include "vlmc/word_process.hpp"
#include "vlmc/zeta.hpp"

#include <cmath>
#include <functional>
#include <sstream>

namespace vlmc {

namespace {

std::string at(double s) {
    std::ostringstream os;
    os << "s = " << s;
    return os.str();
}

[[noreturn]] void divergent(double s, const std::string& why) {
    throw Error(ErrorKind::DivergentAt, at(s) + ": " + why);
}

double pw(double x, double s) { return x <= 0.0 ? 0.0 : std::pow(x, s); }

struct CombSums {
    double c = 0.0, R = 0.0, d = 0.0;
};

double comb_lambda(double S, double s, const CombSums& x) {
    return std::pow(S, -s) * (x.R + x.c * x.c / (1.0 - x.d));
}

// Sum over n >= N of f(n) for f(n) ~ C n^-beta, from the value at N.
double power_tail(double fN, double N, double beta) { return fN * (N / (beta - 1.0) + 0.5); }

} // namespace

DirichletEvaluation comb_dirichlet(const CombSolution& sol, double s, std::size_t trunc) {
    if (!(s > 0.0) || !std::isfinite(s)) divergent(s, "needs real s > 0");
    if (sol.case_tag == "reducible-divergent")
        throw Error(ErrorKind::Undefined, "Dirac measure on 0^inf: Lambda is never defined");
    if (!sol.a.is_zero()) divergent(s, "pi(0^n) >= a > 0 for every n");
    if (s == 1.0) throw Error(ErrorKind::PoleAt, at(s) + ": 1 - sum (c_n - c_{n+1}) vanishes");

    const CSequence& c = sol.c;
    const double S = sol.S1->to_double();
    const double alpha = c.alpha();
    std::size_t N = std::max<std::size_t>(trunc, 1);
    if (c.tail() == CSequence::Tail::Periodic) N = std::max(N, c.preperiod());

    auto delta = [&](std::size_t n) -> double {
        switch (c.tail()) {
        case CSequence::Tail::Zeta:
            return n == 0 ? 0.0 : std::pow(double(n), -alpha) / riemann_zeta(alpha);
        case CSequence::Tail::Indifferent: {
            double k = double(n) + 1.0;
            return std::pow(k, -alpha) * -std::expm1(alpha * std::log1p(-1.0 / (k + 1.0)));
        }
        default:
            return (c.c(n) * (Number(1) - c.rho(n))).to_double();
        }
    };

    std::size_t bounded_from = N;
    double r = 0.0;
    if (c.tail() == CSequence::Tail::Bounded) {
        for (;; ++bounded_from) {
            if (c.c(bounded_from).is_zero()) break;
            r = c.ratio_sup_from(bounded_from).to_double();
            if (r < 1.0) break;
            if (bounded_from > N + 4096) throw Error(ErrorKind::SeriesUndecided, "no geometric bound on the c_n tail");
        }
        N = bounded_from;
    }

    CombSums lo;
    for (std::size_t n = 0; n < N; ++n) {
        lo.c += pw(c.c(n).to_double(), s);
        lo.R += pw(c.rest(n).to_double(), s);
        lo.d += pw(delta(n), s);
    }
    CombSums hi = lo;
    const double Nd = double(N);
    switch (c.tail()) {
    case CSequence::Tail::Periodic: {
        // c, R and the differences all pick up the factor Q over each period
        double Qs = pw(c.period_ratio().to_double(), s);
        double bc = 0, bR = 0, bd = 0;
        for (std::size_t j = 0; j < c.period(); ++j) {
            bc += pw(c.c(N + j).to_double(), s);
            bR += pw(c.rest(N + j).to_double(), s);
            bd += pw(delta(N + j), s);
        }
        // Q = 1 only happens here when the blocks are already zero
        double geo = Qs < 1.0 ? 1.0 / (1.0 - Qs) : 0.0;
        lo.c += bc * geo;
        lo.R += bR * geo;
        lo.d += bd * geo;
        hi = lo;
        break;
    }
    case CSequence::Tail::Bounded: {
        double cN = c.c(N).to_double();
        double geo = 1.0 / (1.0 - std::pow(r, s));
        hi.c += pw(cN, s) * geo;
        hi.R += pw(cN / (1.0 - r), s) * geo;
        hi.d += pw(cN, s) * geo;
        break;
    }
    case CSequence::Tail::Zeta: {
        if (!((alpha - 1.0) * s > 1.0)) divergent(s, "sum c_n^s diverges");
        if (!((alpha - 2.0) * s > 1.0)) divergent(s, "sum R_n^s diverges");
        double z = riemann_zeta(alpha);
        double K = (1.0 / Nd + 1.0 / (alpha - 1.0)) / z;
        double K_lo = 1.0 / ((alpha - 1.0) * z);
        double K2 = (1.0 / Nd + 1.0 / (alpha - 2.0)) / z;
        lo.c += power_law_tail(K_lo, alpha - 1.0, s, Nd);
        hi.c += power_law_tail(K, alpha - 1.0, s, Nd);
        hi.R += power_law_tail(K2, alpha - 2.0, s, Nd);
        double dt = hurwitz_zeta(alpha * s, Nd) / std::pow(z, s);
        lo.d += dt;
        hi.d += dt;
        break;
    }
    case CSequence::Tail::Indifferent: {
        if (!((alpha - 1.0) * s > 1.0)) divergent(s, "sum R_n^s diverges");
        double ct = hurwitz_zeta(alpha * s, Nd + 1.0);
        lo.c += ct;
        hi.c += ct;
        lo.R += power_law_tail(1.0 / (alpha - 1.0), alpha - 1.0, s, Nd + 1.0);
        hi.R += power_law_tail(1.0 / (Nd + 1.0) + 1.0 / (alpha - 1.0), alpha - 1.0, s, Nd + 1.0);
        lo.d += power_law_tail(alpha, alpha + 1.0, s, Nd + 2.0);
        hi.d += power_law_tail(alpha, alpha + 1.0, s, Nd + 1.0);
        break;
    }
    }

    double den_lo = 1.0 - lo.d, den_hi = 1.0 - hi.d;
    if (std::fabs(den_lo) <= 1e-12 || std::fabs(den_hi) <= 1e-12)
        throw Error(ErrorKind::PoleAt, at(s) + ": 1 - sum (c_n - c_{n+1})^s vanishes");
    if (den_lo < 0.0) divergent(s, "1 - sum (c_n - c_{n+1})^s < 0");
    if (den_hi < 0.0) divergent(s, "pole not excluded by the tail bounds");

    DirichletEvaluation ev;
    ev.s = s;
    ev.value = comb_lambda(S, s, lo);
    ev.tail_bound = comb_lambda(S, s, hi) - ev.value;
    ev.parts = {{"S1", S},
                {"sum_c", lo.c},
                {"sum_R", lo.R},
                {"sum_delta", lo.d},
                {"Lambda_1", std::pow(S, -s) * lo.c / den_lo}};
    return ev;
}

double comb_example_closed_form(int example, const std::vector<double>& p, double s) {
    auto need = [&](std::size_t n) {
        if (p.size() != n) throw Error(ErrorKind::BadParams, "example " + std::to_string(example) + " takes " +
                                                                 std::to_string(n) + " parameter(s)");
    };
    auto open01 = [](double x) {
        if (!(x > 0.0 && x < 1.0)) throw Error(ErrorKind::BadParams, "parameter must lie in (0, 1)");
    };
    switch (example) {
    case 1: {
        need(1);
        double a = p[0];
        open01(a);
        double den = 1.0 - (std::pow(a, s) + std::pow(1.0 - a, s));
        if (!(den > 0.0)) divergent(s, "1 - a^s - (1-a)^s <= 0");
        return 1.0 / den;
    }
    case 2: {
        need(2);
        double a = p[0], b = p[1];
        open01(a);
        open01(b);
        double ab = std::pow(a * b, s);
        double d1 = 1.0 - ab;
        double d2 = 1.0 - ab - std::pow(1.0 - a, s) - std::pow(a, s) * std::pow(1.0 - b, s);
        if (!(d1 > 0.0 && d2 > 0.0)) divergent(s, "denominator <= 0");
        double inner = 1.0 + std::pow((a + a * b) / (1.0 + a), s) +
                       std::pow((1.0 - a * b) / (1.0 + a), s) * std::pow(1.0 + std::pow(a, s), 2) / d2;
        return inner / d1;
    }
    case 3: {
        need(1);
        double al = p[0];
        if (!(al > 2.0)) throw Error(ErrorKind::BadParams, "example 3 needs alpha > 2");
        if (!((al - 2.0) * s > 1.0)) divergent(s, "sum R_n^s diverges");
        const double z = riemann_zeta(al), z1 = riemann_zeta(al - 1.0);
        const double S = 1.0 + z1 / z;
        auto zn = [](double n, double a) { return hurwitz_zeta(a, n) / riemann_zeta(a); };
        auto cn = [&](double n) { return zn(n, al); };
        auto Rn = [&](double n) { return z1 / z * zn(n, al - 1.0) - (n - 1.0) * zn(n, al); };
        const std::size_t N = 20000;
        double sc = 1.0, sR = std::pow(S, s);
        for (std::size_t n = 1; n < N; ++n) {
            sc += std::pow(cn(double(n)), s);
            sR += std::pow(Rn(double(n)), s);
        }
        sc += power_tail(std::pow(cn(double(N)), s), double(N), (al - 1.0) * s);
        sR += power_tail(std::pow(Rn(double(N)), s), double(N), (al - 2.0) * s);
        double den = 1.0 - riemann_zeta(al * s) / std::pow(z, s);
        if (!(den > 0.0)) divergent(s, "1 - zeta(alpha s) / zeta(alpha)^s <= 0");
        return std::pow(S, -s) * (sR + sc * sc / den);
    }
    case 4: {
        need(1);
        double al = p[0];
        if (!(al > 1.0 && al < 2.0)) throw Error(ErrorKind::BadParams, "example 4 needs 1 < alpha < 2");
        if (!((al - 1.0) * s > 1.0)) divergent(s, "sum zeta(n, alpha)^s diverges");
        const double z = riemann_zeta(al);
        auto zn = [&](double n) { return hurwitz_zeta(al, n) / z; };
        // the bracket carries the power s as well: it is (c_{n-1} - c_n) n^alpha
        auto dn = [&](double n) {
            return std::pow(n, -al * s) * std::pow(-std::expm1(al * std::log1p(-1.0 / (n + 1.0))), s);
        };
        const std::size_t N = 100000;
        double sz = 0.0, sd = 0.0;
        for (std::size_t n = 1; n < N; ++n) {
            sz += std::pow(zn(double(n)), s);
            sd += dn(double(n));
        }
        sz += power_tail(std::pow(zn(double(N)), s), double(N), (al - 1.0) * s);
        sd += power_tail(dn(double(N)), double(N), (al + 1.0) * s);
        double den = 1.0 - sd;
        if (!(den > 0.0)) divergent(s, "denominator <= 0");
        double zs = riemann_zeta(al * s);
        return sz + zs * zs / std::pow(z, s) / den;
    }
    default:
        throw Error(ErrorKind::BadParams, "examples are numbered 1 to 4");
    }
}

// Bamboo pipeline. Splitting words at their last (10)-run gives
//   Lambda = A + Lambda_00 sum c_n(00)^s + Lambda_1 sum c_n(1)^s,
// with Lambda_00 = sum_w pi(w00)^s and Lambda_1 = sum_w pi(w1)^s over all w.
// Peeling one more context off w00 and w1 (renewal at 00 and at 1):
//   pi(v00 (10)^n 00) = pi(v00) c_n(00) q_{(01)^n 00}(0) q_00(0)      n >= 0  -> B00
//   pi(v1 (10)^n 00)  = pi(v1) c_n(1) q_{(01)^n 1}(0) q_00(0)         n >= 1  -> B1
//   pi(v00 (10)^m 0)  = pi(v00) c_m(00) q_{(01)^m 00}(0)              m >= 1  -> C00
//   pi(v1 (10)^m 0)   = pi(v1) c_m(1) q_{(01)^m 1}(0)                 m >= 1  -> C1
//   pi(v00 (10)^n 1)  = pi(v00) c_n(00) q_{(01)^n 00}(1)              n >= 0  -> D00
//   pi(v1 (10)^n 1)   = pi(v1) c_n(1) q_{(01)^n 1}(1)                 n >= 0  -> D1
// The C rows come from Lambda_100 = sum_w pi(w100)^s, since w100 = v (10)^m 0.
// The words without an earlier double give the free terms, with P(A) = pi(A a),
// a the last letter of the alternating word A:
//   A    = sum pi((10)^n)^s + sum pi(0(10)^n)^s                          (n >= 0)
//   A00  = pi(00)^s + sum_{n>=1} (P((10)^n) q_00(0))^s + sum_{n>=0} (P(0(10)^n) q_00(0))^s
//   A100 = sum_{n>=1} P((10)^n)^s + sum_{n>=1} P(0(10)^n)^s
//   A1   = sum pi((10)^n 1)^s + sum pi((01)^{n+1})^s                     (n >= 0)
// so that
//   (1 - B00 - C00) Lambda_00 - (B1 + C1) Lambda_1 = A00 + A100
//   -D00 Lambda_00 + (1 - D1) Lambda_1 = A1.
// Tails: rho_k <= r = q_1(0) (1 - inf q_k(0)) < 1 gives c_n <= c_N r^(n-N), and every
// free term of index n is at most pi((10)^n) <= (pi(1) c_N(1) + pi(00) c_N(00)) r^(n-N) / (1 - r).
DirichletEvaluation bamboo_dirichlet(const BambooMeasure& m, double s, std::size_t trunc) {
    const BambooSolution& sol = m.solution();
    if (sol.case_tag != "generic")
        throw Error(ErrorKind::Undefined, "bamboo Dirichlet series needs the generic case, got " + sol.case_tag);
    if (!(s > 0.0) || !std::isfinite(s)) divergent(s, "needs real s > 0");
    const ContextTree& t = m.tree();
    const QFamily& f1 = t.bamboo_family_1();
    const QFamily& f00 = t.bamboo_family_00();
    std::size_t N = std::max<std::size_t>(trunc, 2);
    const double q00_0 = t.q("00", '0').to_double();

    auto pi = [&](const Word& w) { return m.measure_of(w).to_double(); };
    auto P = [&](const Word& A) { return m.double_prob(A).to_double(); };
    auto alt0 = [](std::size_t n) { return periodic_prefix("10", 2 * n); };
    auto alt1 = [](std::size_t n) { return "0" + periodic_prefix("10", 2 * n); };

    struct Sums {
        double A = 0, A00 = 0, A100 = 0, A1 = 0, B00 = 0, B1 = 0, C00 = 0, C1 = 0, D00 = 0, D1 = 0, S00 = 0, S1 = 0;
    } lo;
    lo.A00 = pw(sol.pi00.to_double(), s);
    for (std::size_t n = 0; n < N; ++n) {
        double c1 = sol.c1.c(n).to_double(), c00 = sol.c00.c(n).to_double();
        double g1 = f1.q0(n).to_double(), g00 = f00.q0(n).to_double();
        lo.A += pw(pi(alt0(n)), s) + pw(pi(alt1(n)), s);
        if (n >= 1) lo.A00 += pw(P(alt0(n)) * q00_0, s);
        lo.A00 += pw(P(alt1(n)) * q00_0, s);
        if (n >= 1) lo.A100 += pw(P(alt0(n)), s) + pw(P(alt1(n)), s);
        lo.A1 += pw(pi(alt0(n) + "1"), s) + pw(pi(periodic_prefix("01", 2 * n + 2)), s);
        lo.B00 += pw(c00 * g00 * q00_0, s);
        if (n >= 1) lo.B1 += pw(c1 * g1 * q00_0, s);
        if (n >= 1) lo.C00 += pw(c00 * g00, s);
        if (n >= 1) lo.C1 += pw(c1 * g1, s);
        lo.D00 += pw(c00 * f00.q1(n).to_double(), s);
        lo.D1 += pw(c1 * f1.q1(n).to_double(), s);
        lo.S00 += pw(c00, s);
        lo.S1 += pw(c1, s);
        // past this point every term is below double resolution; the tail bound
        // below is taken at the actual cutoff
        if (n + 1 >= 8 && n + 1 < N &&
            std::max(sol.c1.c(n + 1).to_double(), sol.c00.c(n + 1).to_double()) < 1e-20 &&
            std::max(sol.c1.ratio_sup_from(n + 1).to_double(), sol.c00.ratio_sup_from(n + 1).to_double()) < 1.0) {
            N = n + 1;
            break;
        }
    }

    double r = std::max(sol.c1.ratio_sup_from(N).to_double(), sol.c00.ratio_sup_from(N).to_double());
    if (!(r < 1.0)) divergent(s, "no geometric bound on c_n(1), c_n(00)");
    double geo = 1.0 / (1.0 - std::pow(r, s));
    double cN = std::max(sol.c1.c(N).to_double(), sol.c00.c(N).to_double());
    double tc = pw(cN, s) * geo;
    double E = (sol.pi1.to_double() * sol.c1.c(N).to_double() + sol.pi00.to_double() * sol.c00.c(N).to_double()) /
               (1.0 - r);
    double te = 2.0 * pw(E, s) * geo;
    Sums hi = lo;
    hi.A += te;
    hi.A00 += te;
    hi.A100 += te;
    hi.A1 += te;
    for (double* x : {&hi.B00, &hi.B1, &hi.C00, &hi.C1, &hi.D00, &hi.D1, &hi.S00, &hi.S1}) *x += tc;

    struct Solved {
        double L00, L1, value;
    };
    auto solve = [&](const Sums& x) {
        double m00 = x.B00 + x.C00, m01 = x.B1 + x.C1, m10 = x.D00, m11 = x.D1;
        double tr = m00 + m11, dm = m00 * m11 - m01 * m10;
        double rad = 0.5 * (tr + std::sqrt(std::max(0.0, tr * tr - 4.0 * dm)));
        if (rad >= 1.0) divergent(s, "spectral radius of the Lambda_00 / Lambda_1 system >= 1");
        double det = (1.0 - m00) * (1.0 - m11) - m01 * m10;
        if (std::fabs(det) <= 1e-12) throw Error(ErrorKind::SingularSystem, at(s) + ": 2x2 system is singular");
        double b0 = x.A00 + x.A100, b1 = x.A1;
        double L00 = (b0 * (1.0 - m11) + m01 * b1) / det;
        double L1 = ((1.0 - m00) * b1 + m10 * b0) / det;
        return Solved{L00, L1, x.A + L00 * x.S00 + L1 * x.S1};
    };
    Solved a = solve(lo), b = solve(hi);

    DirichletEvaluation ev;
    ev.s = s;
    ev.value = a.value;
    ev.tail_bound = b.value - a.value;
    ev.parts = {{"Lambda_00", a.L00}, {"Lambda_1", a.L1}, {"A", lo.A},     {"A_00", lo.A00},
                {"A_1", lo.A1},       {"A_100", lo.A100}, {"B_00", lo.B00}, {"B_1", lo.B1},
                {"C_00", lo.C00},     {"C_1", lo.C1},     {"D_00", lo.D00}, {"D_1", lo.D1}};
    return ev;
}

double brute_force_dirichlet(const StationaryMeasure& m, double s, std::size_t maxlen) {
    WordProcess wp(m);
    double total = 0.0;
    std::function<void(const Word&, double, std::size_t)> walk = [&](const Word& key, double p, std::size_t len) {
        const auto& mv = wp.move(key);
        for (int a = 0; a < 2; ++a) {
            double pa = p * mv.p[a].to_double();
            if (pa == 0.0) continue;
            total += std::pow(pa, s);
            if (len + 1 < maxlen) walk(mv.next[a], pa, len + 1);
        }
    };
    if (maxlen > 0) walk("", 1.0, 0);
    return total;
}

Number brute_force_dirichlet_exact(const StationaryMeasure& m, unsigned s, std::size_t maxlen) {
    WordProcess wp(m);
    Number total(0);
    std::function<void(const Word&, const Number&, std::size_t)> walk = [&](const Word& key, const Number& p,
                                                                            std::size_t len) {
        const auto& mv = wp.move(key);
        for (int a = 0; a < 2; ++a) {
            Number pa = p * mv.p[a];
            if (pa.is_zero()) continue;
            total += pow(pa, s);
            if (len + 1 < maxlen) walk(mv.next[a], pa, len + 1);
        }
    };
    if (maxlen > 0) walk("", Number(1), 0);
    return total;
}

} // namespace vlmc
