#pragma once

#include "vlmc/number.hpp"
#include "vlmc/qfamily.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace vlmc {

/// The products c_0 = 1, c_{n+1} = c_n * rho_n behind both infinite families,
/// with the tail knowledge needed to sum them.
///
/// Comb: rho_n = q_{0^n 1}(0). Bamboo: rho_n = q_1(0) * q_n(1) for the family q_n.
/// Values are memoized; an instance is not safe for concurrent use.
class CSequence {
public:
    enum class Tail {
        Periodic,    // rho eventually periodic: sums in closed form
        Bounded,     // rho_k <= r < 1 beyond some index: geometric tail bounds
        Zeta,        // c_n = zeta(n, alpha) / zeta(alpha)
        Indifferent, // c_n = (n + 1)^-alpha
    };

    static CSequence comb(const QFamily& f);
    static CSequence bamboo(const QFamily& f, const Number& q1_0);

    Tail tail() const { return tail_; }
    double alpha() const { return alpha_; }
    std::size_t preperiod() const { return m_; }
    std::size_t period() const { return p_; }

    Number rho(std::size_t n) const;
    Number c(std::size_t n) const;
    /// S_n = c_0 + ... + c_n, with S_{-1} = 0.
    Number partial(long n) const;

    /// Whether the full series converges; throws SeriesUndecided when no tail rule applies.
    bool converges() const;
    /// S = sum of all c_n; throws NoStationaryMeasure when divergent.
    Number total() const;
    /// R_n = sum over k >= n of c_k.
    Number rest(std::size_t n) const;
    /// An upper bound on rho_k for all k >= n.
    Number ratio_sup_from(std::size_t n) const;
    /// Product of rho over one period starting at the preperiod (Periodic tails).
    Number period_ratio() const;

private:
    QFamily fam_;
    bool bamboo_ = false;
    Number q1_0_{1};
    Tail tail_ = Tail::Periodic;
    std::size_t m_ = 0, p_ = 1;
    double alpha_ = 0.0;
    mutable std::vector<Number> c_{Number(1)};
    mutable std::vector<Number> s_;
    mutable std::optional<Number> total_;
    mutable std::optional<bool> converges_;
};

/// Sum over n >= N of (K * (n + shift)^-beta)^s, i.e. K^s * zeta(beta s, N + shift).
double power_law_tail(double K, double beta, double s, double N_plus_shift);

} // namespace vlmc
