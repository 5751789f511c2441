#pragma once

#include "vlmc/stationary.hpp"

#include <map>
#include <string>
#include <vector>

namespace vlmc {

/// Lambda(s) = sum over all finite words w, the empty word included, of pi(w)^s.
/// The true value lies in [value, value + tail_bound].
struct DirichletEvaluation {
    double s = 0.0;
    double value = 0.0;
    double tail_bound = 0.0;
    std::map<std::string, double> parts;
};

/// S(1)^-s [sum R_n^s + (sum c_n^s)^2 / (1 - sum (c_n - c_{n+1})^s)], sums cut at trunc
/// and closed with family tail bounds.
DirichletEvaluation comb_dirichlet(const CombSolution& sol, double s, std::size_t trunc);

/// Closed forms of the four comb examples, evaluated without the comb pipeline.
/// 1: memoryless, params {a}. 2: alternating, params {a, b}. 3: zeta tails, params {alpha > 2}.
/// 4: indifferent fixed point, params {1 < alpha < 2}.
double comb_example_closed_form(int example, const std::vector<double>& params, double s);

/// Generic bamboo only. Lambda_00 and Lambda_1 come out of a 2x2 system.
DirichletEvaluation bamboo_dirichlet(const BambooMeasure& m, double s, std::size_t trunc);

/// Sum of pi(w)^s over 1 <= |w| <= maxlen, walking the word tree and skipping null branches.
double brute_force_dirichlet(const StationaryMeasure& m, double s, std::size_t maxlen);
/// Exact version for integer s.
Number brute_force_dirichlet_exact(const StationaryMeasure& m, unsigned s, std::size_t maxlen);

} // namespace vlmc
