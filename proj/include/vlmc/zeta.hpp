#pragma once

namespace vlmc {

/// Hurwitz zeta: sum over k >= 0 of (k + a)^-s, for s > 1 and a > 0.
/// Euler-Maclaurin with 8 Bernoulli corrections; relative error below 1e-15.
/// Returns +infinity when s <= 1.
double hurwitz_zeta(double s, double a);

inline double riemann_zeta(double s) { return hurwitz_zeta(s, 1.0); }

/// Sum over k >= n of k^-s (n >= 1).
inline double zeta_tail(double s, double n) { return hurwitz_zeta(s, n); }

} // namespace vlmc
