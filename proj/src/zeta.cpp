#include "vlmc/zeta.hpp"

#include <cmath>
#include <limits>

namespace vlmc {

double hurwitz_zeta(double s, double a) {
    if (!(s > 1.0)) return std::numeric_limits<double>::infinity();
    // B_{2j} / (2j)!
    static const double bern[] = {
        1.0 / 12.0,
        -1.0 / 720.0,
        1.0 / 30240.0,
        -1.0 / 1209600.0,
        1.0 / 47900160.0,
        -691.0 / 1307674368000.0,
        1.0 / 74724249600.0,
        -3617.0 / 10670622842880000.0,
    };
    int direct = a < 16.0 ? static_cast<int>(std::ceil(16.0 - a)) : 0;
    long double sum = 0.0L;
    for (int k = 0; k < direct; ++k) sum += std::pow(static_cast<long double>(k + a), -static_cast<long double>(s));
    long double x = static_cast<long double>(a) + direct;
    long double ls = s;
    sum += std::pow(x, 1.0L - ls) / (ls - 1.0L);
    sum += 0.5L * std::pow(x, -ls);
    // rising factorial s (s+1) ... (s+2j-2) times x^(-s-2j+1)
    long double rising = ls;
    long double xp = std::pow(x, -ls - 1.0L);
    for (int j = 0; j < 8; ++j) {
        sum += bern[j] * rising * xp;
        rising *= (ls + 2 * j + 1) * (ls + 2 * j + 2);
        xp /= x * x;
    }
    return static_cast<double>(sum);
}

} // namespace vlmc
