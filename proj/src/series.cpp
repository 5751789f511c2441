#include "vlmc/series.hpp"
#include "vlmc/error.hpp"
#include "vlmc/zeta.hpp"

#include <cmath>
#include <limits>

namespace vlmc {

namespace {

bool integral(double a) { return std::floor(a) == a && std::fabs(a) < 1e6; }

} // namespace

CSequence CSequence::comb(const QFamily& f) {
    CSequence s;
    s.fam_ = f;
    switch (f.kind()) {
    case QFamily::Kind::Zeta:
        s.tail_ = Tail::Zeta;
        s.alpha_ = f.alpha();
        break;
    case QFamily::Kind::Indifferent:
        s.tail_ = Tail::Indifferent;
        s.alpha_ = f.alpha();
        break;
    default:
        if (f.eventually_periodic()) {
            s.tail_ = Tail::Periodic;
            s.m_ = f.preperiod();
            s.p_ = f.period();
        } else {
            s.tail_ = Tail::Bounded;
        }
    }
    return s;
}

CSequence CSequence::bamboo(const QFamily& f, const Number& q1_0) {
    CSequence s;
    s.fam_ = f;
    s.bamboo_ = true;
    s.q1_0_ = q1_0;
    if (f.eventually_periodic()) {
        s.tail_ = Tail::Periodic;
        s.m_ = f.preperiod();
        s.p_ = f.period();
    } else {
        s.tail_ = Tail::Bounded;
    }
    return s;
}

Number CSequence::rho(std::size_t n) const {
    if (bamboo_) return q1_0_ * fam_.q1(n);
    return fam_.q0(n);
}

Number CSequence::c(std::size_t n) const {
    if (tail_ == Tail::Zeta) {
        if (n == 0) return Number(1);
        double nd = static_cast<double>(n);
        return Number::approx(zeta_tail(alpha_, nd) / riemann_zeta(alpha_));
    }
    if (tail_ == Tail::Indifferent) {
        if (integral(alpha_)) return pow(Number::ratio(1, static_cast<long>(n) + 1), static_cast<unsigned long>(alpha_));
        return Number::approx(std::pow(static_cast<double>(n) + 1.0, -alpha_));
    }
    while (c_.size() <= n) c_.push_back(c_.back() * rho(c_.size() - 1));
    return c_[n];
}

Number CSequence::partial(long n) const {
    if (n < 0) return Number(0);
    std::size_t un = static_cast<std::size_t>(n);
    while (s_.size() <= un) {
        Number prev = s_.empty() ? Number(0) : s_.back();
        s_.push_back(prev + c(s_.size()));
    }
    return s_[un];
}

Number CSequence::period_ratio() const {
    Number q(1);
    for (std::size_t j = 0; j < p_; ++j) q *= rho(m_ + j);
    return q;
}

Number CSequence::ratio_sup_from(std::size_t n) const {
    switch (tail_) {
    case Tail::Zeta:
    case Tail::Indifferent:
        return Number(1);
    default:
        break;
    }
    if (bamboo_) return q1_0_ * (Number(1) - fam_.inf_from(n));
    return fam_.sup_from(n);
}

bool CSequence::converges() const {
    if (converges_) return *converges_;
    bool ok = false;
    switch (tail_) {
    case Tail::Zeta:
        ok = alpha_ > 2.0;
        break;
    case Tail::Indifferent:
        ok = alpha_ > 1.0;
        break;
    case Tail::Periodic: {
        Number q = period_ratio();
        ok = q < Number(1) || c(m_).is_zero();
        break;
    }
    case Tail::Bounded: {
        ok = false;
        for (std::size_t n = 0; n < 4096; ++n) {
            if (ratio_sup_from(n) < Number(1) || c(n).is_zero()) {
                ok = true;
                break;
            }
        }
        if (!ok) throw Error(ErrorKind::SeriesUndecided, "no geometric bound found for the tail of sum c_n");
        break;
    }
    }
    converges_ = ok;
    return ok;
}

Number CSequence::total() const {
    if (total_) return *total_;
    if (!converges()) throw Error(ErrorKind::NoStationaryMeasure, "the series sum c_n diverges");
    switch (tail_) {
    case Tail::Zeta:
        total_ = Number::approx(1.0 + riemann_zeta(alpha_ - 1.0) / riemann_zeta(alpha_));
        break;
    case Tail::Indifferent:
        total_ = Number::approx(riemann_zeta(alpha_));
        break;
    case Tail::Periodic:
        total_ = partial(static_cast<long>(m_) - 1) + rest(m_);
        break;
    case Tail::Bounded:
        total_ = rest(0);
        break;
    }
    return *total_;
}

Number CSequence::rest(std::size_t n) const {
    switch (tail_) {
    case Tail::Zeta: {
        if (n == 0) return total();
        double nd = static_cast<double>(n);
        double z = riemann_zeta(alpha_);
        if (!(alpha_ > 2.0)) throw Error(ErrorKind::NoStationaryMeasure, "the series sum c_n diverges");
        return Number::approx((zeta_tail(alpha_ - 1.0, nd) - (nd - 1.0) * zeta_tail(alpha_, nd)) / z);
    }
    case Tail::Indifferent:
        if (!(alpha_ > 1.0)) throw Error(ErrorKind::NoStationaryMeasure, "the series sum c_n diverges");
        return Number::approx(hurwitz_zeta(alpha_, static_cast<double>(n) + 1.0));
    case Tail::Periodic: {
        if (n < m_) return partial(static_cast<long>(m_) - 1) - partial(static_cast<long>(n) - 1) + rest(m_);
        if (c(n).is_zero()) return Number(0);
        if (!converges()) throw Error(ErrorKind::NoStationaryMeasure, "the series sum c_n diverges");
        // from n on, rho is periodic again, so the tail is a geometric series of blocks
        Number block(0), q(1);
        for (std::size_t j = 0; j < p_; ++j) {
            block += c(n + j);
            q *= rho(n + j);
        }
        return block / (Number(1) - q);
    }
    case Tail::Bounded: {
        if (!converges()) throw Error(ErrorKind::NoStationaryMeasure, "the series sum c_n diverges");
        double sum = 0.0;
        for (std::size_t k = n;; ++k) {
            double ck = c(k).to_double();
            sum += ck;
            if (ck == 0.0) break;
            double r = ratio_sup_from(k + 1).to_double();
            if (r < 1.0 && ck * r / (1.0 - r) <= 1e-18 * sum) break;
            if (k > n + 200000) throw Error(ErrorKind::SeriesUndecided, "tail of sum c_n converges too slowly");
        }
        return Number::approx(sum);
    }
    }
    return Number(0);
}

double power_law_tail(double K, double beta, double s, double N_plus_shift) {
    if (K <= 0.0) return 0.0;
    return std::pow(K, s) * hurwitz_zeta(beta * s, N_plus_shift);
}

} // namespace vlmc
