#pragma once

#include <gmpxx.h>

#include <compare>
#include <ostream>
#include <string>

namespace vlmc {

enum class NumericMode { Rational, Float };

NumericMode parse_mode(const std::string& s);
const char* mode_name(NumericMode m);

/// A probability-like quantity that is either an exact rational or a double.
/// Arithmetic stays exact while both operands are exact and degrades to double otherwise.
class Number {
public:
    Number() = default;
    Number(int v) : q_(v) {}
    Number(long v) : q_(v) {}
    explicit Number(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    static Number approx(double d);
    static Number ratio(long num, long den);
    /// Parses "0.25", "1e-3", "3/8" or "-2" exactly; in float mode the result is rounded.
    static Number parse(const std::string& text, NumericMode mode = NumericMode::Rational);

    bool exact() const { return exact_; }
    const mpq_class& rational() const;
    double to_double() const;
    std::string str() const;

    bool is_zero() const { return exact_ ? sgn(q_) == 0 : d_ == 0.0; }
    int sign() const;

    Number& operator+=(const Number& o);
    Number& operator-=(const Number& o);
    Number& operator*=(const Number& o);
    Number& operator/=(const Number& o);
    Number operator-() const;

    friend Number operator+(Number a, const Number& b) { return a += b; }
    friend Number operator-(Number a, const Number& b) { return a -= b; }
    friend Number operator*(Number a, const Number& b) { return a *= b; }
    friend Number operator/(Number a, const Number& b) { return a /= b; }

    friend bool operator==(const Number& a, const Number& b);
    friend std::partial_ordering operator<=>(const Number& a, const Number& b);

private:
    bool exact_ = true;
    mpq_class q_{0};
    double d_ = 0.0;
};

Number pow(const Number& base, unsigned long e);
Number abs(const Number& x);
Number min(const Number& a, const Number& b);
Number max(const Number& a, const Number& b);

/// Shortest decimal text that round-trips the double.
std::string shortest_decimal(double d);

std::ostream& operator<<(std::ostream& os, const Number& x);

} // namespace vlmc
