#include "vlmc/number.hpp"
#include "vlmc/error.hpp"

#include <charconv>
#include <cmath>
#include <limits>

namespace vlmc {

NumericMode parse_mode(const std::string& s) {
    if (s == "rational") return NumericMode::Rational;
    if (s == "float") return NumericMode::Float;
    throw Error(ErrorKind::BadParams, "numeric mode must be 'rational' or 'float', got '" + s + "'");
}

const char* mode_name(NumericMode m) { return m == NumericMode::Rational ? "rational" : "float"; }

Number Number::approx(double d) {
    Number n;
    n.exact_ = false;
    n.d_ = d;
    return n;
}

Number Number::ratio(long num, long den) {
    if (den == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator");
    return Number(mpq_class(num, den));
}

namespace {

mpz_class pow10(unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

// Exact value of a decimal literal such as "-12.5e-3".
mpq_class parse_decimal(const std::string& text) {
    std::size_t i = 0;
    bool neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) neg = text[i++] == '-';
    std::string digits;
    long frac_digits = 0;
    bool seen_dot = false, any = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c >= '0' && c <= '9') {
            digits.push_back(c);
            any = true;
            if (seen_dot) ++frac_digits;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else {
            break;
        }
    }
    if (!any) throw Error(ErrorKind::Parse, "not a number: '" + text + "'");
    long exponent = 0;
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        const char* first = text.data() + i;
        const char* last = text.data() + text.size();
        if (first < last && *first == '+') ++first;
        auto [p, ec] = std::from_chars(first, last, exponent);
        if (ec != std::errc() || p != last) throw Error(ErrorKind::Parse, "bad exponent in '" + text + "'");
        i = text.size();
    }
    if (i != text.size()) throw Error(ErrorKind::Parse, "trailing characters in '" + text + "'");
    mpq_class q{mpz_class(digits, 10)};
    long e = exponent - frac_digits;
    if (e > 0) q *= pow10(static_cast<unsigned long>(e));
    if (e < 0) q /= pow10(static_cast<unsigned long>(-e));
    q.canonicalize();
    return neg ? mpq_class(-q) : q;
}

} // namespace

Number Number::parse(const std::string& text, NumericMode mode) {
    mpq_class q;
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        mpq_class num = parse_decimal(text.substr(0, slash));
        mpq_class den = parse_decimal(text.substr(slash + 1));
        if (sgn(den) == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + text + "'");
        q = num / den;
    } else {
        q = parse_decimal(text);
    }
    Number n(q);
    if (mode == NumericMode::Float) return approx(n.to_double());
    return n;
}

const mpq_class& Number::rational() const {
    if (!exact_) throw Error(ErrorKind::Undefined, "value " + str() + " is not exact");
    return q_;
}

double Number::to_double() const { return exact_ ? q_.get_d() : d_; }

int Number::sign() const {
    if (exact_) return sgn(q_);
    return (d_ > 0) - (d_ < 0);
}

std::string shortest_decimal(double d) {
    if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
    if (std::isnan(d)) return "nan";
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, d);
    return std::string(buf, p);
}

std::string Number::str() const {
    if (exact_) return q_.get_str();
    return shortest_decimal(d_);
}

Number& Number::operator+=(const Number& o) {
    if (exact_ && o.exact_) q_ += o.q_;
    else *this = approx(to_double() + o.to_double());
    return *this;
}

Number& Number::operator-=(const Number& o) {
    if (exact_ && o.exact_) q_ -= o.q_;
    else *this = approx(to_double() - o.to_double());
    return *this;
}

Number& Number::operator*=(const Number& o) {
    if (exact_ && o.exact_) q_ *= o.q_;
    else *this = approx(to_double() * o.to_double());
    return *this;
}

Number& Number::operator/=(const Number& o) {
    if (o.is_zero()) throw Error(ErrorKind::DivisionByZero, "division of " + str() + " by zero");
    if (exact_ && o.exact_) q_ /= o.q_;
    else *this = approx(to_double() / o.to_double());
    return *this;
}

Number Number::operator-() const {
    if (exact_) return Number(mpq_class(-q_));
    return approx(-d_);
}

bool operator==(const Number& a, const Number& b) {
    if (a.exact_ && b.exact_) return a.q_ == b.q_;
    return a.to_double() == b.to_double();
}

std::partial_ordering operator<=>(const Number& a, const Number& b) {
    if (a.exact_ && b.exact_) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::partial_ordering::less
                     : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
    }
    return a.to_double() <=> b.to_double();
}

Number pow(const Number& base, unsigned long e) {
    if (base.exact()) {
        mpz_class num, den;
        mpz_pow_ui(num.get_mpz_t(), base.rational().get_num_mpz_t(), e);
        mpz_pow_ui(den.get_mpz_t(), base.rational().get_den_mpz_t(), e);
        return Number(mpq_class(num, den));
    }
    return Number::approx(std::pow(base.to_double(), static_cast<double>(e)));
}

Number abs(const Number& x) { return x.sign() < 0 ? -x : x; }
Number min(const Number& a, const Number& b) { return b < a ? b : a; }
Number max(const Number& a, const Number& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const Number& x) { return os << x.str(); }

} // namespace vlmc
