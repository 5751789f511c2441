#include "vlmc/qfamily.hpp"
#include "vlmc/error.hpp"
#include "vlmc/zeta.hpp"

#include <cmath>

namespace vlmc {

namespace {

void require_unit(const Number& x, const std::string& what) {
    if (x < Number(0) || x > Number(1))
        throw Error(ErrorKind::BadProbability, what + " = " + x.str() + " is outside [0,1]");
}

bool integral(double a) { return std::floor(a) == a && std::fabs(a) < 1e6; }

} // namespace

QFamily QFamily::constant(Number p) {
    require_unit(p, "constant family value");
    QFamily f;
    f.kind_ = Kind::Constant;
    f.p_ = p;
    return f;
}

QFamily QFamily::table_then_constant(std::vector<Number> values, Number p) {
    for (const auto& v : values) require_unit(v, "table value");
    require_unit(p, "tail value");
    QFamily f;
    f.kind_ = Kind::TableThenConstant;
    f.values_ = std::move(values);
    f.p_ = p;
    return f;
}

QFamily QFamily::table_then_geometric(std::vector<Number> values, Number ratio) {
    if (values.empty()) throw Error(ErrorKind::BadParams, "table-then-geometric needs at least one value");
    for (const auto& v : values) require_unit(v, "table value");
    require_unit(ratio, "geometric ratio");
    QFamily f;
    f.kind_ = Kind::TableThenGeometric;
    f.values_ = std::move(values);
    f.p_ = ratio;
    return f;
}

QFamily QFamily::periodic(std::vector<Number> values) {
    if (values.empty()) throw Error(ErrorKind::BadParams, "periodic family needs at least one value");
    for (const auto& v : values) require_unit(v, "periodic value");
    QFamily f;
    f.kind_ = Kind::Periodic;
    f.values_ = std::move(values);
    return f;
}

QFamily QFamily::zeta(double alpha) {
    if (!(alpha > 1.0)) throw Error(ErrorKind::BadParams, "zeta family needs alpha > 1");
    QFamily f;
    f.kind_ = Kind::Zeta;
    f.alpha_ = alpha;
    return f;
}

QFamily QFamily::indifferent(double alpha) {
    if (!(alpha > 0.0)) throw Error(ErrorKind::BadParams, "indifferent family needs alpha > 0");
    QFamily f;
    f.kind_ = Kind::Indifferent;
    f.alpha_ = alpha;
    return f;
}

const char* QFamily::kind_name() const {
    switch (kind_) {
    case Kind::Constant: return "constant";
    case Kind::TableThenConstant: return "table-then-constant";
    case Kind::TableThenGeometric: return "table-then-geometric";
    case Kind::Periodic: return "periodic";
    case Kind::Zeta: return "zeta";
    case Kind::Indifferent: return "indifferent";
    }
    return "?";
}

Number QFamily::q0(std::size_t n) const {
    switch (kind_) {
    case Kind::Constant:
        return p_;
    case Kind::TableThenConstant:
        return n < values_.size() ? values_[n] : p_;
    case Kind::TableThenGeometric:
        if (n < values_.size()) return values_[n];
        return values_.back() * pow(p_, n - values_.size() + 1);
    case Kind::Periodic:
        return values_[n % values_.size()];
    case Kind::Zeta: {
        if (n == 0) return Number(1);
        // H(a, n+1) / H(a, n) = 1 - n^-a / H(a, n)
        double nd = static_cast<double>(n);
        return Number::approx(1.0 - std::pow(nd, -alpha_) / zeta_tail(alpha_, nd));
    }
    case Kind::Indifferent: {
        if (integral(alpha_)) return pow(Number::ratio(static_cast<long>(n) + 1, static_cast<long>(n) + 2),
                                         static_cast<unsigned long>(alpha_));
        double x = 1.0 - 1.0 / (static_cast<double>(n) + 2.0);
        return Number::approx(std::pow(x, alpha_));
    }
    }
    return Number(0);
}

bool QFamily::eventually_periodic() const {
    switch (kind_) {
    case Kind::Constant:
    case Kind::TableThenConstant:
    case Kind::Periodic:
        return true;
    case Kind::TableThenGeometric:
        return p_.is_zero() || p_ == Number(1);
    default:
        return false;
    }
}

std::size_t QFamily::preperiod() const {
    switch (kind_) {
    case Kind::TableThenConstant:
    case Kind::TableThenGeometric:
        return values_.size();
    default:
        return 0;
    }
}

std::size_t QFamily::period() const { return kind_ == Kind::Periodic ? values_.size() : 1; }

Number QFamily::inf_from(std::size_t n) const {
    switch (kind_) {
    case Kind::Constant:
        return p_;
    case Kind::TableThenConstant: {
        Number m = p_;
        for (std::size_t k = n; k < values_.size(); ++k) m = min(m, values_[k]);
        return m;
    }
    case Kind::TableThenGeometric: {
        Number m = p_ == Number(1) ? values_.back() : Number(0);
        for (std::size_t k = n; k < values_.size(); ++k) m = min(m, values_[k]);
        return m;
    }
    case Kind::Periodic: {
        Number m = values_[0];
        for (const auto& v : values_) m = min(m, v);
        return m;
    }
    case Kind::Zeta:
    case Kind::Indifferent:
        // both families increase towards 1
        return q0(n);
    }
    return Number(0);
}

Number QFamily::sup_from(std::size_t n) const {
    switch (kind_) {
    case Kind::Constant:
        return p_;
    case Kind::TableThenConstant: {
        Number m = p_;
        for (std::size_t k = n; k < values_.size(); ++k) m = max(m, values_[k]);
        return m;
    }
    case Kind::TableThenGeometric: {
        std::size_t first_tail = std::max(n, values_.size());
        Number m = q0(first_tail);
        for (std::size_t k = n; k < values_.size(); ++k) m = max(m, values_[k]);
        return m;
    }
    case Kind::Periodic: {
        Number m = values_[0];
        for (const auto& v : values_) m = max(m, v);
        return m;
    }
    case Kind::Zeta:
    case Kind::Indifferent:
        return Number(1);
    }
    return Number(1);
}

std::optional<Number> QFamily::limit() const {
    switch (kind_) {
    case Kind::Constant:
    case Kind::TableThenConstant:
        return p_;
    case Kind::TableThenGeometric:
        return p_ == Number(1) ? values_.back() : Number(0);
    case Kind::Periodic:
        for (const auto& v : values_)
            if (!(v == values_[0])) return std::nullopt;
        return values_[0];
    case Kind::Zeta:
    case Kind::Indifferent:
        return Number(1);
    }
    return std::nullopt;
}

Number number_from_json(const nlohmann::json& j, NumericMode mode) {
    if (j.is_string()) return Number::parse(j.get<std::string>(), mode);
    if (j.is_number_integer()) return Number::parse(std::to_string(j.get<long long>()), mode);
    if (j.is_number_float()) {
        if (mode == NumericMode::Rational)
            throw Error(ErrorKind::Parse, "rational mode needs exact strings such as \"3/10\", got " + j.dump());
        return Number::parse(shortest_decimal(j.get<double>()), mode);
    }
    throw Error(ErrorKind::Parse, "expected a number, got " + j.dump());
}

nlohmann::json number_to_json(const Number& x) { return x.str(); }

nlohmann::json QFamily::to_json() const {
    nlohmann::json j;
    j["kind"] = kind_name();
    auto vals = [&] {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& v : values_) a.push_back(number_to_json(v));
        return a;
    };
    switch (kind_) {
    case Kind::Constant:
        j["p"] = number_to_json(p_);
        break;
    case Kind::TableThenConstant:
        j["values"] = vals();
        j["p"] = number_to_json(p_);
        break;
    case Kind::TableThenGeometric:
        j["values"] = vals();
        j["ratio"] = number_to_json(p_);
        break;
    case Kind::Periodic:
        j["values"] = vals();
        break;
    case Kind::Zeta:
    case Kind::Indifferent:
        j["alpha"] = alpha_;
        break;
    }
    return j;
}

QFamily QFamily::from_json(const nlohmann::json& j, NumericMode mode) {
    if (!j.is_object() || !j.contains("kind")) throw Error(ErrorKind::Parse, "family needs a 'kind'");
    std::string kind = j.at("kind").get<std::string>();
    auto need = [&](const char* key) -> const nlohmann::json& {
        if (!j.contains(key)) throw Error(ErrorKind::Parse, "family '" + kind + "' needs '" + key + "'");
        return j.at(key);
    };
    auto vals = [&] {
        std::vector<Number> out;
        const auto& a = need("values");
        if (!a.is_array()) throw Error(ErrorKind::Parse, "'values' must be an array");
        for (const auto& v : a) out.push_back(number_from_json(v, mode));
        return out;
    };
    auto real = [&](const char* key) {
        const auto& v = need(key);
        return v.is_string() ? Number::parse(v.get<std::string>()).to_double() : v.get<double>();
    };
    if (kind == "constant") return constant(number_from_json(need("p"), mode));
    if (kind == "table-then-constant") return table_then_constant(vals(), number_from_json(need("p"), mode));
    if (kind == "table-then-geometric") return table_then_geometric(vals(), number_from_json(need("ratio"), mode));
    if (kind == "periodic") return periodic(vals());
    if (kind == "zeta") return zeta(real("alpha"));
    if (kind == "indifferent") return indifferent(real("alpha"));
    throw Error(ErrorKind::Parse, "unknown family kind '" + kind + "'");
}

} // namespace vlmc
