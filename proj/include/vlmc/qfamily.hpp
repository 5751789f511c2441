#pragma once

#include "vlmc/number.hpp"

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace vlmc {

/// Sequence n -> q_n(0) attached to the contexts hanging off an infinite branch.
///
/// Tails: constant, table then constant, table then geometric decay, a repeating
/// block, and the two analytic families (zeta tails and (1 - 1/(n+2))^alpha).
class QFamily {
public:
    enum class Kind { Constant, TableThenConstant, TableThenGeometric, Periodic, Zeta, Indifferent };

    static QFamily constant(Number p);
    static QFamily table_then_constant(std::vector<Number> values, Number p);
    /// q_n = values[n] inside the table, then values.back() * ratio^(n - size + 1).
    static QFamily table_then_geometric(std::vector<Number> values, Number ratio);
    static QFamily periodic(std::vector<Number> values);
    /// c_n = zeta(n, alpha) / zeta(alpha) for the comb; needs alpha > 1.
    static QFamily zeta(double alpha);
    static QFamily indifferent(double alpha);

    Kind kind() const { return kind_; }
    const char* kind_name() const;
    const std::vector<Number>& values() const { return values_; }
    const Number& tail_value() const { return p_; }
    double alpha() const { return alpha_; }

    Number q0(std::size_t n) const;
    Number q1(std::size_t n) const { return Number(1) - q0(n); }

    /// True when q_n(0) is periodic from preperiod() on, with period().
    bool eventually_periodic() const;
    std::size_t preperiod() const;
    std::size_t period() const;

    /// Bounds on q_k(0) over k >= n.
    Number inf_from(std::size_t n) const;
    Number sup_from(std::size_t n) const;
    /// Limit of q_n(0); empty when the sequence oscillates.
    std::optional<Number> limit() const;

    nlohmann::json to_json() const;
    static QFamily from_json(const nlohmann::json& j, NumericMode mode);

private:
    Kind kind_ = Kind::Constant;
    std::vector<Number> values_;
    Number p_{0};
    double alpha_ = 0.0;
};

/// Reads a probability-like literal: JSON strings parse exactly ("3/8", "0.25"),
/// JSON integers are exact; JSON floats are refused in rational mode and go through
/// their shortest round-trip decimal text in float mode.
Number number_from_json(const nlohmann::json& j, NumericMode mode);
nlohmann::json number_to_json(const Number& x);

} // namespace vlmc
