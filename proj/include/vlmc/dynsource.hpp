#pragma once

#include "vlmc/stationary.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace vlmc {

/// Subinterval of [0, 1]; right-closed, left-closed only when it contains its left end.
struct Interval {
    Number left{0}, right{0};
    bool left_closed = false;

    Number length() const { return right - left; }
    bool empty() const { return left > right || (left == right && !left_closed); }
    bool contains(const Number& x) const { return x <= right && (x > left || (left_closed && x == left)); }
    friend bool operator==(const Interval&, const Interval&) = default;
};

Interval intersect(const Interval& a, const Interval& b);

/// Finite union of disjoint intervals, kept sorted and merged.
class IntervalSet {
public:
    void add(const Interval& iv);
    const std::vector<Interval>& parts() const { return parts_; }
    Number length() const;
    IntervalSet intersect(const Interval& iv) const;

private:
    std::vector<Interval> parts_;
};

/// I_w for every finite word w: |I_w| = pi(reversed w), children ordered 0 then 1.
/// I_{0^n} are compact, every other I_w is left-open.
class AdicSubdivision {
public:
    explicit AdicSubdivision(const StationaryMeasure& m) : m_(m) {}

    const StationaryMeasure& measure() const { return m_; }
    Number length(const Word& w) const { return m_.measure_of(reversed(w)); }
    Number left(const Word& w) const;
    Number right(const Word& w) const { return left(w) + length(w); }
    Interval interval(const Word& w) const;

    /// Words of length n in alphabetical order with their intervals.
    std::vector<std::pair<Word, Interval>> level(std::size_t n) const;

private:
    const StationaryMeasure& m_;
    mutable std::map<Word, Number> left_;
    mutable std::mutex mutex_;
};

/// Affine branch of T: I_{a c} onto I_c with slope 1/q_c(a).
struct Piece {
    Word context;
    char letter = '0';
    Word source; // a c
    Interval from, to;
    Number q{0};
    bool empty() const { return q.is_zero(); }
};

/// Result of pushing an interval through T or T^-1. When the descent meets a block
/// it cannot split below the refinement cap, the set is incomplete and only the
/// bounds lower <= length <= upper are known.
struct MappedSet {
    IntervalSet set;
    bool resolved = true;
    Number lower{0}, upper{0};
    /// Throws UnresolvedRegion when unresolved.
    Number length() const;
};

struct Derivative {
    std::string point; // "0", "pi(0)", "a0", "a1"
    double location = 0.0;
    std::string side; // "left" or "right"
    double value = 0.0; // +inf allowed
    bool indifferent = false;
};

/// The piecewise-affine map T of a stationary VLMC. Contexts up to `depth` give
/// explicit pieces; deeper ones form residual blocks around the accumulation points.
class IntervalMap {
public:
    /// Throws ZeroMassTree for Dirac measures.
    IntervalMap(const StationaryMeasure& m, std::size_t depth);

    const AdicSubdivision& subdivision() const { return sub_; }
    const StationaryMeasure& measure() const { return sub_.measure(); }
    std::size_t depth() const { return depth_; }
    /// Explicit pieces in left-to-right order, including empty ones (q = 0).
    const std::vector<Piece>& pieces() const { return pieces_; }
    /// Left ends of the empty pieces.
    std::vector<Number> discontinuities() const;
    /// Mass of [0, 1] outside the explicit pieces.
    Number residual_mass() const { return residual_; }
    /// |I_0|: x codes to 0 iff x <= split().
    Number split() const { return split_; }

    static Number slope(const ContextTree& t, const Word& context, char a) { return Number(1) / t.q(context, a); }

    char code(const Number& x) const { return x <= split_ ? '0' : '1'; }
    char code(double x) const { return x <= split_d_ ? '0' : '1'; }
    /// Throws UnresolvedPoint inside the residual zone.
    Number apply(const Number& x) const;
    double apply(double x) const;

    Word orbit_letters(const Number& x, std::size_t n) const;
    Word orbit_letters(double x, std::size_t n) const;
    std::vector<Number> orbit(const Number& x, std::size_t n) const;
    std::vector<double> orbit(double x, std::size_t n) const;

    MappedSet preimage(const Interval& B) const;
    MappedSet preimage(const IntervalSet& B) const;
    MappedSet image(const Interval& A) const;
    /// Seeds whose first |w| letters are w, built as I_{w_0} cut by T^-1 of the seeds for the rest.
    MappedSet seeds_emitting(const Word& w) const;

    /// One-sided derivatives at the accumulation points of the comb and the bamboo.
    std::vector<Derivative> accumulation_derivatives() const;

private:
    AdicSubdivision sub_;
    std::size_t depth_;
    std::vector<Piece> pieces_;
    std::vector<std::size_t> live_; // indices of nonempty pieces
    std::vector<double> live_left_, live_right_;
    Number residual_{0};
    Number split_{0};
    double split_d_ = 0.0;
    std::size_t refine_cap_;

    const Piece* find(const Number& x) const;
    void pre_descend(const Word& u, const Interval& B, MappedSet& out) const;
    void img_descend(char a, const Word& u, const Interval& A, MappedSet& out) const;
};

} // namespace vlmc
