#include "vlmc/dynsource.hpp"
#include "vlmc/error.hpp"

#include <algorithm>
#include <limits>

namespace vlmc {

namespace {

bool all_zeros(const Word& w) { return w.find('1') == Word::npos; }

double inverse_or_inf(const Number& q) {
    if (q.is_zero()) return std::numeric_limits<double>::infinity();
    return (Number(1) / q).to_double();
}

} // namespace

Interval intersect(const Interval& a, const Interval& b) {
    Interval r;
    if (a.left > b.left) {
        r.left = a.left;
        r.left_closed = a.left_closed;
    } else if (a.left < b.left) {
        r.left = b.left;
        r.left_closed = b.left_closed;
    } else {
        r.left = a.left;
        r.left_closed = a.left_closed && b.left_closed;
    }
    r.right = min(a.right, b.right);
    return r;
}

void IntervalSet::add(const Interval& iv) {
    if (iv.empty()) return;
    parts_.push_back(iv);
    std::sort(parts_.begin(), parts_.end(), [](const Interval& x, const Interval& y) {
        if (x.left != y.left) return x.left < y.left;
        return x.left_closed && !y.left_closed;
    });
    std::vector<Interval> merged;
    for (const auto& p : parts_) {
        // right ends are closed, so touching intervals join; rounded endpoints join across
        // gaps of a few ulps
        bool touches = !merged.empty() &&
                       (p.left <= merged.back().right ||
                        (!(p.left.exact() && merged.back().right.exact()) &&
                         p.left.to_double() - merged.back().right.to_double() <= 1e-14));
        if (touches) {
            merged.back().right = max(merged.back().right, p.right);
            if (p.left == merged.back().left) merged.back().left_closed = merged.back().left_closed || p.left_closed;
        } else {
            merged.push_back(p);
        }
    }
    parts_ = std::move(merged);
}

Number IntervalSet::length() const {
    Number s(0);
    for (const auto& p : parts_) s += p.length();
    return s;
}

IntervalSet IntervalSet::intersect(const Interval& iv) const {
    IntervalSet out;
    for (const auto& p : parts_) out.add(vlmc::intersect(p, iv));
    return out;
}

// ---------------------------------------------------------------- subdivision

Number AdicSubdivision::left(const Word& w) const {
    if (w.empty()) return Number(0);
    {
        std::lock_guard<std::mutex> lock(mutex_);
        if (auto it = left_.find(w); it != left_.end()) return it->second;
    }
    const Word head = w.substr(0, w.size() - 1);
    Number x = left(head);
    if (w.back() == '1') x += length(head + '0');
    std::lock_guard<std::mutex> lock(mutex_);
    left_.emplace(w, x);
    return x;
}

Interval AdicSubdivision::interval(const Word& w) const {
    Interval iv;
    iv.left = left(w);
    iv.right = iv.left + length(w);
    iv.left_closed = all_zeros(w);
    return iv;
}

std::vector<std::pair<Word, Interval>> AdicSubdivision::level(std::size_t n) const {
    std::vector<std::pair<Word, Interval>> out;
    if (n >= 63) throw Error(ErrorKind::OutOfRange, "subdivision level too deep to enumerate");
    std::uint64_t count = std::uint64_t(1) << n;
    Number x(0);
    for (std::uint64_t i = 0; i < count; ++i) {
        Word w(n, '0');
        for (std::size_t j = 0; j < n; ++j)
            if ((i >> (n - 1 - j)) & 1) w[j] = '1';
        Interval iv;
        iv.left = x;
        iv.right = x + length(w);
        iv.left_closed = i == 0;
        x = iv.right;
        out.emplace_back(std::move(w), iv);
    }
    return out;
}

// ---------------------------------------------------------------- map

IntervalMap::IntervalMap(const StationaryMeasure& m, std::size_t depth) : sub_(m), depth_(depth) {
    if (m.is_dirac()) throw Error(ErrorKind::ZeroMassTree, "the stationary measure sits on finitely many sequences");
    const ContextTree& t = m.tree();
    if (t.height()) depth_ = std::max(depth_, *t.height());
    refine_cap_ = depth_ + 200;
    std::vector<Word> contexts = t.leaves_to_depth(depth_);
    for (char a : {'0', '1'})
        for (const Word& c : contexts) {
            Piece p;
            p.context = c;
            p.letter = a;
            p.source = a + c;
            p.from = sub_.interval(p.source);
            p.to = sub_.interval(c);
            p.q = t.q(c, a);
            pieces_.push_back(std::move(p));
        }
    std::sort(pieces_.begin(), pieces_.end(), [](const Piece& x, const Piece& y) { return x.source < y.source; });
    Number covered(0);
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const Piece& p = pieces_[i];
        if (p.empty() || p.from.length().is_zero()) continue;
        live_.push_back(i);
        live_left_.push_back(p.from.left.to_double());
        live_right_.push_back(p.from.right.to_double());
        covered += p.from.length();
    }
    if (live_.empty()) throw Error(ErrorKind::ZeroMassTree, "every context has zero stationary mass");
    residual_ = Number(1) - covered;
    split_ = sub_.length("0");
    split_d_ = split_.to_double();
}

std::vector<Number> IntervalMap::discontinuities() const {
    std::vector<Number> xs;
    for (const auto& p : pieces_)
        if (p.empty()) xs.push_back(p.from.left);
    return xs;
}

const Piece* IntervalMap::find(const Number& x) const {
    std::size_t lo = 0, hi = live_.size();
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (pieces_[live_[mid]].from.right < x)
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo == live_.size()) return nullptr;
    const Piece& p = pieces_[live_[lo]];
    return p.from.contains(x) ? &p : nullptr;
}

Number IntervalMap::apply(const Number& x) const {
    if (x < Number(0) || x > Number(1)) throw Error(ErrorKind::OutOfRange, "point " + x.str() + " outside [0, 1]");
    const Piece* p = find(x);
    if (!p) throw Error(ErrorKind::UnresolvedPoint, "point " + x.str() + " lies in the truncation residual");
    return p->to.left + (x - p->from.left) / p->q;
}

double IntervalMap::apply(double x) const {
    if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorKind::OutOfRange, "point outside [0, 1]");
    auto it = std::lower_bound(live_right_.begin(), live_right_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - live_right_.begin());
    if (i == live_.size() || !(x > live_left_[i] || (x == 0.0 && live_left_[i] == 0.0)))
        throw Error(ErrorKind::UnresolvedPoint, "point " + shortest_decimal(x) + " lies in the truncation residual");
    const Piece& p = pieces_[live_[i]];
    double y = p.to.left.to_double() + (x - live_left_[i]) / p.q.to_double();
    return std::clamp(y, 0.0, 1.0);
}

Word IntervalMap::orbit_letters(const Number& x, std::size_t n) const {
    Word w;
    Number y = x;
    for (std::size_t k = 0; k < n; ++k) {
        w += code(y);
        if (k + 1 < n) y = apply(y);
    }
    return w;
}

Word IntervalMap::orbit_letters(double x, std::size_t n) const {
    Word w;
    for (std::size_t k = 0; k < n; ++k) {
        w += code(x);
        if (k + 1 < n) x = apply(x);
    }
    return w;
}

std::vector<Number> IntervalMap::orbit(const Number& x, std::size_t n) const {
    std::vector<Number> xs{x};
    while (xs.size() < n) xs.push_back(apply(xs.back()));
    return xs;
}

std::vector<double> IntervalMap::orbit(double x, std::size_t n) const {
    std::vector<double> xs{x};
    while (xs.size() < n) xs.push_back(apply(xs.back()));
    return xs;
}

Number MappedSet::length() const {
    if (!resolved)
        throw Error(ErrorKind::UnresolvedRegion,
                    "set meets the truncation residual; length in [" + lower.str() + ", " + upper.str() + "]");
    return set.length();
}

// T^-1 of B restricted to the target node I_u. Contexts are inverted exactly at
// any depth; internal nodes below the truncation depth are blocks whose preimage
// is taken whole when B covers them, refined otherwise.
namespace {

// empty, or a rounding sliver between two float endpoints that should coincide
bool negligible(const Interval& part) {
    if (part.empty()) return true;
    if (part.left.exact() && part.right.exact()) return false;
    return part.length().to_double() <= 1e-15;
}

} // namespace

void IntervalMap::pre_descend(const Word& u, const Interval& B, MappedSet& out) const {
    const ContextTree& t = sub_.measure().tree();
    Interval Iu = sub_.interval(u);
    Interval part = intersect(Iu, B);
    if (negligible(part) || Iu.length().is_zero()) return;
    if (t.is_context(u)) {
        for (char a : {'0', '1'}) {
            Number q = t.q(u, a);
            if (q.is_zero()) continue;
            Interval src = sub_.interval(a + u);
            Interval pre;
            pre.left = src.left + (part.left - Iu.left) * q;
            pre.right = src.left + (part.right - Iu.left) * q;
            pre.left_closed = part.left_closed && (part.left > Iu.left || src.left_closed);
            out.set.add(pre);
        }
        return;
    }
    if (u.size() >= depth_) {
        if (part == Iu) {
            out.set.add(sub_.interval('0' + u));
            out.set.add(sub_.interval('1' + u));
            return;
        }
        if (u.size() >= refine_cap_) {
            out.resolved = false;
            out.upper += sub_.length('0' + u) + sub_.length('1' + u);
            return;
        }
    }
    pre_descend(u + '0', B, out);
    pre_descend(u + '1', B, out);
}

void IntervalMap::img_descend(char a, const Word& u, const Interval& A, MappedSet& out) const {
    const ContextTree& t = sub_.measure().tree();
    Interval S = sub_.interval(a + u);
    Interval part = intersect(S, A);
    if (negligible(part) || S.length().is_zero()) return;
    if (t.is_context(u)) {
        Number q = t.q(u, a);
        Interval Iu = sub_.interval(u);
        Interval img;
        img.left = Iu.left + (part.left - S.left) / q;
        img.right = Iu.left + (part.right - S.left) / q;
        img.left_closed = part.left_closed;
        out.set.add(img);
        return;
    }
    if (u.size() >= depth_) {
        if (part == S) {
            out.set.add(sub_.interval(u));
            return;
        }
        if (u.size() >= refine_cap_) {
            out.resolved = false;
            out.upper += sub_.length(u);
            return;
        }
    }
    img_descend(a, u + '0', A, out);
    img_descend(a, u + '1', A, out);
}

namespace {

void finish(MappedSet& out) {
    Number known = out.set.length();
    out.lower = known;
    out.upper += known;
}

} // namespace

MappedSet IntervalMap::preimage(const Interval& B) const {
    MappedSet out;
    pre_descend("", B, out);
    finish(out);
    return out;
}

MappedSet IntervalMap::preimage(const IntervalSet& B) const {
    MappedSet out;
    for (const auto& part : B.parts()) pre_descend("", part, out);
    finish(out);
    return out;
}

MappedSet IntervalMap::image(const Interval& A) const {
    MappedSet out;
    img_descend('0', "", A, out);
    img_descend('1', "", A, out);
    finish(out);
    return out;
}

MappedSet IntervalMap::seeds_emitting(const Word& w) const {
    MappedSet cur;
    cur.set.add(Interval{Number(0), Number(1), true});
    for (std::size_t i = w.size(); i-- > 0;) {
        MappedSet pre = preimage(cur.set);
        MappedSet next;
        next.set = pre.set.intersect(sub_.interval(Word(1, w[i])));
        next.resolved = cur.resolved && pre.resolved;
        cur = std::move(next);
    }
    finish(cur);
    if (!cur.resolved) cur.upper = cur.lower + sub_.length(Word(1, w.empty() ? '0' : w[0]));
    return cur;
}

std::vector<Derivative> IntervalMap::accumulation_derivatives() const {
    const ContextTree& t = sub_.measure().tree();
    std::vector<Derivative> out;
    auto need = [](const std::optional<Number>& lim, const char* what) {
        if (!lim) throw Error(ErrorKind::LimitUndefined, std::string(what) + " has no limit");
        return *lim;
    };
    auto entry = [](std::string point, double loc, std::string side, const Number& q) {
        Derivative d;
        d.point = std::move(point);
        d.location = loc;
        d.side = std::move(side);
        d.value = inverse_or_inf(q);
        d.indifferent = q == Number(1);
        return d;
    };
    if (t.shape() == ContextTree::Shape::Comb) {
        Number lim = need(t.comb_family().limit(), "q_{0^n 1}(0)");
        out.push_back(entry("0", 0.0, "right", lim));
        out.push_back(entry("pi(0)", split_d_, "right", Number(1) - lim));
    } else if (t.shape() == ContextTree::Shape::Bamboo) {
        Number l1 = need(t.bamboo_family_1().limit(), "q_{(01)^n 1}(0)");
        Number l00 = need(t.bamboo_family_00().limit(), "q_{(01)^n 00}(0)");
        Word spine = periodic_prefix("01", 2 * depth_);
        double a0 = sub_.left('0' + spine).to_double();
        double a1 = sub_.left('1' + spine).to_double();
        out.push_back(entry("a0", a0, "left", l00));
        out.push_back(entry("a0", a0, "right", l1));
        out.push_back(entry("a1", a1, "left", Number(1) - l00));
        out.push_back(entry("a1", a1, "right", Number(1) - l1));
    }
    return out;
}

} // namespace vlmc
