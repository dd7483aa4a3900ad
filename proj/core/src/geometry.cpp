#include "fmi/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace fmi {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

[[noreturn]] void throw_invalid(double a, double b, const char* why) {
    std::ostringstream os;
    os << "invalid interval (" << a << ", " << b << "): " << why;
    throw InvalidInterval(os.str());
}

double reduce_angle(double x) {
    double r = std::fmod(x, kTwoPi);
    if (r < 0) r += kTwoPi;
    // fmod can return exactly 2*pi after the correction when x is a tiny
    // negative number.
    if (r >= kTwoPi) r -= kTwoPi;
    return r;
}

void validate_sorted(const std::vector<Interval>& parts, Geometry geometry) {
    const std::size_t n = parts.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (parts[i].b == parts[i + 1].a)
            throw TouchingIntervals("intervals share endpoint " + std::to_string(parts[i].b));
        if (parts[i].b > parts[i + 1].a)
            throw OverlappingIntervals("interval interiors intersect");
    }
    if (geometry == Geometry::Circle && n >= 1) {
        // Cyclic check of the last closure against the first.
        const double wrap = parts[n - 1].b - kTwoPi;
        const double first = parts[0].a;
        if (n == 1) {
            if (wrap > first)
                throw OverlappingIntervals("arc overlaps itself around the circle");
            if (wrap == first)
                throw TouchingIntervals("arc closes the full circle");
        } else {
            if (wrap == first)
                throw TouchingIntervals("last arc touches the first across zero");
            if (wrap > first)
                throw OverlappingIntervals("last arc overlaps the first across zero");
        }
    }
}

} // namespace

Interval::Interval(double a_, double b_) : a(a_), b(b_) {
    if (!(std::isfinite(a) && std::isfinite(b))) throw_invalid(a, b, "endpoints must be finite");
    if (!(a < b)) throw_invalid(a, b, "requires a < b");
}

MultiInterval MultiInterval::normalize(const std::vector<std::pair<double, double>>& parts,
                                       Geometry geometry) {
    MultiInterval out(geometry);
    out.parts_.reserve(parts.size());
    for (const auto& [a, b] : parts) {
        if (geometry == Geometry::Circle) {
            if (!(a < b)) throw_invalid(a, b, "requires a < b");
            const double len = b - a;
            if (len >= kTwoPi) throw_invalid(a, b, "arc length must be below 2*pi");
            const double a0 = reduce_angle(a);
            out.parts_.emplace_back(a0, a0 + len);
        } else {
            out.parts_.emplace_back(a, b);
        }
    }
    std::sort(out.parts_.begin(), out.parts_.end(),
              [](const Interval& x, const Interval& y) { return x.a < y.a; });
    validate_sorted(out.parts_, geometry);
    return out;
}

std::vector<std::pair<double, double>> MultiInterval::endpoint_pairs() const {
    std::vector<std::pair<double, double>> out;
    out.reserve(parts_.size());
    for (const auto& p : parts_) out.emplace_back(p.a, p.b);
    return out;
}

UnionResult multi_union(const MultiInterval& A, const MultiInterval& B) {
    if (A.geometry() != B.geometry())
        throw DomainError("union of multi-intervals with mixed geometries");
    const Geometry geom = A.geometry();

    std::vector<std::pair<double, double>> raw;
    for (const auto& p : A.parts()) raw.emplace_back(p.a, p.b);
    for (const auto& p : B.parts()) raw.emplace_back(p.a, p.b);
    if (raw.empty()) return {MultiInterval(geom), false};

    if (geom == Geometry::Circle) {
        // Unroll every arc at shifts -2*pi, 0, +2*pi, merge on the line, and
        // read off the arcs starting in the canonical period [0, 2*pi).
        // Three copies make wrap-around coverage merge on both sides.
        std::vector<std::pair<double, double>> unrolled;
        for (auto [a, b] : raw)
            for (double s : {-kTwoPi, 0.0, kTwoPi}) unrolled.emplace_back(a + s, b + s);
        std::sort(unrolled.begin(), unrolled.end());
        std::vector<std::pair<double, double>> merged;
        for (auto [a, b] : unrolled) {
            if (!merged.empty() && a < merged.back().second) {
                merged.back().second = std::max(merged.back().second, b);
            } else if (!merged.empty() && a == merged.back().second) {
                throw TouchingIntervals("arcs touch at angle " + std::to_string(a));
            } else {
                merged.emplace_back(a, b);
            }
        }
        for (const auto& [a, b] : merged)
            if (b - a >= kTwoPi) return {MultiInterval(geom), true};
        std::vector<std::pair<double, double>> window;
        for (const auto& [a, b] : merged)
            if (a >= 0.0 && a < kTwoPi) window.emplace_back(a, b);
        return {MultiInterval::normalize(window, geom), false};
    }

    std::sort(raw.begin(), raw.end());
    std::vector<std::pair<double, double>> merged;
    for (auto [a, b] : raw) {
        if (!merged.empty() && a < merged.back().second) {
            merged.back().second = std::max(merged.back().second, b);
        } else if (!merged.empty() && a == merged.back().second) {
            throw TouchingIntervals("intervals touch at " + std::to_string(a));
        } else {
            merged.emplace_back(a, b);
        }
    }
    return {MultiInterval::normalize(merged, geom), false};
}

MultiInterval multi_intersection(const MultiInterval& A, const MultiInterval& B) {
    if (A.geometry() != B.geometry())
        throw DomainError("intersection of multi-intervals with mixed geometries");
    const Geometry geom = A.geometry();
    std::vector<std::pair<double, double>> out;

    const auto intersect_lists = [&](const std::vector<std::pair<double, double>>& xs,
                                     const std::vector<std::pair<double, double>>& ys) {
        for (const auto& [xa, xb] : xs)
            for (const auto& [ya, yb] : ys) {
                const double lo = std::max(xa, ya);
                const double hi = std::min(xb, yb);
                if (lo < hi) out.emplace_back(lo, hi);
            }
    };

    if (geom == Geometry::Circle) {
        // Compare every arc against both unrolled copies of the other set.
        std::vector<std::pair<double, double>> bs;
        for (const auto& p : B.parts()) {
            bs.emplace_back(p.a, p.b);
            bs.emplace_back(p.a + kTwoPi, p.b + kTwoPi);
            bs.emplace_back(p.a - kTwoPi, p.b - kTwoPi);
        }
        intersect_lists(A.endpoint_pairs(), bs);
    } else {
        intersect_lists(A.endpoint_pairs(), B.endpoint_pairs());
    }
    return MultiInterval::normalize(out, geom);
}

MultiInterval circle_complement(const MultiInterval& I) {
    if (I.geometry() != Geometry::Circle)
        throw DomainError("complement is defined for circle geometry");
    if (I.empty())
        throw DomainError("complement of the empty set is the full circle");
    const auto& ps = I.parts();
    std::vector<std::pair<double, double>> gaps;
    for (std::size_t i = 0; i + 1 < ps.size(); ++i) gaps.emplace_back(ps[i].b, ps[i + 1].a);
    gaps.emplace_back(ps.back().b, ps.front().a + kTwoPi);
    return MultiInterval::normalize(gaps, Geometry::Circle);
}

double endpoint_distance(double x, double y, Geometry geometry) {
    if (geometry == Geometry::Circle) return std::abs(2.0 * std::sin(0.5 * (x - y)));
    return std::abs(x - y);
}

double cross_ratio(const Interval& A, const Interval& B) {
    if (B.a == A.b) throw TouchingIntervals("cross ratio undefined for touching intervals");
    if (!(A.b < B.a)) throw DomainError("cross ratio requires B strictly to the right of A");
    return ((B.a - A.b) * (B.b - A.a)) / ((B.a - A.a) * (B.b - A.b));
}

MobiusMap MobiusMap::make(double a, double b, double c, double d) {
    const double det = a * d - b * c;
    if (!(det > 0) || !std::isfinite(det))
        throw DomainError("Moebius map requires ad - bc > 0");
    const double s = 1.0 / std::sqrt(det);
    return MobiusMap{a * s, b * s, c * s, d * s};
}

double MobiusMap::apply(double x) const {
    return (a * x + b) / (c * x + d);
}

double MobiusMap::apply_angle(double theta) const {
    // tan(theta/2) = sin(theta/2)/cos(theta/2), mapped projectively.
    const double s = std::sin(0.5 * theta);
    const double c0 = std::cos(0.5 * theta);
    const double num = a * s + b * c0;
    const double den = c * s + d * c0;
    double out = 2.0 * std::atan2(num, den);
    if (out < 0) out += kTwoPi;
    if (out >= kTwoPi) out -= kTwoPi;
    return out;
}

MultiInterval apply_mobius(const MobiusMap& m, const MultiInterval& I) {
    std::vector<std::pair<double, double>> images;
    images.reserve(I.size());

    if (I.geometry() == Geometry::Circle) {
        for (const auto& p : I.parts()) {
            const double a1 = m.apply_angle(p.a);
            const double b1 = m.apply_angle(p.b);
            // The action is orientation preserving, so the image arc runs
            // anticlockwise from the image of a.
            double len = std::fmod(b1 - a1 + kTwoPi, kTwoPi);
            if (len == 0.0)
                throw InvalidInterval("Moebius image of an arc degenerated");
            images.emplace_back(a1, a1 + len);
        }
        return MultiInterval::normalize(images, Geometry::Circle);
    }

    for (const auto& p : I.parts()) {
        for (double e : {p.a, p.b})
            if (m.c * e + m.d == 0.0)
                throw PoleAtEndpoint("Moebius pole at endpoint " + std::to_string(e));
        const double u = m.apply(p.a);
        const double v = m.apply(p.b);
        images.emplace_back(std::min(u, v), std::max(u, v));
    }
    return MultiInterval::normalize(images, Geometry::Line);
}

} // namespace fmi
