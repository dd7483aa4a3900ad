#ifndef FMI_GEOMETRY_HPP
#define FMI_GEOMETRY_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "fmi/errors.hpp"

namespace fmi {

enum class Geometry { Line, Circle };

/// Open interval (a, b), a < b strictly.
///
/// On the circle, endpoints are angles: a is reduced to [0, 2*pi) and
/// b = a + length with 0 < length < 2*pi, so b may exceed 2*pi for arcs
/// that wrap through angle zero.
struct Interval {
    double a;
    double b;

    Interval(double a_, double b_);

    double length() const { return b - a; }
};

/// Ordered disjoint union of open intervals on the line or the circle.
///
/// Parts are sorted by left endpoint and their closures are pairwise
/// disjoint (cyclically so on the circle). The empty set is permitted.
/// Instances are immutable once built.
class MultiInterval {
public:
    MultiInterval() : geometry_(Geometry::Line) {}
    explicit MultiInterval(Geometry g) : geometry_(g) {}

    /// Sorts and validates raw endpoint pairs.
    /// Throws InvalidInterval (a >= b or arc of length >= 2*pi),
    /// TouchingIntervals (closures share a point) or
    /// OverlappingIntervals (interiors intersect).
    static MultiInterval normalize(const std::vector<std::pair<double, double>>& parts,
                                   Geometry geometry = Geometry::Line);

    const std::vector<Interval>& parts() const { return parts_; }
    Geometry geometry() const { return geometry_; }
    bool empty() const { return parts_.empty(); }
    std::size_t size() const { return parts_.size(); }

    std::vector<std::pair<double, double>> endpoint_pairs() const;

private:
    std::vector<Interval> parts_;
    Geometry geometry_;
};

/// Union of two multi-intervals. Overlapping interiors merge; touching
/// closures are an error (the entropies diverge there). `covers_circle`
/// is set when the union is the whole circle, which has no MultiInterval
/// representation.
struct UnionResult {
    MultiInterval set;
    bool covers_circle = false;
};

UnionResult multi_union(const MultiInterval& A, const MultiInterval& B);

/// Intersection of interiors; touching closures contribute nothing.
MultiInterval multi_intersection(const MultiInterval& A, const MultiInterval& B);

/// Interior of the complement of a circle multi-interval (the gaps).
/// Requires circle geometry and a non-empty input.
MultiInterval circle_complement(const MultiInterval& I);

/// Distance between two endpoint coordinates under the given geometry:
/// |x - y| on the line, chordal |e^{ix} - e^{iy}| on the circle.
double endpoint_distance(double x, double y, Geometry geometry);

/// Cross ratio of two disjoint intervals on the line, B strictly to the
/// right of A:  eta = (a2-b1)(b2-a1) / ((a2-a1)(b2-b1)), 0 < eta < 1.
/// eta -> 1 at infinite separation, eta -> 0 as the gap closes.
double cross_ratio(const Interval& A, const Interval& B);

/// Real Moebius transformation x -> (a x + b)/(c x + d), ad - bc > 0,
/// stored normalized so that ad - bc = 1.
struct MobiusMap {
    double a, b, c, d;

    /// Normalizes the coefficients; throws DomainError when ad - bc <= 0.
    static MobiusMap make(double a, double b, double c, double d);
    static MobiusMap identity() { return MobiusMap{1, 0, 0, 1}; }
    static MobiusMap translation(double s) { return MobiusMap{1, s, 0, 1}; }

    double apply(double x) const;

    /// Action on circle angles through the Cayley identification
    /// tan(theta/2) <-> x, evaluated projectively so no angle is singular.
    double apply_angle(double theta) const;
};

/// Endpoint-wise image of a multi-interval, re-normalized. On the line a
/// vanishing denominator at any endpoint throws PoleAtEndpoint; on the
/// circle the action is globally defined.
MultiInterval apply_mobius(const MobiusMap& m, const MultiInterval& I);

} // namespace fmi

#endif
