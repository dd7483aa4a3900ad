#ifndef FMI_QUADRATURE_HPP
#define FMI_QUADRATURE_HPP

#include <functional>
#include <limits>

#include "fmi/errors.hpp"

namespace fmi {

/// Tolerances and truncation knobs for improper integrals.
struct QuadratureConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 2000;
    /// Upper cutoff surrogate for the improper t-integral before the change
    /// of variables; infinity means no truncation.
    double t_truncation = std::numeric_limits<double>::infinity();

    void validate() const {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
            throw DomainError("quadrature tolerances must be positive");
        if (max_subdivisions < 1) throw DomainError("max_subdivisions must be >= 1");
        if (!(t_truncation > 0.5)) throw DomainError("t truncation must exceed 1/2");
    }
};

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int subdivisions = 0;
};

/// Globally adaptive Gauss-Kronrod 7-15 on [a, b]. Bisects the segment with
/// the largest error estimate until
///   sum(err) <= max(abs_tol, rel_tol * |value|)
/// and throws QuadratureFailure past max_subdivisions. The final sum runs
/// over segments ordered by left endpoint with compensated accumulation, so
/// the result does not depend on subdivision order.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadratureConfig& cfg);

} // namespace fmi

#endif
