#ifndef FMI_KERNEL_HPP
#define FMI_KERNEL_HPP

#include <complex>
#include <utility>

#include "fmi/geometry.hpp"
#include "fmi/quadrature.hpp"

namespace fmi {

/// Region data for the singular-kernel trace machinery: the full line
/// multi-interval I, a sub-collection I1 of its components, and the
/// regularization eps0 of E = (C + eps0) / (1 + 2 eps0).
class KernelConfig {
public:
    static KernelConfig make(MultiInterval I, MultiInterval I1, double eps0 = 0.0,
                             QuadratureConfig quad = {});

    const MultiInterval& I() const { return I_; }
    const MultiInterval& I1() const { return I1_; }
    /// Components of I not in I1.
    const MultiInterval& I2() const { return I2_; }
    double eps0() const { return eps0_; }
    const QuadratureConfig& quad() const { return quad_; }

private:
    MultiInterval I_, I1_, I2_;
    double eps0_ = 0.0;
    QuadratureConfig quad_;
};

/// Z(x) = log( -prod_i (x - a_i) / prod_i (x - b_i) ), finite and real for
/// x strictly inside I. Throws DomainError outside or at endpoints.
double z_function(double x, const MultiInterval& I);

/// Z'(x) = sum_i 1/(x - a_i) - 1/(x - b_i); positive inside I.
double z_prime(double x, const MultiInterval& I);

/// Z_{I,I1}(x) = Z_I(x) - Z_{I1}(x), evaluated from the I2 components only,
/// which keeps it smooth on the closure of I1.
double z_difference(double x, const KernelConfig& cfg);
double z_difference_prime(double x, const KernelConfig& cfg);

/// Non-delta part of the resolvent kernel of C - 1/2 + beta:
///   (beta^2 - 1/4)^{-1} (i/2pi) e^{-(i/2pi) ln((b-1/2)/(b+1/2)) (Z(x)-Z(y))} / (x - y)
/// for |beta| > 1/2 and x != y interior to I.
std::complex<double> resolvent_kernel_regular_part(double beta, double x, double y,
                                                   const MultiInterval& I);

/// The continuous kernel G(t, x, y) built from the sine difference of
/// Z_I and Z_{I1} phases, with diagonal
///   G(t, x, x) = (1/2pi) ln((t-1/2)/(t+1/2)) (Z_I'(x) - Z_{I1}'(x)).
double g_kernel(double t, double x, double y, const KernelConfig& cfg);

/// Lipschitz-type bound constant of Lemma-style |G| <= |phi_t| * M:
/// M = max over a sample of the closure of I1 of |Z_{I,I1}(x)-Z_{I,I1}(y)|/|x-y|.
double g_kernel_bound_constant(const KernelConfig& cfg, int samples = 200);

/// Diagonal K^{eps0}(x, x) of the regularized entropy-difference kernel,
/// computed by adaptive quadrature after u = ln((t-1/2)/(t+1/2)).
/// With eps0 = 0 it equals -t_profile * (Z_I'(x) - Z_{I1}'(x)).
double k0_diagonal(double x, const KernelConfig& cfg);

struct TraceResult {
    double numeric = 0.0;
    double closed_form = 0.0;
    double abs_err_estimate = 0.0;
    int subdivisions = 0;
};

/// Trace of the kernel over I1: numeric x-integration of the diagonal
/// against the closed form
///   (1/12) sum_{i in I2, j in I1} ln[(a_j-a_i)(b_j-b_i) / ((b_j-a_i)(a_j-b_i))].
/// Requires a nonempty complement I2.
TraceResult k0_trace(const KernelConfig& cfg);

/// Substituted t-profile integrand: u e^u/(1 - e^u) at eps0 = 0, extended
/// continuously to u = 0; general eps0 weights the regularized kernel.
double t_profile_weight(double u, double eps0 = 0.0);

/// -(1/2pi^2) Int_{1/2}^inf ln((t-1/2)/(t+1/2)) / (t+1/2) dt = 1/12,
/// evaluated in the u variable; t_truncation in quad applies.
double t_profile_integral(const QuadratureConfig& quad);

/// Int_{-inf}^0 u e^u / (1 - e^u) du = -pi^2/6.
double dilog_integral(const QuadratureConfig& quad);

/// Spectrum bounds of E = (C + eps0)/(1 + 2 eps0) for any covariance C:
/// (eps0/(1+2 eps0), (1+eps0)/(1+2 eps0)).
std::pair<double, double> regularized_spectrum_bounds(double eps0);

} // namespace fmi

#endif
