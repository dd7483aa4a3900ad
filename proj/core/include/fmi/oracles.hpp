#ifndef FMI_ORACLES_HPP
#define FMI_ORACLES_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fmi/errors.hpp"
#include "fmi/rng.hpp"

namespace fmi {

/// Positive semidefinite, unit-trace Hermitian matrix.
class DensityMatrix {
public:
    explicit DensityMatrix(Eigen::MatrixXcd rho);

    int dim() const { return static_cast<int>(rho_.rows()); }
    const Eigen::MatrixXcd& matrix() const { return rho_; }

private:
    Eigen::MatrixXcd rho_;
};

/// S(rho) = -tr(rho ln rho) >= 0; zero exactly on pure states.
double von_neumann_entropy(const DensityMatrix& rho);

/// Araki relative entropy at finite dimension,
///   S(rho, sigma) = tr(rho ln rho - rho ln sigma),
/// for positive semidefinite sigma (unit trace not required; the scaling
/// rule gives S(rho, lambda rho) = -ln lambda). Returns +infinity when the
/// support of rho is not contained in the support of sigma.
double relative_entropy(const DensityMatrix& rho, const Eigen::MatrixXcd& sigma);

/// Trace over the factors of dims with keep[i] == false.
Eigen::MatrixXcd partial_trace(const Eigen::MatrixXcd& rho, std::span<const int> dims,
                               std::span<const bool> keep);

/// S(rho_A) + S(rho_B) - S(rho_AB) on a dA x dB bipartite state; equals the
/// relative entropy against the product of marginals.
double mutual_information_density(const DensityMatrix& rho_ab, int dA, int dB);

/// Strong subadditivity combination
///   S(rho_AB) + S(rho_AC) - S(rho_A) - S(rho_ABC) >= 0.
double ssa_gap(const DensityMatrix& rho_abc, int dA, int dB, int dC);

/// Smallest eigenvalue of p f(A) p - p f(pAp) p on range(p), f(t) = t ln t;
/// nonnegative by operator convexity. A positive definite, p a projection.
double sherman_davis_gap(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& p);

/// Midpoint joint-convexity gap of
///   Phi(A, B) = tr(K* A ln A K - K* A K ln B):
/// returns (Phi(A1,B1) + Phi(A2,B2))/2 - Phi((A1+A2)/2, (B1+B2)/2) >= 0.
double lieb_convexity_gap(const Eigen::MatrixXcd& A1, const Eigen::MatrixXcd& B1,
                          const Eigen::MatrixXcd& A2, const Eigen::MatrixXcd& B2,
                          const Eigen::MatrixXcd& K);

/// tr(A(ln A - ln B)) - tr(A_p(ln A_p - ln B_p)) with B = P1 A P1 + P2 A P2
/// and X_p = pXp on range(p); requires [p, P1] = 0 and A > 0. Nonnegative.
double theorem_ab_gap(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& P1,
                      const Eigen::MatrixXcd& p);

/// Piecewise-constant variational path: x is held fixed on [t_i, t_{i+1})
/// over knots starting at t_0 = 1/resolution, is the last knot value on
/// [t_last, horizon] and vanishes beyond the horizon.
struct StepPath {
    struct Knot {
        double t;
        Eigen::MatrixXcd x;
    };
    std::vector<Knot> knots;
    double horizon = 0.0;    // m
    double resolution = 0.0; // k

    /// Scalar family x(t) = lambda/(lambda + t) I sampled on a geometric
    /// grid; refining the grid approaches the continuum value.
    static StepPath scalar_family(double lambda, double resolution, double horizon, int dim,
                                  double grid_ratio = 1.0005);

    void validate(int dim) const;
};

/// Variational lower bound on the relative entropy:
///   ln k - Int_{1/k}^inf [ tr(rho x_t* x_t)/t + tr(sigma y_t y_t*)/t^2 ] dt,
/// with y_t = 1 - x_t; segments integrate in closed form and the tail
/// beyond the horizon contributes tr(sigma)/horizon.
double kosaki_lower_bound(const DensityMatrix& rho, const Eigen::MatrixXcd& sigma,
                          const StepPath& path);

/// S(rho, sigma) - S(rho_A, sigma_A) >= 0 under the partial trace over B.
double monotonicity_gap(const DensityMatrix& rho, const DensityMatrix& sigma, int dA, int dB);

/// Checks sigma >= mu rho, then verifies S(rho, sigma) <= ln(1/mu) + 1e-9.
bool dominance_bound_check(const DensityMatrix& rho, const DensityMatrix& sigma, double mu);

struct AuditResult {
    std::string inequality;
    int trials = 0;
    double min_gap = 0.0;
    std::uint64_t argmin_seed = 0;
};

/// Seeded randomized audits of every inequality above; min_gap must stay
/// above -1e-9 (dominance reports ln(1/mu) - S as its gap).
std::vector<AuditResult> run_inequality_audits(int trials, std::uint64_t seed);

} // namespace fmi

#endif
