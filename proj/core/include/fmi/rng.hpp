#ifndef FMI_RNG_HPP
#define FMI_RNG_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>

namespace fmi {

/// splitmix64 step; used to derive independent per-trial seeds.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream);

/// mt19937_64 with explicit uniform/normal transforms (Box-Muller on the
/// raw 53-bit mantissa), so streams do not depend on the standard library's
/// unspecified distribution algorithms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform(); // in (0, 1)
    double uniform(double lo, double hi);
    double normal();
    std::complex<double> cnormal();
    std::uint64_t bits() { return eng_(); }

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

Eigen::MatrixXcd random_gaussian_matrix(Rng& rng, int rows, int cols);
/// G G* / tr(G G*): a random full-rank density matrix.
Eigen::MatrixXcd random_density(Rng& rng, int d);
/// G G* + eps I: strictly positive definite.
Eigen::MatrixXcd random_positive_definite(Rng& rng, int d, double eps);
/// Orthogonal projection onto a Haar-ish random rank-r subspace.
Eigen::MatrixXcd random_projection(Rng& rng, int d, int rank);
Eigen::MatrixXcd random_unitary(Rng& rng, int d);

} // namespace fmi

#endif
