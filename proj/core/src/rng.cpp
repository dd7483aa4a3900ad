#include "fmi/rng.hpp"

#include <cmath>
#include <numbers>

#include "fmi/errors.hpp"

namespace fmi {

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform() {
    return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

std::complex<double> Rng::cnormal() {
    constexpr double inv_sqrt2 = 0.7071067811865476;
    return {normal() * inv_sqrt2, normal() * inv_sqrt2};
}

Eigen::MatrixXcd random_gaussian_matrix(Rng& rng, int rows, int cols) {
    Eigen::MatrixXcd m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = rng.cnormal();
    return m;
}

Eigen::MatrixXcd random_density(Rng& rng, int d) {
    const Eigen::MatrixXcd g = random_gaussian_matrix(rng, d, d);
    Eigen::MatrixXcd rho = g * g.adjoint();
    rho /= rho.trace().real();
    // Symmetrize away the last bits of rounding.
    return 0.5 * (rho + rho.adjoint().eval());
}

Eigen::MatrixXcd random_positive_definite(Rng& rng, int d, double eps) {
    if (!(eps >= 0.0)) throw DomainError("positive-definite level must be >= 0");
    const Eigen::MatrixXcd g = random_gaussian_matrix(rng, d, d);
    Eigen::MatrixXcd a = g * g.adjoint() + eps * Eigen::MatrixXcd::Identity(d, d);
    return 0.5 * (a + a.adjoint().eval());
}

Eigen::MatrixXcd random_projection(Rng& rng, int d, int rank) {
    if (rank < 0 || rank > d) throw DomainError("projection rank out of range");
    if (rank == 0) return Eigen::MatrixXcd::Zero(d, d);
    const Eigen::MatrixXcd g = random_gaussian_matrix(rng, d, rank);
    const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    const Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(d, rank);
    Eigen::MatrixXcd p = q * q.adjoint();
    return 0.5 * (p + p.adjoint().eval());
}

Eigen::MatrixXcd random_unitary(Rng& rng, int d) {
    const Eigen::MatrixXcd g = random_gaussian_matrix(rng, d, d);
    const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    return qr.householderQ() * Eigen::MatrixXcd::Identity(d, d);
}

} // namespace fmi
