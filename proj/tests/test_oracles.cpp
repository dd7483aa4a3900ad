#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "doctest.h"
#include "fmi/oracles.hpp"

using namespace fmi;
using Eigen::MatrixXcd;

namespace {

MatrixXcd diag2(double a, double b) {
    MatrixXcd m = MatrixXcd::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
    MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

MatrixXcd bell_pair() {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
    psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
    return psi * psi.adjoint();
}

} // namespace

TEST_CASE("von Neumann entropy basics") {
    CHECK(von_neumann_entropy(DensityMatrix(diag2(1, 0))) == doctest::Approx(0.0));
    CHECK(von_neumann_entropy(DensityMatrix(diag2(0.5, 0.5))) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(von_neumann_entropy(DensityMatrix(diag2(0.9, 0.1))) ==
          doctest::Approx(-0.9 * std::log(0.9) - 0.1 * std::log(0.1)).epsilon(1e-14));

    CHECK_THROWS_AS(DensityMatrix(diag2(0.9, 0.2)), InvalidDensityMatrix);
    CHECK_THROWS_AS(DensityMatrix(diag2(1.3, -0.3)), InvalidDensityMatrix);
}

TEST_CASE("relative entropy values and support convention") {
    const DensityMatrix rho(diag2(0.7, 0.3));
    CHECK(relative_entropy(rho, rho.matrix()) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(relative_entropy(rho, 0.3 * rho.matrix()) ==
          doctest::Approx(-std::log(0.3)).epsilon(1e-13));
    CHECK(relative_entropy(rho, diag2(0.5, 0.5)) ==
          doctest::Approx(0.7 * std::log(1.4) + 0.3 * std::log(0.6)).epsilon(1e-13));

    // Support violation diverges.
    const DensityMatrix pure(diag2(1, 0));
    CHECK(std::isinf(relative_entropy(pure, diag2(0, 1))));
    // Swapped support direction is fine.
    CHECK(std::isfinite(relative_entropy(pure, diag2(0.5, 0.5))));

    CHECK_THROWS_AS(relative_entropy(rho, MatrixXcd::Identity(3, 3)), DimensionMismatch);

    // Nonzero separation means strictly positive relative entropy.
    Rng rng(42);
    for (int it = 0; it < 20; ++it) {
        const DensityMatrix a(random_density(rng, 3));
        const DensityMatrix b(random_density(rng, 3));
        CHECK(relative_entropy(a, b.matrix()) > 1e-6);
    }
}

TEST_CASE("mutual information of density matrices") {
    const MatrixXcd prod = kron(diag2(0.6, 0.4), diag2(0.2, 0.8));
    CHECK(mutual_information_density(DensityMatrix(prod), 2, 2) ==
          doctest::Approx(0.0).epsilon(1e-12));

    CHECK(mutual_information_density(DensityMatrix(bell_pair()), 2, 2) ==
          doctest::Approx(2 * std::log(2.0)).epsilon(1e-12));

    // Equality with the relative entropy against the product of marginals.
    Rng rng(7);
    for (int it = 0; it < 25; ++it) {
        const DensityMatrix rho(random_density(rng, 4));
        const int dims[] = {2, 2};
        const bool keep_a[] = {true, false};
        const bool keep_b[] = {false, true};
        const MatrixXcd pa = partial_trace(rho.matrix(), dims, keep_a);
        const MatrixXcd pb = partial_trace(rho.matrix(), dims, keep_b);
        const double mi = mutual_information_density(rho, 2, 2);
        CHECK(mi == doctest::Approx(relative_entropy(rho, kron(pa, pb))).epsilon(1e-10));
        CHECK(mi >= -1e-10);
    }

    CHECK_THROWS_AS(mutual_information_density(DensityMatrix(bell_pair()), 2, 3),
                    DimensionMismatch);
}

TEST_CASE("partial trace on explicit data") {
    MatrixXcd rho = MatrixXcd::Zero(4, 4);
    rho(0, 0) = 0.8;
    rho(1, 1) = 0.1;
    rho(3, 3) = 0.1;
    rho(0, 3) = rho(3, 0) = 0.05;
    const int dims[] = {2, 2};
    const bool keep_a[] = {true, false};
    const MatrixXcd pa = partial_trace(rho, dims, keep_a);
    CHECK(pa(0, 0).real() == doctest::Approx(0.9));
    CHECK(pa(1, 1).real() == doctest::Approx(0.1));
    CHECK(std::abs(pa(0, 1)) == doctest::Approx(0.0));
}

TEST_CASE("strong subadditivity gap") {
    // Three uncorrelated pure qubits.
    const MatrixXcd pure3 = kron(kron(diag2(1, 0), diag2(1, 0)), diag2(0, 1));
    CHECK(ssa_gap(DensityMatrix(pure3), 2, 2, 2) == doctest::Approx(0.0).epsilon(1e-12));

    // rho_A tensor (entangled BC): the gap is 2 S(rho_B).
    const MatrixXcd rho = kron(diag2(0.3, 0.7), bell_pair());
    CHECK(ssa_gap(DensityMatrix(rho), 2, 2, 2) ==
          doctest::Approx(2 * std::log(2.0)).epsilon(1e-10));

    Rng rng(99);
    for (int it = 0; it < 50; ++it)
        CHECK(ssa_gap(DensityMatrix(random_density(rng, 8)), 2, 2, 2) >= -1e-10);
}

TEST_CASE("Sherman-Davis gap") {
    Rng rng(11);
    const int d = 6;
    const MatrixXcd A = random_positive_definite(rng, d, 1e-3);
    CHECK(sherman_davis_gap(A, MatrixXcd::Identity(d, d)) == doctest::Approx(0.0).epsilon(1e-10));

    // p commuting with A: compress in A's eigenbasis.
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(A);
    MatrixXcd p = MatrixXcd::Zero(d, d);
    for (int i = 0; i < 3; ++i)
        p += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
    CHECK(sherman_davis_gap(A, p) == doctest::Approx(0.0).epsilon(1e-9));

    for (int it = 0; it < 50; ++it) {
        const MatrixXcd a = random_positive_definite(rng, d, 1e-3);
        const MatrixXcd proj = random_projection(rng, d, 3);
        CHECK(sherman_davis_gap(a, proj) >= -1e-10);
    }
}

TEST_CASE("Lieb convexity gap") {
    Rng rng(13);
    const MatrixXcd A = random_positive_definite(rng, 5, 1e-3);
    const MatrixXcd B = random_positive_definite(rng, 5, 1e-3);
    const MatrixXcd K = random_gaussian_matrix(rng, 5, 5);
    CHECK(lieb_convexity_gap(A, B, A, B, K) == doctest::Approx(0.0).epsilon(1e-10));

    // Commuting diagonal family reduces to scalar convexity of a ln a - a ln b.
    auto scalar_phi = [](const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                         const Eigen::VectorXd& w) {
        double s = 0.0;
        for (int i = 0; i < a.size(); ++i) s += w[i] * (a[i] * std::log(a[i] / b[i]));
        return s;
    };
    Eigen::VectorXd a1(3), b1(3), a2(3), b2(3), w(3);
    a1 << 0.5, 1.5, 2.0;
    b1 << 1.0, 0.7, 0.9;
    a2 << 2.5, 0.4, 1.1;
    b2 << 0.6, 1.8, 1.4;
    w << 1.0, 0.25, 4.0;
    MatrixXcd K3 = MatrixXcd::Zero(3, 3);
    for (int i = 0; i < 3; ++i) K3(i, i) = std::sqrt(w[i]);
    const double matrix_gap =
        lieb_convexity_gap(a1.cast<std::complex<double>>().asDiagonal(),
                           b1.cast<std::complex<double>>().asDiagonal(),
                           a2.cast<std::complex<double>>().asDiagonal(),
                           b2.cast<std::complex<double>>().asDiagonal(), K3);
    const double scalar_gap = 0.5 * (scalar_phi(a1, b1, w) + scalar_phi(a2, b2, w)) -
                              scalar_phi(0.5 * (a1 + a2), 0.5 * (b1 + b2), w);
    CHECK(matrix_gap == doctest::Approx(scalar_gap).epsilon(1e-11));
    CHECK(matrix_gap >= 0.0);

    for (int it = 0; it < 50; ++it) {
        const MatrixXcd x1 = random_positive_definite(rng, 5, 1e-3);
        const MatrixXcd y1 = random_positive_definite(rng, 5, 1e-3);
        const MatrixXcd x2 = random_positive_definite(rng, 5, 1e-3);
        const MatrixXcd y2 = random_positive_definite(rng, 5, 1e-3);
        const MatrixXcd k = random_gaussian_matrix(rng, 5, 5);
        CHECK(lieb_convexity_gap(x1, y1, x2, y2, k) >= -1e-10);
    }
}

TEST_CASE("pinching inequality gap") {
    Rng rng(17);
    const int d = 8;
    const MatrixXcd A = random_positive_definite(rng, d, 1e-3);
    MatrixXcd P1 = MatrixXcd::Zero(d, d);
    for (int i = 0; i < 4; ++i) P1(i, i) = 1.0;
    CHECK(theorem_ab_gap(A, P1, MatrixXcd::Identity(d, d)) == doctest::Approx(0.0).epsilon(1e-9));

    // Block-diagonal A makes B = A, so both traces vanish.
    MatrixXcd blockA = A;
    blockA.topRightCorner(4, 4).setZero();
    blockA.bottomLeftCorner(4, 4).setZero();
    MatrixXcd p = MatrixXcd::Zero(d, d);
    for (int i : {0, 1, 4, 5}) p(i, i) = 1.0;
    CHECK(theorem_ab_gap(blockA, P1, p) == doctest::Approx(0.0).epsilon(1e-10));

    // Non-commuting p is rejected.
    CHECK_THROWS_AS(theorem_ab_gap(A, random_projection(rng, d, 4), random_projection(rng, d, 4)),
                    DomainError);

    for (int it = 0; it < 30; ++it) {
        const MatrixXcd u = random_unitary(rng, d);
        Eigen::VectorXd d1 = Eigen::VectorXd::Zero(d);
        d1.head(4).setOnes();
        Eigen::VectorXd dp = Eigen::VectorXd::Zero(d);
        for (int i : {0, 2, 5, 7}) dp[i] = 1.0;
        const MatrixXcd proj1 = u * d1.asDiagonal() * u.adjoint();
        const MatrixXcd projp = u * dp.asDiagonal() * u.adjoint();
        const MatrixXcd a = random_positive_definite(rng, d, 1e-3);
        CHECK(theorem_ab_gap(a, proj1, projp) >= -1e-10);
    }
}

TEST_CASE("Kosaki lower bound") {
    Rng rng(1234);
    const DensityMatrix rho(random_density(rng, 2));

    // Scalar path against sigma = lambda rho reproduces -ln(lambda + 1/k).
    const double lambda = 0.3;
    for (double k : {10.0, 100.0}) {
        const StepPath path = StepPath::scalar_family(lambda, k, 2000.0, 2);
        const double bound = kosaki_lower_bound(rho, lambda * rho.matrix(), path);
        CHECK(bound == doctest::Approx(-std::log(lambda + 1.0 / k)).epsilon(1e-7));
    }

    // The all-zero path integrates in closed form to ln k - k tr(sigma).
    StepPath zero;
    zero.resolution = 10.0;
    zero.horizon = 50.0;
    zero.knots.push_back({0.1, Eigen::MatrixXcd::Zero(2, 2)});
    const DensityMatrix sigma(random_density(rng, 2));
    CHECK(kosaki_lower_bound(rho, sigma.matrix(), zero) ==
          doctest::Approx(std::log(10.0) - 10.0).epsilon(1e-12));

    // Any scalar path stays below the relative entropy.
    for (int it = 0; it < 100; ++it) {
        const DensityMatrix r1(random_density(rng, 2));
        const DensityMatrix s1(random_density(rng, 2));
        const double rel = relative_entropy(r1, s1.matrix());
        for (double lam : {0.5, 1.0, 2.0}) {
            const StepPath path = StepPath::scalar_family(lam, 50.0, 200.0, 2, 1.01);
            CHECK(kosaki_lower_bound(r1, s1.matrix(), path) <= rel + 1e-9);
        }
    }

    // Path validation.
    StepPath bad;
    bad.resolution = 10.0;
    bad.horizon = 5.0;
    bad.knots.push_back({0.5, Eigen::MatrixXcd::Zero(2, 2)});
    CHECK_THROWS_AS(kosaki_lower_bound(rho, rho.matrix(), bad), InvalidPath);
    StepPath empty;
    empty.resolution = 10.0;
    empty.horizon = 50.0;
    CHECK_THROWS_AS(kosaki_lower_bound(rho, rho.matrix(), empty), InvalidPath);
}

TEST_CASE("monotonicity under partial trace") {
    Rng rng(31);
    const DensityMatrix rho(random_density(rng, 4));
    CHECK(monotonicity_gap(rho, rho, 2, 2) == doctest::Approx(0.0).epsilon(1e-11));

    // Product states with equal A factors: the gap is the relative entropy
    // of the B factors, by additivity over tensor factors.
    const DensityMatrix ra(random_density(rng, 2)), rb(random_density(rng, 2));
    const DensityMatrix sb(random_density(rng, 2));
    const DensityMatrix rho_q(kron(ra.matrix(), rb.matrix()));
    const DensityMatrix sigma_q(kron(ra.matrix(), sb.matrix()));
    CHECK(monotonicity_gap(rho_q, sigma_q, 2, 2) ==
          doctest::Approx(relative_entropy(rb, sb.matrix())).epsilon(1e-10));

    for (int it = 0; it < 50; ++it) {
        const DensityMatrix r1(random_density(rng, 4));
        const DensityMatrix s1(random_density(rng, 4));
        CHECK(monotonicity_gap(r1, s1, 2, 2) >= -1e-10);
    }
}

TEST_CASE("dominance bound") {
    Rng rng(3);
    const DensityMatrix rho(random_density(rng, 3));
    CHECK(dominance_bound_check(rho, rho, 1.0));

    const MatrixXcd mix = 0.5 * (rho.matrix() + MatrixXcd::Identity(3, 3) / 3.0);
    CHECK(dominance_bound_check(rho, DensityMatrix(mix), 0.5));

    // mu too large for domination.
    const DensityMatrix sigma(random_density(rng, 3));
    CHECK_THROWS_AS(dominance_bound_check(rho, sigma, 1.0), DomainError);
    CHECK_THROWS_AS(dominance_bound_check(rho, rho, 1.5), DomainError);
}

TEST_CASE("audit driver is deterministic and clean") {
    const auto a = run_inequality_audits(40, 20240801);
    const auto b = run_inequality_audits(40, 20240801);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].inequality == b[i].inequality);
        CHECK(a[i].min_gap == b[i].min_gap);
        CHECK(a[i].argmin_seed == b[i].argmin_seed);
        CHECK(a[i].min_gap >= -1e-9);
    }
    const auto c = run_inequality_audits(40, 1);
    bool any_diff = false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].min_gap != c[i].min_gap) any_diff = true;
    CHECK(any_diff);
}
