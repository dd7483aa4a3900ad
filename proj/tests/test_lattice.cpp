#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fmi/kernel.hpp"
#include "fmi/lattice.hpp"
#include "fmi/rng.hpp"

using namespace fmi;

namespace {

constexpr double kPi = std::numbers::pi;

double h2(double nu) {
    double s = 0.0;
    for (double v : {nu, 1.0 - nu})
        if (v > 0) s -= v * std::log(v);
    return s;
}

SiteRegion range_region(int lo, int hi) {
    std::vector<int> idx;
    for (int i = lo; i < hi; ++i) idx.push_back(i);
    return SiteRegion::of(std::move(idx));
}

} // namespace

TEST_CASE("half-filled chain correlator entries") {
    const CovarianceMatrix C = build_half_filled_covariance(12);
    for (int j = 0; j < 12; ++j) CHECK(C.matrix()(j, j).real() == doctest::Approx(0.5));
    CHECK(C.matrix()(3, 4).real() == doctest::Approx(1.0 / kPi).epsilon(1e-14));
    CHECK(C.matrix()(3, 5).real() == doctest::Approx(0.0));
    CHECK(C.matrix()(2, 5).real() == doctest::Approx(-1.0 / (3 * kPi)).epsilon(1e-14));
    C.validate_spectrum();
}

TEST_CASE("region entropies from small eigenproblems") {
    const CovarianceMatrix C = build_half_filled_covariance(16);
    CHECK(region_entropy(C, SiteRegion()) == 0.0);
    CHECK(region_entropy(C, SiteRegion::of({4})) == doctest::Approx(std::log(2.0)).epsilon(1e-13));
    // Two adjacent sites: eigenvalues 1/2 +- 1/pi by hand.
    const double expect = h2(0.5 + 1.0 / kPi) + h2(0.5 - 1.0 / kPi);
    CHECK(region_entropy(C, SiteRegion::of({4, 5})) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(expect == doctest::Approx(0.9478932674675549).epsilon(1e-12));
}

TEST_CASE("single-site pair mutual information") {
    const CovarianceMatrix C = build_half_filled_covariance(16);
    // Even separations decouple exactly at half filling.
    const double mi2 = mutual_information_lattice(C, SiteRegion::of({0}), SiteRegion::of({2})).value;
    CHECK(std::abs(mi2) < 1e-12);
    // Odd separations carry a small positive correlation; 2x2 oracle.
    const double nu = 0.5 + 1.0 / (3 * kPi);
    const double expect = 2 * std::log(2.0) - h2(nu) - h2(1.0 - nu);
    const double mi3 = mutual_information_lattice(C, SiteRegion::of({0}), SiteRegion::of({3})).value;
    CHECK(mi3 == doctest::Approx(expect).epsilon(1e-12));
    CHECK(mi3 > 0.0);
}

TEST_CASE("lattice mutual information basics") {
    const CovarianceMatrix C = build_half_filled_covariance(40);
    const SiteRegion A = range_region(0, 8);
    const SiteRegion B = range_region(20, 28);
    const EntropyReport rep = mutual_information_lattice(C, A, B);
    CHECK(rep.method == Method::Lattice);
    CHECK(rep.value > 0.0);
    CHECK(rep.value == mutual_information_lattice(C, B, A).value);
    CHECK(mutual_information_lattice(C, A, SiteRegion()).value == 0.0);
    CHECK_THROWS_AS(mutual_information_lattice(C, A, range_region(4, 6)), RegionsOverlap);
}

TEST_CASE("independent copies double the mutual information") {
    const int n = 10;
    const CovarianceMatrix C = build_half_filled_covariance(n);
    Eigen::MatrixXcd two = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    two.topLeftCorner(n, n) = C.matrix();
    two.bottomRightCorner(n, n) = C.matrix();
    const CovarianceMatrix C2(two);

    const SiteRegion A = SiteRegion::of({0, 1, 2});
    const SiteRegion B = SiteRegion::of({6, 7});
    const SiteRegion A2 = SiteRegion::of({0, 1, 2, n + 0, n + 1, n + 2});
    const SiteRegion B2 = SiteRegion::of({6, 7, n + 6, n + 7});
    const double mi = mutual_information_lattice(C, A, B).value;
    const double mi2 = mutual_information_lattice(C2, A2, B2).value;
    CHECK(mi2 == doctest::Approx(2 * mi).epsilon(1e-12));
}

TEST_CASE("spectrum validation") {
    Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(3, 3) * 1.5;
    const CovarianceMatrix C(bad); // Hermitian, so construction passes
    CHECK_THROWS_AS(region_entropy(C, SiteRegion::of({0, 1})), SpectrumOutOfRange);

    Eigen::MatrixXcd skew(2, 2);
    skew << 0.5, 0.3, -0.3, 0.5;
    CHECK_THROWS_AS(CovarianceMatrix{skew}, DomainError);

    // Every restriction of a valid covariance stays inside [0,1].
    const CovarianceMatrix good = build_half_filled_covariance(24);
    Rng rng(17);
    for (int it = 0; it < 30; ++it) {
        std::vector<int> idx;
        for (int i = 0; i < 24; ++i)
            if (rng.bits() % 2) idx.push_back(i);
        if (idx.empty()) continue;
        CHECK_NOTHROW(region_entropy(good, SiteRegion::of(idx)));
    }
}

TEST_CASE("strong subadditivity on a 60-site chain") {
    const CovarianceMatrix C = build_half_filled_covariance(60);
    Rng rng(2024);
    for (int it = 0; it < 200; ++it) {
        std::vector<int> a, b, c;
        for (int i = 0; i < 60; ++i) {
            switch (rng.bits() % 4) {
                case 0: a.push_back(i); break;
                case 1: b.push_back(i); break;
                case 2: c.push_back(i); break;
                default: break;
            }
        }
        const SiteRegion A = SiteRegion::of(a), B = SiteRegion::of(b), Cc = SiteRegion::of(c);
        const double gap = region_entropy(C, A.unite(B)) + region_entropy(C, A.unite(Cc)) -
                           region_entropy(C, A) - region_entropy(C, A.unite(B).unite(Cc));
        REQUIRE(gap >= -1e-9);
    }
}

TEST_CASE("mutual information grows with the second region") {
    const CovarianceMatrix C = build_half_filled_covariance(48);
    const SiteRegion A = range_region(0, 10);
    double prev = 0.0;
    for (int hi = 22; hi <= 40; hi += 3) {
        const double mi = mutual_information_lattice(C, A, range_region(20, hi)).value;
        CHECK(mi >= prev - 1e-10);
        prev = mi;
    }
}

TEST_CASE("hardy cell covariance structure") {
    const std::vector<long> cells{0, 1, 2, 3, 10, 11};
    const CovarianceMatrix C = build_hardy_cell_covariance(cells);
    for (int i = 0; i < 6; ++i) CHECK(C.matrix()(i, i) == std::complex<double>(0.5, 0.0));
    // Off-diagonal entries are purely imaginary with 2 ln 2 / (2 pi) at unit offset.
    CHECK(C.matrix()(0, 1).real() == doctest::Approx(0.0));
    CHECK(std::abs(C.matrix()(0, 1).imag()) ==
          doctest::Approx(std::log(2.0) / kPi).epsilon(1e-13));
    C.validate_spectrum();

    // Regularized matrix E = (C + eps0)/(1 + 2 eps0) respects the bounds.
    const CovarianceMatrix chain = build_half_filled_covariance(64);
    const double eps0 = 0.1;
    const auto [lo, hi] = regularized_spectrum_bounds(eps0);
    Eigen::MatrixXcd E =
        (chain.matrix() + eps0 * Eigen::MatrixXcd::Identity(64, 64)) / (1 + 2 * eps0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(E, Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() >= lo - 1e-12);
    CHECK(es.eigenvalues().maxCoeff() <= hi + 1e-12);
}

TEST_CASE("convergence study approaches the closed form") {
    const auto A = MultiInterval::normalize({{0, 1}});
    const auto B = MultiInterval::normalize({{2, 3}});
    const std::vector<int> scales{25, 50, 100};
    const auto rows = convergence_study(A, B, scales, FermionCount(1));
    REQUIRE(rows.size() == 3);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].sites_A == scales[i]);
        CHECK(rows[i].sites_B == scales[i]);
        CHECK(rows[i].mi_closed == doctest::Approx(std::log(4.0 / 3.0) / 6).epsilon(1e-13));
        if (i > 0) CHECK(std::abs(rows[i].rel_error) < std::abs(rows[i - 1].rel_error));
    }
    CHECK(std::abs(rows.back().rel_error) < 0.05);

    // The doubled hopping chain converges to twice the closed form.
    const auto chain_rows =
        convergence_study(A, B, std::vector<int>{60}, FermionCount(1), LatticeKernel::HoppingChain);
    CHECK(chain_rows[0].mi_closed == doctest::Approx(std::log(4.0 / 3.0) / 3).epsilon(1e-13));
    CHECK(std::abs(chain_rows[0].rel_error) < 0.05);

    // r independent fermions scale the lattice value exactly.
    const auto r2 = convergence_study(A, B, std::vector<int>{25}, FermionCount(2));
    CHECK(r2[0].mi_lattice == doctest::Approx(2 * rows[0].mi_lattice).epsilon(1e-13));

    CHECK_THROWS_AS(convergence_study(A, MultiInterval::normalize({{2, 2.3}}),
                                      std::vector<int>{7}, FermionCount(1)),
                    DomainError); // endpoints off the lattice at this scale
    CHECK_THROWS_AS(MultiInterval::normalize({{2, 2}}), InvalidInterval);
}
