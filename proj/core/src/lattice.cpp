#include "fmi/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace fmi {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSpectrumTol = 1e-10;

double binary_entropy(double nu) {
    double s = 0.0;
    for (double v : {nu, 1.0 - nu})
        if (v > 0.0) s -= v * std::log(v);
    return s;
}

std::vector<double> restricted_spectrum(const CovarianceMatrix& C, const SiteRegion& R) {
    const auto& idx = R.indices();
    const int n = static_cast<int>(idx.size());
    Eigen::MatrixXcd sub(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) sub(i, j) = C.matrix()(idx[i], idx[j]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sub, Eigen::EigenvaluesOnly);
    std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + n);
    for (double& nu : out) {
        if (nu < -kSpectrumTol || nu > 1.0 + kSpectrumTol) {
            std::ostringstream os;
            os << "covariance eigenvalue " << nu << " outside [0,1] window";
            throw SpectrumOutOfRange(os.str());
        }
        nu = std::clamp(nu, 0.0, 1.0);
    }
    return out;
}

// Second difference of z ln|z|; the linear parts cancel.
double cell_overlap(long d) {
    auto lam = [](long z) { return z == 0 ? 0.0 : z * std::log(std::abs(double(z))); };
    return lam(d + 1) - 2.0 * lam(d) + lam(d - 1);
}

double chain_entry(long d) {
    if (d == 0) return 0.5;
    return std::sin(kPi * d / 2.0) / (kPi * d);
}

} // namespace

CovarianceMatrix::CovarianceMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols())
        throw DomainError("covariance matrix must be square");
    if (entries_.rows() < 1) throw DomainError("covariance matrix must be nonempty");
    const double asym = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * std::max(1.0, entries_.cwiseAbs().maxCoeff()))
        throw DomainError("covariance matrix must be Hermitian");
}

void CovarianceMatrix::validate_spectrum() const {
    std::vector<int> all(dim());
    for (int i = 0; i < dim(); ++i) all[i] = i;
    restricted_spectrum(*this, SiteRegion::of(all));
}

CovarianceMatrix build_half_filled_covariance(int N) {
    if (N < 1) throw DomainError("chain length must be >= 1");
    Eigen::MatrixXcd C(N, N);
    for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k) C(j, k) = chain_entry(j - k);
    return CovarianceMatrix(std::move(C));
}

CovarianceMatrix build_half_filled_covariance_on(std::span<const long> sites) {
    const int n = static_cast<int>(sites.size());
    if (n < 1) throw DomainError("site list must be nonempty");
    Eigen::MatrixXcd C(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) C(a, b) = chain_entry(sites[a] - sites[b]);
    return CovarianceMatrix(std::move(C));
}

CovarianceMatrix build_hardy_cell_covariance(std::span<const long> cells) {
    const int n = static_cast<int>(cells.size());
    if (n < 1) throw DomainError("cell list must be nonempty");
    Eigen::MatrixXcd C(n, n);
    const std::complex<double> coeff(0.0, -1.0 / (2.0 * kPi));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const long d = cells[a] - cells[b];
            C(a, b) = d == 0 ? std::complex<double>(0.5, 0.0) : coeff * cell_overlap(d);
        }
    return CovarianceMatrix(std::move(C));
}

SiteRegion SiteRegion::of(std::vector<int> indices) {
    std::sort(indices.begin(), indices.end());
    for (std::size_t i = 0; i + 1 < indices.size(); ++i)
        if (indices[i] == indices[i + 1]) throw DomainError("site indices must be unique");
    for (int i : indices)
        if (i < 0) throw DomainError("site indices must be nonnegative");
    SiteRegion r;
    r.indices_ = std::move(indices);
    return r;
}

SiteRegion SiteRegion::unite(const SiteRegion& other) const {
    std::vector<int> merged;
    merged.reserve(indices_.size() + other.indices_.size());
    std::merge(indices_.begin(), indices_.end(), other.indices_.begin(), other.indices_.end(),
               std::back_inserter(merged));
    return SiteRegion::of(std::move(merged));
}

bool SiteRegion::intersects(const SiteRegion& other) const {
    auto it = indices_.begin();
    auto jt = other.indices_.begin();
    while (it != indices_.end() && jt != other.indices_.end()) {
        if (*it == *jt) return true;
        if (*it < *jt)
            ++it;
        else
            ++jt;
    }
    return false;
}

double region_entropy(const CovarianceMatrix& C, const SiteRegion& R) {
    if (R.empty()) return 0.0;
    if (!R.indices().empty() && R.indices().back() >= C.dim())
        throw DomainError("site region exceeds covariance dimension");
    double s = 0.0;
    for (double nu : restricted_spectrum(C, R)) s += binary_entropy(nu);
    return s;
}

EntropyReport mutual_information_lattice(const CovarianceMatrix& C, const SiteRegion& A,
                                         const SiteRegion& B) {
    if (A.intersects(B)) throw RegionsOverlap("lattice regions share sites");
    const double sa = region_entropy(C, A);
    const double sb = region_entropy(C, B);
    const double sab = region_entropy(C, A.unite(B));
    EntropyReport rep;
    rep.value = sa + sb - sab;
    rep.method = Method::Lattice;
    rep.inputs = "|A|=" + std::to_string(A.size()) + " |B|=" + std::to_string(B.size()) +
                 " N=" + std::to_string(C.dim());
    rep.diagnostics["S_A"] = sa;
    rep.diagnostics["S_B"] = sb;
    rep.diagnostics["S_AB"] = sab;
    return rep;
}

namespace {

std::vector<long> cells_for(const MultiInterval& I, int scale) {
    std::vector<long> cells;
    for (const auto& p : I.parts()) {
        const double ja = p.a * scale;
        const double jb = p.b * scale;
        if (std::abs(ja - std::llround(ja)) > 1e-6 || std::abs(jb - std::llround(jb)) > 1e-6)
            throw DomainError("interval endpoints must be multiples of the lattice spacing");
        const long lo = std::llround(ja);
        const long hi = std::llround(jb);
        if (hi <= lo) throw DomainError("interval maps to no lattice sites at this scale");
        for (long j = lo; j < hi; ++j) cells.push_back(j);
    }
    return cells;
}

} // namespace

std::vector<ConvergenceRow> convergence_study(const MultiInterval& A, const MultiInterval& B,
                                              std::span<const int> scales, FermionCount r,
                                              LatticeKernel kernel) {
    if (A.geometry() != Geometry::Line || B.geometry() != Geometry::Line)
        throw DomainError("convergence study works on line intervals");
    if (A.empty() || B.empty()) throw DomainError("convergence study needs nonempty regions");

    double mi_closed = mutual_information_exact(A, B, r).value;
    if (!multi_intersection(A, B).empty())
        throw RegionsOverlap("convergence study requires disjoint regions");
    if (kernel == LatticeKernel::HoppingChain) mi_closed *= 2.0; // both Fermi points

    std::vector<ConvergenceRow> rows;
    rows.reserve(scales.size());
    for (int scale : scales) {
        if (scale < 1) throw DomainError("scales must be positive");
        const std::vector<long> ca = cells_for(A, scale);
        const std::vector<long> cb = cells_for(B, scale);
        std::vector<long> all(ca);
        all.insert(all.end(), cb.begin(), cb.end());
        std::sort(all.begin(), all.end());

        const CovarianceMatrix C = kernel == LatticeKernel::HardyCells
                                       ? build_hardy_cell_covariance(all)
                                       : build_half_filled_covariance_on(all);

        auto positions = [&all](const std::vector<long>& cells) {
            std::vector<int> pos;
            pos.reserve(cells.size());
            for (long c : cells) {
                const auto it = std::lower_bound(all.begin(), all.end(), c);
                pos.push_back(static_cast<int>(it - all.begin()));
            }
            return SiteRegion::of(std::move(pos));
        };
        const SiteRegion ra = positions(ca);
        const SiteRegion rb = positions(cb);

        ConvergenceRow row;
        row.scale = scale;
        row.sites_A = static_cast<int>(ca.size());
        row.sites_B = static_cast<int>(cb.size());
        row.S_A = region_entropy(C, ra);
        row.S_B = region_entropy(C, rb);
        row.S_AB = region_entropy(C, ra.unite(rb));
        row.mi_lattice = r.r * (row.S_A + row.S_B - row.S_AB);
        row.mi_closed = mi_closed;
        row.rel_error = (row.mi_lattice - mi_closed) / mi_closed;
        rows.push_back(row);
    }
    return rows;
}

} // namespace fmi
