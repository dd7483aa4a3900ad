#ifndef FMI_LATTICE_HPP
#define FMI_LATTICE_HPP

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "fmi/closed_form.hpp"
#include "fmi/geometry.hpp"

namespace fmi {

/// Hermitian matrix with spectrum in [0, 1]; the discrete analog of the
/// Hardy-projection covariance. Hermiticity is checked on construction;
/// the spectrum window [-1e-10, 1+1e-10] is enforced wherever eigenvalues
/// are consumed (region_entropy, validate_spectrum).
class CovarianceMatrix {
public:
    explicit CovarianceMatrix(Eigen::MatrixXcd entries);

    int dim() const { return static_cast<int>(entries_.rows()); }
    const Eigen::MatrixXcd& matrix() const { return entries_; }

    /// Full eigensolve with the range check; throws SpectrumOutOfRange.
    void validate_spectrum() const;

private:
    Eigen::MatrixXcd entries_;
};

/// Ground-state correlator of the half-filled hopping chain on N sites:
/// C_jk = sin(pi (j-k)/2) / (pi (j-k)), C_jj = 1/2. Real symmetric
/// Toeplitz. Carries both Fermi points of the lattice band, so block
/// mutual information scales to twice the single-chirality closed form.
CovarianceMatrix build_half_filled_covariance(int N);

/// Compression p C p of the continuum Hardy projection onto normalized
/// indicator functions of unit cells [j d, (j+1) d); entries depend only on
/// the integer cell offsets, not on the cell width. Spectrum lies in [0, 1]
/// by construction and block mutual information converges to the
/// single-chirality closed form as cells shrink.
CovarianceMatrix build_hardy_cell_covariance(std::span<const long> cells);

/// Half-filled chain correlator sampled on an arbitrary subset of sites.
CovarianceMatrix build_half_filled_covariance_on(std::span<const long> sites);

/// Sorted set of site indices in [0, dim).
class SiteRegion {
public:
    SiteRegion() = default;
    static SiteRegion of(std::vector<int> indices);

    const std::vector<int>& indices() const { return indices_; }
    bool empty() const { return indices_.empty(); }
    std::size_t size() const { return indices_.size(); }

    SiteRegion unite(const SiteRegion& other) const;
    bool intersects(const SiteRegion& other) const;

private:
    std::vector<int> indices_;
};

/// S(R) = -sum_nu [nu ln nu + (1 - nu) ln(1 - nu)] over the eigenvalues of
/// the restriction C|_R, with 0 ln 0 = 0. Eigenvalues outside
/// [-1e-10, 1+1e-10] throw SpectrumOutOfRange; in-window values clamp.
double region_entropy(const CovarianceMatrix& C, const SiteRegion& R);

/// S(A) + S(B) - S(A u B) for disjoint site sets.
EntropyReport mutual_information_lattice(const CovarianceMatrix& C, const SiteRegion& A,
                                         const SiteRegion& B);

enum class LatticeKernel { HardyCells, HoppingChain };

struct ConvergenceRow {
    int scale = 0;
    int sites_A = 0;
    int sites_B = 0;
    double S_A = 0.0;
    double S_B = 0.0;
    double S_AB = 0.0;
    double mi_lattice = 0.0;
    double mi_closed = 0.0;
    double rel_error = 0.0;
};

/// Discretizes the line regions A, B at each scale (sites per unit length),
/// computes the lattice mutual information and compares it with the value
/// the discretization converges to: the closed form for HardyCells, twice
/// the closed form for the doubled HoppingChain. Interval endpoints must be
/// integer multiples of the lattice spacing; a site [j d, (j+1) d) belongs
/// to an interval when it lies fully inside.
std::vector<ConvergenceRow> convergence_study(const MultiInterval& A, const MultiInterval& B,
                                              std::span<const int> scales, FermionCount r,
                                              LatticeKernel kernel = LatticeKernel::HardyCells);

} // namespace fmi

#endif
