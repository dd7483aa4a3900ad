#ifndef FMI_CLOSED_FORM_HPP
#define FMI_CLOSED_FORM_HPP

#include <map>
#include <optional>
#include <string>

#include "fmi/geometry.hpp"

namespace fmi {

/// Number of independent free fermions; scales every entropy linearly.
struct FermionCount {
    int r;

    explicit FermionCount(int r_ = 1) : r(r_) {
        if (r < 1) throw DomainError("fermion count must be >= 1");
    }
};

/// Subnet data entering closed forms only through constants:
/// global index mu >= 1 and subfactor index >= 1 with mu = index^2.
struct SubnetParams {
    double mu = 1.0;
    double index = 1.0;

    static SubnetParams trivial() { return SubnetParams{}; }
    static SubnetParams from_mu(double mu);
    static SubnetParams from_index(double index);
    /// Validates mu = index^2 to 1e-9 relative.
    static SubnetParams make(double mu, double index);
};

enum class Method { ClosedForm, Lattice, KernelTrace };

const char* method_name(Method m);

/// One computed entropy value with provenance.
struct EntropyReport {
    double value = 0.0;
    Method method = Method::ClosedForm;
    std::string inputs;
    std::map<std::string, double> diagnostics;
};

/// The additive interval function G:
///   G(I) = (r/6) [ sum_{i,j} ln d(b_i, a_j)
///                  - sum_{i<j} ln d(a_i, a_j) - sum_{i<j} ln d(b_i, b_j) ],
/// with d the line or chordal circle distance and G(empty) = 0.
double g_value(const MultiInterval& I, FermionCount r);

/// Mutual information F(A, B) = G(A) + G(B) - G(A u B) - G(A n B).
/// For disjoint closures the intersection term vanishes; overlapping
/// interiors use the general combination; touching closures throw.
/// On the circle a union covering everything contributes G = 0.
EntropyReport mutual_information_exact(const MultiInterval& A, const MultiInterval& B,
                                       FermionCount r);

/// Extended mutual information F(A u B, A u C) for pairwise disjoint
/// A, B, C, evaluated through
///   F(A, B u C) + F(B, C) - F(A, C) - F(A, B).
/// Equals F(A u B, C) - F(A, C) and is nonnegative and monotone in B, C.
double extended_mi(const MultiInterval& A, const MultiInterval& B, const MultiInterval& C,
                   FermionCount r);

/// F(eta) - F(1 - eta) = -(r/6) ln(eta / (1 - eta)) for 0 < eta < 1.
double duality_gap(double eta, FermionCount r);

/// Leading behaviour of F(B, C) for B = (a1, a2 - eps), C = (a2, b2):
///   (r/6)(ln|a2-a1| + ln|b2-a2| - ln|b2-a1| - ln eps) - (1/2) ln mu.
/// The o(eps) remainder is dropped.
double singular_limit_mi(double a1, double a2, double b2, double eps, FermionCount r,
                         const SubnetParams& sub);

/// Limit value of the relative-entropy difference across a finite-index
/// subnet: ln(index) = (1/2) ln mu.
double index_limit(const SubnetParams& sub);

/// Builds a line configuration A = (0, x), B = (1, 2) realizing any
/// requested cross ratio eta in (0, 1).
std::pair<MultiInterval, MultiInterval> configuration_with_cross_ratio(double eta);

} // namespace fmi

#endif
