#include "fmi/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fmi {

namespace {

constexpr double kZeroEig = 1e-14;   // eigenvalues below this count as zero
constexpr double kSupportTol = 1e-12;

struct EigH {
    Eigen::VectorXd w;
    Eigen::MatrixXcd v;
};

EigH eigh(const Eigen::MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    if (es.info() != Eigen::Success) throw Error("Hermitian eigensolver failed");
    return {es.eigenvalues(), es.eigenvectors()};
}

void require_hermitian(const Eigen::MatrixXcd& m, const char* what) {
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw DomainError(std::string(what) + " must be Hermitian");
}

void require_projection(const Eigen::MatrixXcd& p, const char* what) {
    require_hermitian(p, what);
    if ((p * p - p).cwiseAbs().maxCoeff() > 1e-10)
        throw DomainError(std::string(what) + " must be an orthogonal projection");
}

// x ln x with the 0 ln 0 = 0 convention; negative dust from the solver
// counts as zero.
double xlnx(double x) {
    return x > kZeroEig ? x * std::log(x) : 0.0;
}

Eigen::MatrixXcd mat_tlnt(const Eigen::MatrixXcd& m) {
    const EigH e = eigh(m);
    Eigen::VectorXd f(e.w.size());
    for (Eigen::Index i = 0; i < e.w.size(); ++i) {
        if (e.w[i] < -1e-10) throw DomainError("t ln t applied to a non-positive matrix");
        f[i] = xlnx(e.w[i]);
    }
    return e.v * f.asDiagonal() * e.v.adjoint();
}

Eigen::MatrixXcd mat_ln_pd(const Eigen::MatrixXcd& m, const char* what) {
    const EigH e = eigh(m);
    Eigen::VectorXd f(e.w.size());
    for (Eigen::Index i = 0; i < e.w.size(); ++i) {
        if (!(e.w[i] > 0.0))
            throw DomainError(std::string(what) + " must be positive definite for ln");
        f[i] = std::log(e.w[i]);
    }
    return e.v * f.asDiagonal() * e.v.adjoint();
}

double entropy_of(const Eigen::MatrixXcd& rho) {
    const EigH e = eigh(rho);
    double s = 0.0;
    for (Eigen::Index i = 0; i < e.w.size(); ++i) s -= xlnx(e.w[i]);
    return s;
}

// Orthonormal basis of range(p) from its spectral decomposition.
Eigen::MatrixXcd range_basis(const Eigen::MatrixXcd& p) {
    const EigH e = eigh(p);
    int rank = 0;
    for (Eigen::Index i = 0; i < e.w.size(); ++i)
        if (e.w[i] > 0.5) ++rank;
    if (rank == 0) throw DomainError("projection has trivial range");
    Eigen::MatrixXcd q(p.rows(), rank);
    int c = 0;
    for (Eigen::Index i = 0; i < e.w.size(); ++i)
        if (e.w[i] > 0.5) q.col(c++) = e.v.col(i);
    return q;
}

} // namespace

DensityMatrix::DensityMatrix(Eigen::MatrixXcd rho) : rho_(std::move(rho)) {
    if (rho_.rows() != rho_.cols() || rho_.rows() < 1)
        throw InvalidDensityMatrix("density matrix must be square and nonempty");
    const double scale = std::max(1.0, rho_.cwiseAbs().maxCoeff());
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw InvalidDensityMatrix("density matrix must be Hermitian");
    if (std::abs(rho_.trace().real() - 1.0) > 1e-12 || std::abs(rho_.trace().imag()) > 1e-12)
        throw InvalidDensityMatrix("density matrix must have unit trace");
    const EigH e = eigh(rho_);
    if (e.w.minCoeff() < -1e-12)
        throw InvalidDensityMatrix("density matrix must be positive semidefinite");
}

double von_neumann_entropy(const DensityMatrix& rho) {
    return entropy_of(rho.matrix());
}

double relative_entropy(const DensityMatrix& rho, const Eigen::MatrixXcd& sigma) {
    require_hermitian(sigma, "second argument of relative entropy");
    if (sigma.rows() != rho.dim()) throw DimensionMismatch("relative entropy dimensions differ");
    const EigH er = eigh(rho.matrix());
    const EigH es = eigh(sigma);
    if (es.w.minCoeff() < -1e-12)
        throw DomainError("second argument of relative entropy must be positive semidefinite");

    // Overlap weights q_j = <v_j| rho |v_j>.
    const Eigen::MatrixXd w = (er.v.adjoint() * es.v).cwiseAbs2();
    double value = 0.0;
    for (Eigen::Index i = 0; i < er.w.size(); ++i) value += xlnx(er.w[i]);
    for (Eigen::Index j = 0; j < es.w.size(); ++j) {
        double q = 0.0;
        for (Eigen::Index i = 0; i < er.w.size(); ++i)
            if (er.w[i] > kZeroEig) q += er.w[i] * w(i, j);
        if (es.w[j] <= kZeroEig) {
            if (q > kSupportTol) return std::numeric_limits<double>::infinity();
            continue;
        }
        value -= q * std::log(es.w[j]);
    }
    return value;
}

Eigen::MatrixXcd partial_trace(const Eigen::MatrixXcd& rho, std::span<const int> dims,
                               std::span<const bool> keep) {
    if (dims.size() != keep.size()) throw DimensionMismatch("dims/keep size mismatch");
    long total = 1;
    for (int d : dims) {
        if (d < 1) throw DimensionMismatch("factor dimensions must be positive");
        total *= d;
    }
    if (rho.rows() != total || rho.cols() != total)
        throw DimensionMismatch("state dimension is not the product of the factors");

    long kept = 1;
    for (std::size_t k = 0; k < dims.size(); ++k)
        if (keep[k]) kept *= dims[k];

    const std::size_t nf = dims.size();
    std::vector<long> stride(nf, 1);
    for (std::size_t k = nf; k-- > 1;) stride[k - 1] = stride[k] * dims[k];
    std::vector<long> kstride(nf, 0);
    long acc = 1;
    for (std::size_t k = nf; k-- > 0;)
        if (keep[k]) {
            kstride[k] = acc;
            acc *= dims[k];
        }

    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(kept, kept);
    std::vector<int> di(nf), dj(nf);
    for (long i = 0; i < total; ++i) {
        long rest = i;
        for (std::size_t k = 0; k < nf; ++k) {
            di[k] = static_cast<int>(rest / stride[k]);
            rest %= stride[k];
        }
        for (long j = 0; j < total; ++j) {
            rest = j;
            bool diag = true;
            long oi = 0, oj = 0;
            for (std::size_t k = 0; k < nf; ++k) {
                dj[k] = static_cast<int>(rest / stride[k]);
                rest %= stride[k];
                if (keep[k]) {
                    oi += di[k] * kstride[k];
                    oj += dj[k] * kstride[k];
                } else if (di[k] != dj[k]) {
                    diag = false;
                }
            }
            if (diag) out(oi, oj) += rho(i, j);
        }
    }
    return out;
}

double mutual_information_density(const DensityMatrix& rho_ab, int dA, int dB) {
    if (static_cast<long>(dA) * dB != rho_ab.dim())
        throw DimensionMismatch("bipartite dims do not match the state");
    const int dims[] = {dA, dB};
    const bool keep_a[] = {true, false};
    const bool keep_b[] = {false, true};
    const Eigen::MatrixXcd ra = partial_trace(rho_ab.matrix(), dims, keep_a);
    const Eigen::MatrixXcd rb = partial_trace(rho_ab.matrix(), dims, keep_b);
    return entropy_of(ra) + entropy_of(rb) - entropy_of(rho_ab.matrix());
}

double ssa_gap(const DensityMatrix& rho_abc, int dA, int dB, int dC) {
    if (static_cast<long>(dA) * dB * dC != rho_abc.dim())
        throw DimensionMismatch("tripartite dims do not match the state");
    const int dims[] = {dA, dB, dC};
    const bool keep_ab[] = {true, true, false};
    const bool keep_ac[] = {true, false, true};
    const bool keep_a[] = {true, false, false};
    const auto& r = rho_abc.matrix();
    return entropy_of(partial_trace(r, dims, keep_ab)) +
           entropy_of(partial_trace(r, dims, keep_ac)) -
           entropy_of(partial_trace(r, dims, keep_a)) - entropy_of(r);
}

double sherman_davis_gap(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& p) {
    require_hermitian(A, "A");
    require_projection(p, "p");
    if (A.rows() != p.rows()) throw DimensionMismatch("A and p dimensions differ");
    if (eigh(A).w.minCoeff() <= 0.0) throw DomainError("A must be positive definite");
    const Eigen::MatrixXcd q = range_basis(p);
    const Eigen::MatrixXcd diff = mat_tlnt(A) - mat_tlnt(p * A * p);
    const EigH e = eigh(q.adjoint() * diff * q);
    return e.w.minCoeff();
}

double lieb_convexity_gap(const Eigen::MatrixXcd& A1, const Eigen::MatrixXcd& B1,
                          const Eigen::MatrixXcd& A2, const Eigen::MatrixXcd& B2,
                          const Eigen::MatrixXcd& K) {
    auto phi = [&K](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
        const Eigen::MatrixXcd lnb = mat_ln_pd(b, "B");
        const Eigen::MatrixXcd alna = mat_tlnt(a);
        return (K.adjoint() * alna * K - K.adjoint() * a * K * lnb).trace().real();
    };
    const double mid = phi(0.5 * (A1 + A2), 0.5 * (B1 + B2));
    return 0.5 * (phi(A1, B1) + phi(A2, B2)) - mid;
}

double theorem_ab_gap(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& P1,
                      const Eigen::MatrixXcd& p) {
    require_hermitian(A, "A");
    require_projection(P1, "P1");
    require_projection(p, "p");
    if ((p * P1 - P1 * p).cwiseAbs().maxCoeff() > 1e-10)
        throw DomainError("p must commute with P1");
    if (eigh(A).w.minCoeff() <= 0.0) throw DomainError("A must be positive definite");

    const Eigen::MatrixXcd P2 = Eigen::MatrixXcd::Identity(A.rows(), A.cols()) - P1;
    const Eigen::MatrixXcd B = P1 * A * P1 + P2 * A * P2;
    const double lhs = (A * (mat_ln_pd(A, "A") - mat_ln_pd(B, "B"))).trace().real();

    const Eigen::MatrixXcd q = range_basis(p);
    const Eigen::MatrixXcd Ap = q.adjoint() * A * q;
    const Eigen::MatrixXcd Bp = q.adjoint() * B * q;
    const double rhs = (Ap * (mat_ln_pd(Ap, "A_p") - mat_ln_pd(Bp, "B_p"))).trace().real();
    return lhs - rhs;
}

StepPath StepPath::scalar_family(double lambda, double resolution, double horizon, int dim,
                                 double grid_ratio) {
    if (!(lambda > 0.0)) throw InvalidPath("scalar family needs lambda > 0");
    if (!(grid_ratio > 1.0)) throw InvalidPath("grid ratio must exceed 1");
    StepPath path;
    path.horizon = horizon;
    path.resolution = resolution;
    const double t0 = 1.0 / resolution;
    if (!(t0 < horizon)) throw InvalidPath("horizon must exceed 1/resolution");
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
    double t = t0;
    while (t < horizon) {
        const double next = std::min(t * grid_ratio, horizon);
        const double mid = std::sqrt(t * next);
        path.knots.push_back({t, (lambda / (lambda + mid)) * id});
        t = next;
    }
    return path;
}

void StepPath::validate(int dim) const {
    if (knots.empty()) throw InvalidPath("step path needs at least one knot");
    if (!(resolution > 0.0) || !(horizon > 0.0))
        throw InvalidPath("resolution and horizon must be positive");
    const double t0 = 1.0 / resolution;
    if (std::abs(knots.front().t - t0) > 1e-9 * std::max(1.0, t0))
        throw InvalidPath("first knot must sit at t = 1/resolution");
    double prev = 0.0;
    for (const auto& k : knots) {
        if (k.t <= prev && &k != &knots.front()) throw InvalidPath("knot times must increase");
        if (k.t > horizon + 1e-12) throw InvalidPath("knot times must stay within the horizon");
        if (k.x.rows() != dim || k.x.cols() != dim)
            throw InvalidPath("knot matrices must match the state dimension");
        prev = k.t;
    }
}

double kosaki_lower_bound(const DensityMatrix& rho, const Eigen::MatrixXcd& sigma,
                          const StepPath& path) {
    require_hermitian(sigma, "sigma");
    if (sigma.rows() != rho.dim()) throw DimensionMismatch("kosaki dimensions differ");
    path.validate(rho.dim());

    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(rho.dim(), rho.dim());
    double value = std::log(path.resolution);
    for (std::size_t i = 0; i < path.knots.size(); ++i) {
        const double ta = path.knots[i].t;
        const double tb = i + 1 < path.knots.size() ? path.knots[i + 1].t : path.horizon;
        const Eigen::MatrixXcd& x = path.knots[i].x;
        const Eigen::MatrixXcd y = id - x;
        const double omega_xx = (rho.matrix() * x.adjoint() * x).trace().real();
        const double phi_yy = (sigma * y * y.adjoint()).trace().real();
        value -= omega_xx * std::log(tb / ta) + phi_yy * (1.0 / ta - 1.0 / tb);
    }
    value -= sigma.trace().real() / path.horizon;
    return value;
}

double monotonicity_gap(const DensityMatrix& rho, const DensityMatrix& sigma, int dA, int dB) {
    if (rho.dim() != sigma.dim()) throw DimensionMismatch("states must share a dimension");
    if (static_cast<long>(dA) * dB != rho.dim())
        throw DimensionMismatch("bipartite dims do not match the states");
    const int dims[] = {dA, dB};
    const bool keep_a[] = {true, false};
    const DensityMatrix rho_a(partial_trace(rho.matrix(), dims, keep_a));
    const Eigen::MatrixXcd sigma_a = partial_trace(sigma.matrix(), dims, keep_a);
    return relative_entropy(rho, sigma.matrix()) - relative_entropy(rho_a, sigma_a);
}

bool dominance_bound_check(const DensityMatrix& rho, const DensityMatrix& sigma, double mu) {
    if (!(mu > 0.0 && mu <= 1.0)) throw DomainError("dominance requires mu in (0, 1]");
    const EigH e = eigh(sigma.matrix() - mu * rho.matrix());
    if (e.w.minCoeff() < -1e-10) throw DomainError("sigma >= mu rho fails");
    return relative_entropy(rho, sigma.matrix()) <= std::log(1.0 / mu) + 1e-9;
}

namespace {

double kosaki_audit_gap(Rng& rng) {
    const DensityMatrix rho(random_density(rng, 2));
    const DensityMatrix sigma(random_density(rng, 2));
    const double rel = relative_entropy(rho, sigma.matrix());
    double best = -std::numeric_limits<double>::infinity();
    for (double lambda : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        const StepPath path = StepPath::scalar_family(lambda, 50.0, 200.0, 2, 1.01);
        best = std::max(best, kosaki_lower_bound(rho, sigma.matrix(), path));
    }
    return rel - best;
}

double dominance_audit_gap(Rng& rng, int trial) {
    const int d = 3;
    const DensityMatrix rho(random_density(rng, d));
    if (trial % 2 == 0) {
        const Eigen::MatrixXcd s =
            0.5 * (rho.matrix() + Eigen::MatrixXcd::Identity(d, d) / d);
        const DensityMatrix sigma(s);
        if (!dominance_bound_check(rho, sigma, 0.5))
            return -std::numeric_limits<double>::infinity();
        return std::log(2.0) - relative_entropy(rho, sigma.matrix());
    }
    const DensityMatrix sigma(random_density(rng, d));
    // Largest admissible mu: 1 / lambda_max(sigma^{-1/2} rho sigma^{-1/2}).
    const EigH es = eigh(sigma.matrix());
    Eigen::VectorXd inv_sqrt(es.w.size());
    for (Eigen::Index i = 0; i < es.w.size(); ++i) inv_sqrt[i] = 1.0 / std::sqrt(es.w[i]);
    const Eigen::MatrixXcd s_half = es.v * inv_sqrt.asDiagonal() * es.v.adjoint();
    const double lam_max = eigh(s_half * rho.matrix() * s_half).w.maxCoeff();
    const double mu = std::min(1.0, 0.999 / lam_max);
    if (!dominance_bound_check(rho, sigma, mu))
        return -std::numeric_limits<double>::infinity();
    return std::log(1.0 / mu) - relative_entropy(rho, sigma.matrix());
}

} // namespace

std::vector<AuditResult> run_inequality_audits(int trials, std::uint64_t seed) {
    if (trials < 1) throw DomainError("audit needs at least one trial");

    struct Driver {
        const char* name;
        int count;
        double (*run)(Rng&, int);
    };
    const int kosaki_trials = std::min(trials, 100);
    const Driver drivers[] = {
        {"sherman_davis", trials,
         [](Rng& rng, int) {
             const Eigen::MatrixXcd a = random_positive_definite(rng, 6, 1e-3);
             const Eigen::MatrixXcd p = random_projection(rng, 6, 3);
             return sherman_davis_gap(a, p);
         }},
        {"lieb_convexity", trials,
         [](Rng& rng, int) {
             const Eigen::MatrixXcd a1 = random_positive_definite(rng, 5, 1e-3);
             const Eigen::MatrixXcd b1 = random_positive_definite(rng, 5, 1e-3);
             const Eigen::MatrixXcd a2 = random_positive_definite(rng, 5, 1e-3);
             const Eigen::MatrixXcd b2 = random_positive_definite(rng, 5, 1e-3);
             const Eigen::MatrixXcd k = random_gaussian_matrix(rng, 5, 5);
             return lieb_convexity_gap(a1, b1, a2, b2, k);
         }},
        {"theorem_ab", trials,
         [](Rng& rng, int) {
             const int d = 8;
             const Eigen::MatrixXcd u = random_unitary(rng, d);
             Eigen::VectorXd d1 = Eigen::VectorXd::Zero(d);
             d1.head(4).setOnes();
             // Random 4-subset for the commuting projection p.
             std::vector<int> idx{0, 1, 2, 3, 4, 5, 6, 7};
             for (int i = d - 1; i > 0; --i)
                 std::swap(idx[i], idx[static_cast<int>(rng.bits() % (i + 1))]);
             Eigen::VectorXd dp = Eigen::VectorXd::Zero(d);
             for (int i = 0; i < 4; ++i) dp[idx[i]] = 1.0;
             const Eigen::MatrixXcd P1 = u * d1.asDiagonal() * u.adjoint();
             const Eigen::MatrixXcd p = u * dp.asDiagonal() * u.adjoint();
             const Eigen::MatrixXcd a = random_positive_definite(rng, d, 1e-3);
             return theorem_ab_gap(a, P1, p);
         }},
        {"ssa", trials,
         [](Rng& rng, int) {
             const DensityMatrix rho(random_density(rng, 8));
             return ssa_gap(rho, 2, 2, 2);
         }},
        {"monotonicity", trials,
         [](Rng& rng, int) {
             const DensityMatrix rho(random_density(rng, 4));
             const DensityMatrix sigma(random_density(rng, 4));
             return monotonicity_gap(rho, sigma, 2, 2);
         }},
        {"kosaki_bound", kosaki_trials, [](Rng& rng, int) { return kosaki_audit_gap(rng); }},
        {"dominance", trials,
         [](Rng& rng, int trial) { return dominance_audit_gap(rng, trial); }},
    };

    std::vector<AuditResult> out;
    std::uint64_t stream = 0;
    for (const Driver& d : drivers) {
        AuditResult res;
        res.inequality = d.name;
        res.trials = d.count;
        res.min_gap = std::numeric_limits<double>::infinity();
        for (int t = 0; t < d.count; ++t) {
            const std::uint64_t trial_seed = mix_seed(seed, (stream << 32) | std::uint64_t(t));
            Rng rng(trial_seed);
            const double gap = d.run(rng, t);
            if (gap < res.min_gap) {
                res.min_gap = gap;
                res.argmin_seed = trial_seed;
            }
        }
        ++stream;
        out.push_back(std::move(res));
    }
    return out;
}

} // namespace fmi
