#include "fmi/closed_form.hpp"

#include <cmath>
#include <sstream>

namespace fmi {

namespace {

std::string describe(const MultiInterval& I) {
    std::ostringstream os;
    os << "[";
    bool first = true;
    for (const auto& p : I.parts()) {
        if (!first) os << ",";
        os << "(" << p.a << "," << p.b << ")";
        first = false;
    }
    os << "]";
    return os.str();
}

// G of a multi-interval known to be valid, without the r/6 factor.
double g_sum(const MultiInterval& I) {
    const auto& ps = I.parts();
    const Geometry geom = I.geometry();
    const std::size_t n = ps.size();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            s += std::log(endpoint_distance(ps[i].b, ps[j].a, geom));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            s -= std::log(endpoint_distance(ps[i].a, ps[j].a, geom));
            s -= std::log(endpoint_distance(ps[i].b, ps[j].b, geom));
        }
    return s;
}

} // namespace

SubnetParams SubnetParams::from_mu(double mu) {
    if (!(mu >= 1.0)) throw DomainError("global index mu must be >= 1");
    return SubnetParams{mu, std::sqrt(mu)};
}

SubnetParams SubnetParams::from_index(double index) {
    if (!(index >= 1.0)) throw DomainError("subnet index must be >= 1");
    return SubnetParams{index * index, index};
}

SubnetParams SubnetParams::make(double mu, double index) {
    SubnetParams p = from_index(index);
    if (std::abs(p.mu - mu) > 1e-9 * std::max(1.0, mu))
        throw DomainError("subnet parameters must satisfy mu = index^2");
    p.mu = mu;
    return p;
}

const char* method_name(Method m) {
    switch (m) {
        case Method::ClosedForm: return "closed_form";
        case Method::Lattice: return "lattice";
        case Method::KernelTrace: return "kernel_trace";
    }
    return "unknown";
}

double g_value(const MultiInterval& I, FermionCount r) {
    if (I.empty()) return 0.0;
    return (r.r / 6.0) * g_sum(I);
}

EntropyReport mutual_information_exact(const MultiInterval& A, const MultiInterval& B,
                                       FermionCount r) {
    if (A.geometry() != B.geometry())
        throw DomainError("mutual information requires one common geometry");

    const UnionResult un = multi_union(A, B);
    const MultiInterval in = multi_intersection(A, B);

    double value = g_value(A, r) + g_value(B, r) - g_value(in, r);
    if (!un.covers_circle) value -= g_value(un.set, r);

    EntropyReport rep;
    rep.value = value;
    rep.method = Method::ClosedForm;
    rep.inputs = "A=" + describe(A) + " B=" + describe(B) + " r=" + std::to_string(r.r);
    if (A.geometry() == Geometry::Line && A.size() == 1 && B.size() == 1 && in.empty()) {
        const Interval& ia = A.parts()[0];
        const Interval& ib = B.parts()[0];
        const bool a_left = ia.b < ib.a;
        rep.diagnostics["eta"] = a_left ? cross_ratio(ia, ib) : cross_ratio(ib, ia);
    }
    return rep;
}

double extended_mi(const MultiInterval& A, const MultiInterval& B, const MultiInterval& C,
                   FermionCount r) {
    const MultiInterval bc = multi_union(B, C).set;
    const double f_a_bc = mutual_information_exact(A, bc, r).value;
    const double f_b_c = mutual_information_exact(B, C, r).value;
    const double f_a_c = mutual_information_exact(A, C, r).value;
    const double f_a_b = mutual_information_exact(A, B, r).value;
    return f_a_bc + f_b_c - f_a_c - f_a_b;
}

double duality_gap(double eta, FermionCount r) {
    if (!(eta > 0.0 && eta < 1.0)) throw DomainError("duality gap requires eta in (0,1)");
    return -(r.r / 6.0) * std::log(eta / (1.0 - eta));
}

double singular_limit_mi(double a1, double a2, double b2, double eps, FermionCount r,
                         const SubnetParams& sub) {
    if (!(a1 < a2 && a2 < b2)) throw DomainError("singular limit requires a1 < a2 < b2");
    if (!(eps > 0.0)) throw DomainError("singular limit requires eps > 0");
    const double geometric = std::log(a2 - a1) + std::log(b2 - a2) - std::log(b2 - a1);
    return (r.r / 6.0) * (geometric - std::log(eps)) - 0.5 * std::log(sub.mu);
}

double index_limit(const SubnetParams& sub) {
    return std::log(sub.index);
}

std::pair<MultiInterval, MultiInterval> configuration_with_cross_ratio(double eta) {
    if (!(eta > 0.0 && eta < 1.0)) throw DomainError("cross ratio must lie in (0,1)");
    // With A = (0, x), B = (1, 2):  eta = 2(1-x)/(2-x), so x = 2(1-eta)/(2-eta).
    const double x = 2.0 * (1.0 - eta) / (2.0 - eta);
    return {MultiInterval::normalize({{0.0, x}}), MultiInterval::normalize({{1.0, 2.0}})};
}

} // namespace fmi
