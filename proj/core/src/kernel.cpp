#include "fmi/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace fmi {

namespace {

constexpr double kPi = std::numbers::pi;

void require_interior(double x, const MultiInterval& I, const char* what) {
    for (const auto& p : I.parts())
        if (p.a < x && x < p.b) return;
    throw DomainError(std::string(what) + ": x = " + std::to_string(x) +
                      " is not interior to the region");
}

// Window [u_lo, u_hi] for the substituted t-integral. The lower end covers
// the t -> 1/2 singularity (exponentially damped), the upper end encodes a
// finite t-truncation when requested.
std::pair<double, double> u_window(const QuadratureConfig& quad, double eps0) {
    double u_lo;
    if (eps0 > 0.0) {
        u_lo = std::log(eps0 / (1.0 + eps0));
    } else {
        // Tail of |u e^u| beyond -U is about (U+1) e^-U.
        double U = 30.0;
        while ((U + 1.0) * std::exp(-U) > 0.1 * quad.abs_tol && U < 60.0) U += 5.0;
        u_lo = -U;
    }
    double u_hi = 0.0;
    if (std::isfinite(quad.t_truncation)) {
        const double T = quad.t_truncation;
        u_hi = std::log((T - 0.5) / (T + 0.5));
    }
    if (u_lo >= u_hi) throw DomainError("empty t-integration window");
    return {u_lo, u_hi};
}

} // namespace

double t_profile_weight(double u, double eps0) {
    const double denom = -std::expm1(u); // 1 - e^u, accurate near 0
    if (denom == 0.0) return -1.0 / (1.0 + 2.0 * eps0);
    return u * ((1.0 + eps0) * std::exp(u) - eps0) / ((1.0 + 2.0 * eps0) * denom);
}

KernelConfig KernelConfig::make(MultiInterval I, MultiInterval I1, double eps0,
                                QuadratureConfig quad) {
    if (I.geometry() != Geometry::Line || I1.geometry() != Geometry::Line)
        throw DomainError("kernel machinery lives on the line");
    if (!(eps0 >= 0.0)) throw DomainError("eps0 must be >= 0");
    quad.validate();

    std::vector<std::pair<double, double>> rest;
    for (const auto& p : I.parts()) {
        const bool in_i1 = std::any_of(I1.parts().begin(), I1.parts().end(),
                                       [&](const Interval& q) { return q.a == p.a && q.b == p.b; });
        if (!in_i1) rest.emplace_back(p.a, p.b);
    }
    if (rest.size() + I1.size() != I.size())
        throw DomainError("every component of I1 must be a component of I");

    KernelConfig cfg;
    cfg.I_ = std::move(I);
    cfg.I1_ = std::move(I1);
    cfg.I2_ = MultiInterval::normalize(rest, Geometry::Line);
    cfg.eps0_ = eps0;
    cfg.quad_ = quad;
    return cfg;
}

double z_function(double x, const MultiInterval& I) {
    require_interior(x, I, "z_function");
    double s = 0.0;
    for (const auto& p : I.parts()) s += std::log(std::abs(x - p.a)) - std::log(std::abs(x - p.b));
    return s;
}

double z_prime(double x, const MultiInterval& I) {
    require_interior(x, I, "z_prime");
    double s = 0.0;
    for (const auto& p : I.parts()) s += 1.0 / (x - p.a) - 1.0 / (x - p.b);
    return s;
}

double z_difference(double x, const KernelConfig& cfg) {
    double s = 0.0;
    for (const auto& p : cfg.I2().parts())
        s += std::log(std::abs(x - p.a)) - std::log(std::abs(x - p.b));
    return s;
}

double z_difference_prime(double x, const KernelConfig& cfg) {
    double s = 0.0;
    for (const auto& p : cfg.I2().parts()) s += 1.0 / (x - p.a) - 1.0 / (x - p.b);
    return s;
}

std::complex<double> resolvent_kernel_regular_part(double beta, double x, double y,
                                                   const MultiInterval& I) {
    if (!(std::abs(beta) > 0.5)) throw DomainError("resolvent requires |beta| > 1/2");
    if (x == y) throw DomainError("resolvent regular part undefined on the diagonal");
    require_interior(x, I, "resolvent");
    require_interior(y, I, "resolvent");
    const double c = std::log((beta - 0.5) / (beta + 0.5)) / (2.0 * kPi);
    const std::complex<double> phase =
        std::exp(std::complex<double>(0.0, -c * (z_function(x, I) - z_function(y, I))));
    const std::complex<double> pref(0.0, 1.0 / (2.0 * kPi));
    return pref * phase / ((beta * beta - 0.25) * (x - y));
}

double g_kernel(double t, double x, double y, const KernelConfig& cfg) {
    if (!(t > 0.5)) throw DomainError("g_kernel requires t > 1/2");
    require_interior(x, cfg.I1(), "g_kernel");
    require_interior(y, cfg.I1(), "g_kernel");
    const double phi = std::log((t - 0.5) / (t + 0.5)) / (2.0 * kPi);
    if (x == y) return phi * (z_prime(x, cfg.I()) - z_prime(x, cfg.I1()));
    // sin(phi dZ_I) - sin(phi dZ_I1) = 2 cos(phi (dZ_I + dZ_I1)/2) sin(phi dZ_{I,I1}/2);
    // the difference dZ_{I,I1} comes from the smooth I2-only sum, which keeps
    // the near-diagonal evaluation stable.
    const double dz_i = z_function(x, cfg.I()) - z_function(y, cfg.I());
    const double dz_diff = z_difference(x, cfg) - z_difference(y, cfg);
    const double dz_i1 = dz_i - dz_diff;
    return 2.0 * std::cos(0.5 * phi * (dz_i + dz_i1)) * std::sin(0.5 * phi * dz_diff) / (x - y);
}

double g_kernel_bound_constant(const KernelConfig& cfg, int samples) {
    if (samples < 2) throw DomainError("bound constant needs at least two samples");
    // By the mean value theorem the difference quotient of the smooth
    // Z_{I,I1} is bounded by sup |Z'_{I,I1}| over the closure of I1,
    // sampled here on a grid that includes the endpoints.
    double m = 0.0;
    for (const auto& p : cfg.I1().parts())
        for (int i = 0; i < samples; ++i) {
            const double x = p.a + (p.b - p.a) * i / double(samples - 1);
            m = std::max(m, std::abs(z_difference_prime(x, cfg)));
        }
    return m;
}

double k0_diagonal(double x, const KernelConfig& cfg) {
    require_interior(x, cfg.I1(), "k0_diagonal");
    if (cfg.I2().empty()) return 0.0;
    const double zd = z_difference_prime(x, cfg);
    const auto [u_lo, u_hi] = u_window(cfg.quad(), cfg.eps0());
    const double eps0 = cfg.eps0();
    const QuadResult q = integrate([eps0](double u) { return t_profile_weight(u, eps0); }, u_lo,
                                   u_hi, cfg.quad());
    return zd * q.value / (2.0 * kPi * kPi);
}

TraceResult k0_trace(const KernelConfig& cfg) {
    if (cfg.I2().empty())
        throw DomainError("k0_trace requires a proper sub-collection I1 of I");

    // The diagonal factorizes exactly into a t-profile and the smooth
    // x-profile Z'_{I,I1}; both factors are integrated numerically.
    const double eps0 = cfg.eps0();
    const auto [u_lo, u_hi] = u_window(cfg.quad(), eps0);
    const QuadResult t_part = integrate(
        [eps0](double u) { return t_profile_weight(u, eps0); }, u_lo, u_hi, cfg.quad());

    TraceResult out;
    out.subdivisions = t_part.subdivisions;
    double x_total = 0.0;
    double err = 0.0;
    for (const auto& p : cfg.I1().parts()) {
        const QuadResult qx = integrate(
            [&cfg](double x) { return z_difference_prime(x, cfg); }, p.a, p.b, cfg.quad());
        x_total += qx.value;
        err += qx.error_estimate;
        out.subdivisions += qx.subdivisions;
    }
    out.numeric = t_part.value * x_total / (2.0 * kPi * kPi);
    out.abs_err_estimate =
        std::abs(t_part.error_estimate * x_total) / (2.0 * kPi * kPi) +
        std::abs(t_part.value) * err / (2.0 * kPi * kPi);

    double cf = 0.0;
    for (const auto& pi : cfg.I2().parts())
        for (const auto& pj : cfg.I1().parts())
            cf += std::log(((pj.a - pi.a) * (pj.b - pi.b)) / ((pj.b - pi.a) * (pj.a - pi.b)));
    out.closed_form = cf / 12.0;
    return out;
}

double t_profile_integral(const QuadratureConfig& quad) {
    quad.validate();
    const auto [u_lo, u_hi] = u_window(quad, 0.0);
    const QuadResult q =
        integrate([](double u) { return t_profile_weight(u, 0.0); }, u_lo, u_hi, quad);
    return -q.value / (2.0 * kPi * kPi);
}

double dilog_integral(const QuadratureConfig& quad) {
    quad.validate();
    const auto [u_lo, u_hi] = u_window(quad, 0.0);
    return integrate([](double u) { return t_profile_weight(u, 0.0); }, u_lo, u_hi, quad).value;
}

std::pair<double, double> regularized_spectrum_bounds(double eps0) {
    if (!(eps0 > 0.0)) throw DomainError("spectrum bounds require eps0 > 0");
    return {eps0 / (1.0 + 2.0 * eps0), (1.0 + eps0) / (1.0 + 2.0 * eps0)};
}

} // namespace fmi
