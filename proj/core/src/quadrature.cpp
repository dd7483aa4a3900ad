#include "fmi/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace fmi {

namespace {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Segment {
    double a, b;
    double value;
    double error;
};

Segment evaluate(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kXgk[i]);
        fv[14 - i] = f(c + h * kXgk[i]);
    }
    fv[7] = f(c);

    double result_gauss = kWg[3] * fv[7];
    for (int i = 0; i < 3; ++i) result_gauss += kWg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);

    double result_kronrod = kWgk[7] * fv[7];
    for (int i = 0; i < 7; ++i) result_kronrod += kWgk[i] * (fv[i] + fv[14 - i]);

    Segment s;
    s.a = a;
    s.b = b;
    s.value = result_kronrod * h;
    s.error = std::abs((result_kronrod - result_gauss) * h);
    return s;
}

} // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadratureConfig& cfg) {
    cfg.validate();
    if (a == b) return {0.0, 0.0, 0};
    if (!(a < b)) throw DomainError("integrate requires a <= b");

    std::vector<Segment> segs;
    segs.push_back(evaluate(f, a, b));
    int splits = 0;

    auto total = [&segs] {
        double v = 0.0, e = 0.0;
        for (const auto& s : segs) {
            v += s.value;
            e += s.error;
        }
        return std::pair<double, double>(v, e);
    };

    while (true) {
        auto [v, e] = total();
        if (e <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(v))) break;
        if (splits >= cfg.max_subdivisions)
            throw QuadratureFailure("quadrature did not reach tolerance within " +
                                    std::to_string(cfg.max_subdivisions) + " subdivisions");
        std::size_t worst = 0;
        for (std::size_t i = 1; i < segs.size(); ++i)
            if (segs[i].error > segs[worst].error) worst = i;
        const Segment s = segs[worst];
        const double mid = 0.5 * (s.a + s.b);
        if (mid <= s.a || mid >= s.b)
            throw QuadratureFailure("segment underflow at x = " + std::to_string(s.a));
        segs[worst] = evaluate(f, s.a, mid);
        segs.push_back(evaluate(f, mid, s.b));
        ++splits;
    }

    std::sort(segs.begin(), segs.end(),
              [](const Segment& x, const Segment& y) { return x.a < y.a; });
    double sum = 0.0, comp = 0.0, err = 0.0;
    for (const auto& s : segs) {
        const double y = s.value - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        err += s.error;
    }
    return {sum, err, splits};
}

} // namespace fmi
