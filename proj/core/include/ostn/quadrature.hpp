#pragma once

#include <cmath>
#include <cstddef>
#include <utility>

#include "ostn/errors.hpp"

namespace ostn {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;       // estimated absolute error
    long evaluations = 0;
    bool converged = false;
};

namespace detail {

// 15-point Kronrod nodes/weights with embedded 7-point Gauss rule
// (QUADPACK dqk15 constants).
inline constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <typename F>
inline void gauss_kronrod_15(const F& f, double a, double b, double& value,
                             double& error) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);

    const double fc = f(mid);
    double result_gauss = fc * kGaussWeights[3];
    double result_kronrod = fc * kKronrodWeights[7];

    for (int j = 0; j < 7; ++j) {
        const double dx = half * kKronrodNodes[j];
        const double f1 = f(mid - dx);
        const double f2 = f(mid + dx);
        result_kronrod += kKronrodWeights[j] * (f1 + f2);
        if (j % 2 == 1)  // nodes 1,3,5 are the embedded Gauss nodes
            result_gauss += kGaussWeights[j / 2] * (f1 + f2);
    }
    value = result_kronrod * half;
    error = std::abs((result_kronrod - result_gauss) * half);
}

}  // namespace detail

// Adaptive Gauss-Kronrod on [a, b] with bisection of the worst interval
// realized as a simple depth-first recursion. Tolerances are combined as
// tol(I) = max(abs_tol, rel_tol * |I|) applied per subinterval against a
// running global scale.
template <typename F>
QuadResult integrate(const F& f, double a, double b, double abs_tol = 1e-10,
                     double rel_tol = 1e-8, int max_depth = 48) {
    QuadResult res;
    struct Rec {
        const F& f;
        double abs_tol, rel_tol;
        long evals = 0;
        int depth_exceeded = 0;

        std::pair<double, double> run(double lo, double hi, double val,
                                      double err, double scale, int depth) {
            if (err <= std::max(abs_tol, rel_tol * scale) || err <= 1e-17 * std::abs(val))
                return {val, err};
            if (depth <= 0) {
                ++depth_exceeded;
                return {val, err};
            }
            const double mid = 0.5 * (lo + hi);
            double v1, e1, v2, e2;
            detail::gauss_kronrod_15(f, lo, mid, v1, e1);
            detail::gauss_kronrod_15(f, mid, hi, v2, e2);
            evals += 30;
            const double child_scale =
                std::max(scale, std::abs(v1) + std::abs(v2));
            auto [lv, le] = run(lo, mid, v1, e1, child_scale, depth - 1);
            auto [rv, re] = run(mid, hi, v2, e2, child_scale, depth - 1);
            return {lv + rv, le + re};
        }
    } rec{f, abs_tol, rel_tol};

    double v0, e0;
    detail::gauss_kronrod_15(f, a, b, v0, e0);
    rec.evals = 15;
    auto [v, e] = rec.run(a, b, v0, e0, std::abs(v0), max_depth);
    res.value = v;
    res.error = e;
    res.evaluations = rec.evals;
    res.converged = rec.depth_exceeded == 0 &&
                    (e <= std::max(abs_tol, rel_tol * std::abs(v)) || e <= 1e-15 * std::abs(v));
    return res;
}

// Integral over [0, inf) of a function with an exponential tail
// f(w) ~ poly(w) * exp(-rate * w). Substituting w = -ln(u)/rate maps the
// domain to (0, 1]; the transformed integrand is bounded up to a weak
// logarithmic factor that the adaptive rule resolves.
template <typename F>
QuadResult integrate_exp_tail(const F& f, double rate, double abs_tol = 1e-10,
                              double rel_tol = 1e-8) {
    if (!(rate > 0.0))
        throw ConfigError("integrate_exp_tail: decay rate must be positive");
    auto g = [&](double u) {
        const double w = -std::log(u) / rate;
        return f(w) / (u * rate);
    };
    // Keep away from u = 0 (w ~ 700/rate is far below any double tail mass).
    const double u_min = std::exp(-700.0);
    return integrate(g, u_min, 1.0, abs_tol, rel_tol);
}

}  // namespace ostn
