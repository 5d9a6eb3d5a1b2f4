#include "ostn/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "ostn/quadrature.hpp"

namespace ostn {

namespace {

using cplx = std::complex<double>;

constexpr double kPi = 3.141592653589793238462643383279503;
constexpr double kLogSqrt2Pi = 0.91893853320467274178032973640562;  // ln sqrt(2*pi)

// Lanczos g = 7, n = 9 coefficients (Godfrey's set).
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7};

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

// log Gamma for Re(z) >= 0.5 via Lanczos. Valid on the whole half plane
// including large |Im z| (the contour integrands live there).
cplx log_gamma_lanczos(cplx z) {
    z -= 1.0;
    cplx acc = kLanczos[0];
    for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (z + static_cast<double>(i));
    const cplx t = z + 7.5;
    return kLogSqrt2Pi + (z + 0.5) * std::log(t) - t + std::log(acc);
}

// log sin(pi z) without overflow for large |Im z|.
cplx log_sin_pi(cplx z) {
    if (std::abs(z.imag()) < 1.0) {
        return std::log(std::sin(kPi * z));
    }
    if (z.imag() > 0.0) {
        // sin(pi z) = -e^{-i pi z} (1 - e^{2 i pi z}) / (2i)
        const cplx i_unit(0.0, 1.0);
        return std::log(i_unit / 2.0) - i_unit * kPi * z +
               std::log(1.0 - std::exp(2.0 * i_unit * kPi * z));
    }
    return std::conj(log_sin_pi(std::conj(z)));
}

}  // namespace

std::complex<double> log_gamma(std::complex<double> z) {
    if (z.real() >= 0.5) return log_gamma_lanczos(z);
    // Reflection: log Gamma(z) = log pi - log sin(pi z) - log Gamma(1 - z).
    return std::log(kPi) - log_sin_pi(z) - log_gamma_lanczos(1.0 - z);
}

double log_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("log_gamma: requires x > 0");
    return log_gamma_lanczos(cplx(x, 0.0)).real();
}

double log_abs_gamma(double x, int* sign) {
    if (is_nonpositive_integer(x))
        throw std::domain_error("log_abs_gamma: pole at nonpositive integer");
    if (x > 0.0) {
        if (sign) *sign = 1;
        return log_gamma(x);
    }
    // |Gamma(x)| = pi / (|sin(pi x)| Gamma(1 - x)); Gamma(1-x) > 0 here.
    const double s = std::sin(kPi * x);
    if (sign) *sign = s > 0.0 ? 1 : -1;
    return std::log(kPi / std::abs(s)) - log_gamma(1.0 - x);
}

double gamma_fn(double x) {
    if (is_nonpositive_integer(x))
        throw std::domain_error("gamma_fn: pole at nonpositive integer");
    if (x >= 0.5) {
        const cplx lg = log_gamma_lanczos(cplx(x, 0.0));
        return std::exp(lg.real());
    }
    // Gamma(x) = pi / (sin(pi x) Gamma(1 - x))
    return kPi / (std::sin(kPi * x) * gamma_fn(1.0 - x));
}

double pochhammer(double a, int n) {
    if (n < 0) throw std::domain_error("pochhammer: n must be nonnegative");
    double p = 1.0;
    for (int i = 0; i < n; ++i) p *= a + static_cast<double>(i);
    return p;
}

double lower_inc_gamma(double s, double x) {
    if (!(s > 0.0)) throw std::domain_error("lower_inc_gamma: requires s > 0");
    if (x < 0.0) throw std::domain_error("lower_inc_gamma: requires x >= 0");
    if (x == 0.0) return 0.0;

    const double log_prefix = s * std::log(x) - x;
    if (x < s + 1.0) {
        // Series for the lower function: all terms positive.
        double ap = s;
        double del = 1.0 / s;
        double sum = del;
        for (int it = 0; it < 1000; ++it) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (del < sum * 1e-17) break;
        }
        return sum * std::exp(log_prefix);
    }
    // Continued fraction for the upper function (modified Lentz), then
    // Upsilon = Gamma(s) - Gamma(s, x). No damaging cancellation: in this
    // branch the upper tail is at most ~half of Gamma(s).
    const double tiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 1000; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    const double upper = std::exp(log_prefix) * h;
    return gamma_fn(s) - upper;
}

double beta_fn(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::domain_error("beta_fn: requires a, b > 0");
    return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b));
}

double log_beta(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::domain_error("log_beta: requires a, b > 0");
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

namespace {

// Direct series for 1F1 with compensated summation; terminates for
// nonpositive integer a.
double kummer_series(double a, double b, double z, int max_terms = 10000) {
    double term = 1.0;
    double sum = 1.0;
    double comp = 0.0;
    double max_term = 1.0;
    for (int k = 0; k < max_terms; ++k) {
        term *= (a + k) * z / ((b + k) * (k + 1.0));
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        max_term = std::max(max_term, std::abs(term));
        if (std::abs(term) <= std::abs(sum) * 1e-16 && k > 2) return sum;
        if (term == 0.0) return sum;
    }
    throw NumericError("kummer_1f1: series did not converge (partial sum kept)",
                       sum, std::abs(max_term) * 1e-16);
}

// log of the all-positive series for a, b, z > 0, with rescaling so the
// partial sums never overflow.
double log_kummer_series_pos(double a, double b, double z) {
    double term = 1.0;
    double sum = 1.0;
    double log_scale = 0.0;
    for (int k = 0; k < 200000; ++k) {
        term *= (a + k) * z / ((b + k) * (k + 1.0));
        sum += term;
        if (term <= sum * 1e-17) break;
        if (sum > 1e280) {
            sum *= 1e-280;
            term *= 1e-280;
            log_scale += 280.0 * std::log(10.0);
        }
    }
    return std::log(sum) + log_scale;
}

// Large negative argument: 1F1(a;b;-x) ~ Gamma(b)/Gamma(b-a) x^{-a}
// * sum_k (a)_k (1+a-b)_k / (k! x^k). For integer b-a the series
// terminates and the dropped exponential term is ~e^{-x}.
double log_kummer_asymp_neg(double a, double b, double x) {
    double term = 1.0;
    double sum = 1.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 60; ++k) {
        term *= (a + k) * (1.0 + a - b + k) / ((k + 1.0) * x);
        if (std::abs(term) >= prev) break;  // asymptotic: stop at smallest term
        prev = std::abs(term);
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return log_gamma(b) - log_gamma(b - a) - a * std::log(x) + std::log(sum);
}

}  // namespace

double kummer_1f1(double a, double b, double z) {
    if (is_nonpositive_integer(b))
        throw std::domain_error("kummer_1f1: b at a nonpositive integer pole");
    if (z == 0.0) return 1.0;
    if (z < 0.0 && b > a && a > 0.0) {
        // Kummer transform: e^z 1F1(b-a; b; -z), an all-positive series.
        if (-z > 40.0 && b - a > 0.0)
            return std::exp(log_kummer_asymp_neg(a, b, -z));
        return std::exp(z + std::log(kummer_series(b - a, b, -z)));
    }
    return kummer_series(a, b, z);
}

double log_kummer_1f1(double a, double b, double z) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::domain_error("log_kummer_1f1: requires a, b > 0");
    if (z == 0.0) return 0.0;
    if (z > 0.0) return log_kummer_series_pos(a, b, z);
    if (!(b > a))
        throw std::domain_error("log_kummer_1f1: z < 0 requires b > a");
    if (-z > 40.0) return log_kummer_asymp_neg(a, b, -z);
    return z + log_kummer_series_pos(b - a, b, -z);
}

double binomial_coeff(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    if (k == 0 || k == n) return 1.0;
    return std::exp(log_gamma(n + 1.0) - log_gamma(k + 1.0) -
                    log_gamma(n - k + 1.0));
}

// ---------------------------------------------------------------------------
// Mellin-Barnes contour machinery
// ---------------------------------------------------------------------------

namespace {

// Walk outward along the contour until the log magnitude falls `drop` nats
// below the peak seen so far; returns the truncation height.
template <typename LogMag>
double find_truncation(const LogMag& log_mag, double drop, double step,
                       double tau_max) {
    double peak = log_mag(0.0);
    int below = 0;
    for (double tau = step; tau <= tau_max; tau += step) {
        const double v = log_mag(tau);
        peak = std::max(peak, v);
        if (v < peak - drop) {
            if (++below >= 2) return tau;
        } else {
            below = 0;
        }
    }
    return tau_max;
}

struct G1222Integrand {
    double a1, a2, b1, b2, log_z, sigma;

    cplx log_value(double tau) const {
        const cplx s(sigma, tau);
        return log_gamma(b1 + s) + log_gamma(1.0 - a1 - s) +
               log_gamma(1.0 - a2 - s) - log_gamma(1.0 - b2 - s) - s * log_z;
    }
};

}  // namespace

double meijer_g_1222(const MeijerG1222Spec& spec, double abs_tol) {
    if (!(spec.z > 0.0) || !std::isfinite(spec.z))
        throw ConfigError("meijer_g_1222: requires z > 0");
    // Left pole family (from Gamma(b1+s)) tops out at -b1; right families
    // (from Gamma(1-a_j-s)) start at 1-a_j.
    const double left = -spec.b1;
    const double right = std::min(1.0 - spec.a1, 1.0 - spec.a2);
    if (!(right > left))
        throw ConfigError("meijer_g_1222: contour pole families collide");
    const double sigma = 0.5 * (left + right);

    const G1222Integrand ig{spec.a1, spec.a2, spec.b1, spec.b2,
                            std::log(spec.z), sigma};
    const double t_max = find_truncation(
        [&](double tau) { return ig.log_value(tau).real(); }, 46.0, 2.0, 600.0);
    if (t_max >= 600.0)
        throw NumericError("meijer_g_1222: contour integrand failed to decay",
                           0.0, std::numeric_limits<double>::infinity());

    const auto f = [&](double tau) { return std::exp(ig.log_value(tau)).real(); };
    const QuadResult q = integrate(f, 0.0, t_max, abs_tol * kPi, 1e-10);
    if (!q.converged)
        throw NumericError("meijer_g_1222: quadrature tolerance unmet",
                           q.value / kPi, q.error / kPi);
    return q.value / kPi;
}

// ---------------------------------------------------------------------------
// Bivariate G
// ---------------------------------------------------------------------------

void BivariateGSpec::validate() const {
    const std::size_t want_y_lower =
        shape == BivariateGShape::type_12 ? 2u : 1u;
    if (outer_upper.size() != 1 || x_upper.size() != 1 || x_lower.size() != 1 ||
        y_upper.size() != 1 || y_lower.size() != want_y_lower)
        throw ConfigError("BivariateGSpec: parameter counts do not match shape tag");
    if (!(x >= 0.0) || !(y > 0.0))
        throw ConfigError("BivariateGSpec: requires x >= 0 and y > 0");
    const double a1 = outer_upper[0];
    const double c1 = x_upper[0], d1 = x_lower[0];
    const double e1 = y_upper[0], f1 = y_lower[0];
    // Strips: -d1 < Re s < 1-c1, -f1 < Re t < 1-e1, Re(s+t) < a1.
    if (!(1.0 - c1 + d1 > 0.0) || !(1.0 - e1 + f1 > 0.0) ||
        !(a1 + d1 + f1 > 0.0))
        throw ConfigError("BivariateGSpec: no contour separates the pole families");
}

BivariateGSpec make_bivariate_g12(double a1, double c1, double e1, double f2,
                                  double x, double y) {
    BivariateGSpec s;
    s.shape = BivariateGShape::type_12;
    s.outer_upper = {a1};
    s.x_upper = {c1};
    s.x_lower = {0.0};
    s.y_upper = {e1};
    s.y_lower = {0.0, f2};
    s.x = x;
    s.y = y;
    return s;
}

BivariateGSpec make_bivariate_g11(double a1, double c1, double e1, double x,
                                  double y) {
    BivariateGSpec s;
    s.shape = BivariateGShape::type_11;
    s.outer_upper = {a1};
    s.x_upper = {c1};
    s.x_lower = {0.0};
    s.y_upper = {e1};
    s.y_lower = {0.0};
    s.x = x;
    s.y = y;
    return s;
}

namespace {

// Complex-valued adaptive Gauss-Kronrod used by the inner t-contour.
template <typename F>
cplx integrate_complex(const F& f, double a, double b, double abs_tol,
                       double rel_tol, int depth = 30) {
    double vr, er, vi, ei;
    detail::gauss_kronrod_15([&](double t) { return f(t).real(); }, a, b, vr, er);
    detail::gauss_kronrod_15([&](double t) { return f(t).imag(); }, a, b, vi, ei);
    const double mag = std::abs(cplx(vr, vi));
    if ((er + ei <= std::max(abs_tol, rel_tol * mag)) || depth <= 0)
        return {vr, vi};
    const double mid = 0.5 * (a + b);
    return integrate_complex(f, a, mid, 0.5 * abs_tol, rel_tol, depth - 1) +
           integrate_complex(f, mid, b, 0.5 * abs_tol, rel_tol, depth - 1);
}

struct BivariateContourEval {
    const BivariateGSpec& spec;
    double sigma_s, sigma_t, t_trunc;
    double log_x_safe, log_y;
    bool has_f2;
    double abs_tol;

    cplx y_branch_log(cplx t) const {
        cplx v = log_gamma(spec.y_lower[0] + t) +
                 log_gamma(1.0 - spec.y_upper[0] - t) - t * log_y;
        if (has_f2) v -= log_gamma(1.0 - spec.y_lower[1] - t);
        return v;
    }

    cplx inner(cplx s) const {
        const double a1 = spec.outer_upper[0];
        const auto f = [&](double tau_t) {
            const cplx t(sigma_t, tau_t);
            return std::exp(log_gamma(a1 - s - t) + y_branch_log(t));
        };
        const cplx v = integrate_complex(f, -t_trunc, t_trunc,
                                         abs_tol * 1e-2, 1e-10);
        return v / (2.0 * kPi);
    }

    double outer_log_mag(double tau_s) const {
        const cplx s(sigma_s, tau_s);
        return (log_gamma(spec.x_lower[0] + s) +
                log_gamma(1.0 - spec.x_upper[0] - s) - s * log_x_safe)
            .real();
    }
};

double bivariate_contour(const BivariateGSpec& spec, double abs_tol) {
    const double a1 = spec.outer_upper[0];
    const double c1 = spec.x_upper[0], d1 = spec.x_lower[0];
    const double e1 = spec.y_upper[0], f1 = spec.y_lower[0];

    const double gap_s = 1.0 - c1 + d1;
    const double gap_t = 1.0 - e1 + f1;
    const double slack = a1 + d1 + f1;  // need (sigma_s+d1) + (sigma_t+f1) < slack
    const double ds = 0.5 * std::min(gap_s, 0.5 * slack);
    const double dt = 0.5 * std::min(gap_t, 0.5 * slack);
    const double sigma_s = -d1 + ds;
    const double sigma_t = -f1 + dt;

    // x = 0 collapses the s-integral onto the residue at s = -d1, leaving a
    // univariate G in t (the n = 0 instances of the Theorem-2 terms).
    if (spec.x == 0.0) {
        MeijerG1222Spec uni;
        uni.a1 = 1.0 - (a1 + d1);
        uni.a2 = e1;
        uni.b1 = f1;
        uni.b2 = spec.shape == BivariateGShape::type_12 ? spec.y_lower[1]
                                                        : 1.0 - 1e30;
        uni.z = spec.y;
        double g;
        if (spec.shape == BivariateGShape::type_12) {
            g = meijer_g_1222(uni, abs_tol);
        } else {
            // No denominator gamma: integrate the three-gamma contour directly.
            const double left = -f1;
            const double right = std::min(1.0 - uni.a1, 1.0 - uni.a2);
            if (!(right > left))
                throw ConfigError("bivariate_meijer_g: pole collision at x=0");
            const double sig = 0.5 * (left + right);
            const double lz = std::log(spec.y);
            const auto lg = [&](double tau) {
                const cplx s(sig, tau);
                return log_gamma(f1 + s) + log_gamma(1.0 - uni.a1 - s) +
                       log_gamma(1.0 - uni.a2 - s) - s * lz;
            };
            const double tm = find_truncation(
                [&](double tau) { return lg(tau).real(); }, 46.0, 2.0, 600.0);
            const QuadResult q = integrate(
                [&](double tau) { return std::exp(lg(tau)).real(); }, 0.0, tm,
                abs_tol * kPi, 1e-10);
            g = q.value / kPi;
        }
        return gamma_fn(1.0 - c1 + d1) *
               std::exp(d1 * std::log(spec.x == 0.0 ? 1.0 : spec.x)) * g;
    }

    BivariateContourEval ev{spec, sigma_s, sigma_t, 0.0, std::log(spec.x),
                            std::log(spec.y),
                            spec.shape == BivariateGShape::type_12, abs_tol};

    // Truncation in t from the y-branch decay (uniform in s because
    // |Gamma(a1-s-t)| <= Gamma(a1-sigma_s-sigma_t) on the contour).
    ev.t_trunc = find_truncation(
        [&](double tau) { return ev.y_branch_log(cplx(sigma_t, tau)).real(); },
        46.0, 2.0, 400.0);
    const double t_s = find_truncation(
        [&](double tau) { return ev.outer_log_mag(tau); }, 46.0, 2.0, 400.0);
    if (ev.t_trunc >= 400.0 || t_s >= 400.0)
        throw NumericError("bivariate_meijer_g: contour integrand failed to decay",
                           0.0, std::numeric_limits<double>::infinity());

    const auto f = [&](double tau_s) {
        const cplx s(sigma_s, tau_s);
        const cplx outer = std::exp(log_gamma(d1 + s) +
                                    log_gamma(1.0 - c1 - s) - s * ev.log_x_safe);
        return (outer * ev.inner(s)).real();
    };
    const QuadResult q = integrate(f, 0.0, t_s, abs_tol * kPi * 0.5, 1e-9, 24);
    const double value = q.value / kPi;
    if (!q.converged && q.error / kPi > abs_tol)
        throw NumericError("bivariate_meijer_g: tolerance unmet after refinement",
                           value, q.error / kPi);
    return value;
}

double bivariate_laplace(const BivariateGSpec& spec, double abs_tol) {
    const double a1 = spec.outer_upper[0];
    const double c1 = spec.x_upper[0];
    const double e1 = spec.y_upper[0];
    if (spec.x_lower[0] != 0.0 || spec.y_lower[0] != 0.0 || !(a1 >= 1.0))
        throw ConfigError(
            "bivariate_meijer_g: laplace method requires d1 = f1 = 0, a1 >= 1");

    double log_pref;
    if (spec.shape == BivariateGShape::type_11) {
        log_pref = log_gamma(1.0 - c1) + log_gamma(1.0 - e1);
    } else {
        const double big_b = 1.0 - e1;              // 1F1 numerator parameter
        const double big_d = e1 - spec.y_lower[1];  // denominator offset
        if (!(big_b > 0.0) || !(big_d > 0.0))
            throw ConfigError("bivariate_meijer_g: type_12 laplace needs "
                              "1-e1 > 0 and e1-f2 > 0");
        log_pref = log_gamma(1.0 - c1) + log_gamma(big_b) - log_gamma(big_b + big_d);
    }

    const auto integrand = [&](double v) -> double {
        if (v <= 0.0) return 0.0;
        double lf = (a1 - 1.0) * std::log(v) - v +
                    (c1 - 1.0) * std::log1p(spec.x * v);
        if (spec.shape == BivariateGShape::type_11) {
            lf += (e1 - 1.0) * std::log1p(spec.y * v);
        } else {
            const double big_b = 1.0 - e1;
            const double big_d = e1 - spec.y_lower[1];
            lf += log_kummer_1f1(big_b, big_b + big_d, -spec.y * v);
        }
        return std::exp(lf);
    };
    const QuadResult q = integrate_exp_tail(integrand, 1.0, abs_tol * 1e-2, 1e-11);
    if (!q.converged && q.error > abs_tol)
        throw NumericError("bivariate_meijer_g: laplace quadrature tolerance unmet",
                           std::exp(log_pref) * q.value, q.error);
    return std::exp(log_pref) * q.value;
}

}  // namespace

double bivariate_meijer_g(const BivariateGSpec& spec,
                          const BivariateGOptions& opts) {
    spec.validate();
    if (opts.method == BivariateGMethod::laplace)
        return bivariate_laplace(spec, opts.abs_tol);
    return bivariate_contour(spec, opts.abs_tol);
}

}  // namespace ostn
