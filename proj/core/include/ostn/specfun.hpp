#pragma once

#include <complex>
#include <vector>

#include "ostn/errors.hpp"

namespace ostn {

// Real-valued special functions backing every analytical evaluator.
// All functions are pure and thread-safe.

// Gamma function, Lanczos approximation with reflection for x < 0.5.
// Throws std::domain_error at the poles x = 0, -1, -2, ...
double gamma_fn(double x);

// log Gamma(x) for x > 0.
double log_gamma(double x);

// log |Gamma(x)| for any non-pole x; *sign receives the sign of Gamma(x).
double log_abs_gamma(double x, int* sign = nullptr);

// Principal-branch log Gamma on the complex plane (used by the
// Mellin-Barnes contour integrands; only exp(sum of values) is consumed,
// so per-point branch continuity is not required).
std::complex<double> log_gamma(std::complex<double> z);

// Pochhammer symbol (a)_n = a(a+1)...(a+n-1); empty product = 1.
// Exact zero when the product hits a zero factor.
double pochhammer(double a, int n);

// Lower incomplete gamma Upsilon(s, x) = int_0^x t^(s-1) e^(-t) dt, s > 0.
double lower_inc_gamma(double s, double x);

// Beta function Phi(a, b) = Gamma(a)Gamma(b)/Gamma(a+b), a, b > 0.
double beta_fn(double a, double b);
double log_beta(double a, double b);

// Kummer confluent hypergeometric 1F1(a; b; z).
double kummer_1f1(double a, double b, double z);

// log 1F1(a; b; z) for parameter ranges where the value is positive
// (a, b > 0; for z < 0 additionally b > a so the Kummer transform yields
// an all-positive series). Stable for large |z| where the value under- or
// overflows a double.
double log_kummer_1f1(double a, double b, double z);

// Binomial coefficient with C(n, k) = 0 for k < 0 or k > n.
double binomial_coeff(int n, int k);

// ---------------------------------------------------------------------------
// Meijer G functions (the three shapes the closed forms use)
// ---------------------------------------------------------------------------

// G^{1,2}_{2,2}[ z | a1, a2 ; b1, b2 ], z > 0, evaluated as the
// Mellin-Barnes integral
//   (1/2πi) ∫ Γ(b1+s) Γ(1−a1−s) Γ(1−a2−s) / Γ(1−b2−s) · z^{−s} ds
// along a vertical contour placed midway between the pole families.
struct MeijerG1222Spec {
    double a1 = 0.0;
    double a2 = 0.0;
    double b1 = 0.0;
    double b2 = 0.0;
    double z = 1.0;
};
double meijer_g_1222(const MeijerG1222Spec& spec, double abs_tol = 1e-10);

// Bivariate Meijer G of the two shapes appearing in the closed-form IoT
// outage terms:
//   TYPE_12:  G^{1,1,1,1,1}_{1,[1:1],0,[1:2]}
//   TYPE_11:  G^{1,1,1,1,1}_{1,[1:1],0,[1:1]}
// with the double Mellin-Barnes integrand
//   Γ(a1−s−t) · Γ(d1+s)Γ(1−c1−s) · Γ(f1+t)Γ(1−e1−t)[/Γ(1−f2−t)]
//   · x^{−s} y^{−t}
// where a1 is the single outer ("first row") parameter, (c1; d1) the
// x-branch upper/lower parameters, and (e1; f1[,f2]) the y-branch ones.
enum class BivariateGShape { type_11, type_12 };

struct BivariateGSpec {
    BivariateGShape shape = BivariateGShape::type_12;
    std::vector<double> outer_upper;  // {a1}
    std::vector<double> x_upper;      // {c1}
    std::vector<double> x_lower;      // {d1}
    std::vector<double> y_upper;      // {e1}
    std::vector<double> y_lower;      // {f1} or {f1, f2}
    double x = 0.0;
    double y = 0.0;

    // Throws ConfigError when parameter counts do not match the shape tag
    // or the contour separating the pole families does not exist.
    void validate() const;
};

enum class BivariateGMethod {
    // Iterated double Mellin-Barnes quadrature: outer contour in s,
    // inner adaptive contour in t per outer node.
    double_contour,
    // Exact Laplace-type 1-D representation of the same integral
    // (requires d1 = f1 = 0 and a1 >= 1, which all Theorem-2 instances
    // satisfy); roughly three orders of magnitude faster.
    laplace,
};

struct BivariateGOptions {
    double abs_tol = 1e-9;
    BivariateGMethod method = BivariateGMethod::double_contour;
};

double bivariate_meijer_g(const BivariateGSpec& spec,
                          const BivariateGOptions& opts = {});

// Convenience constructors for the two paper shapes.
BivariateGSpec make_bivariate_g12(double a1, double c1, double e1, double f2,
                                  double x, double y);
BivariateGSpec make_bivariate_g11(double a1, double c1, double e1,
                                  double x, double y);

}  // namespace ostn
