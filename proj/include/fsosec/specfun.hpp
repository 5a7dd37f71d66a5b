#pragma once

#include <complex>
#include <vector>

namespace fsosec::specfun {

/// ln Gamma(x) for x > 0. Throws DomainError otherwise.
double log_gamma(double x);

/// Principal-branch-agnostic ln Gamma(z); only exp() of the result is meaningful.
std::complex<double> log_gamma(std::complex<double> z);

/// ln B(a, b), symmetric in its arguments.
double log_beta(double a, double b);
double beta(double a, double b);

double erf(double x);

struct BetaPair
{
    double p;  //!< I_x(a, b)
    double q;  //!< 1 - I_x(a, b), computed without cancellation
};

/*!
 * Regularized incomplete beta with its complement.
 *
 * `y` must equal 1 - x; passing it separately keeps full relative accuracy
 * when x is close to one.
 */
BetaPair incomplete_beta(double a, double b, double x, double y);
double regularized_incomplete_beta(double x, double a, double b);

//---------------------------------------------------------------------------//
// Meijer G-function
//---------------------------------------------------------------------------//

/*!
 * Parameters of G^{m,n}_{p,q}(z | a; b) with p = a.size(), q = b.size().
 *
 * The first n entries of `a` and the first m entries of `b` are the ones
 * whose Gamma factors sit in the numerator of the Mellin-Barnes integrand.
 */
struct MeijerGSpec
{
    int m = 0;
    int n = 0;
    std::vector<double> a;
    std::vector<double> b;
    double z = 1.0;
};

struct MeijerGOptions
{
    double rel_tol = 1e-12;
    double abs_tol = 0.0;
    int max_intervals = 4000;
};

struct MeijerGResult
{
    double value = 0.0;
    double abs_error = 0.0;
    double log_abs_value = 0.0;  //!< ln|G|, finite even when value underflows
    double abscissa = 0.0;       //!< real part of the integration contour
};

/*!
 * Evaluate a real Meijer G-function by direct Mellin-Barnes quadrature.
 *
 * The contour is the vertical line Re(s) = c through the saddle point of
 * |Phi(s) z^s| on the real axis between the left pole family (from the
 * Gamma(1 - a_j + s) factors) and the right family (Gamma(b_j - s)). The
 * integrand decays like exp(-pi (2(m+n) - p - q) |t| / 2), so that quantity
 * must be positive. Coincident poles inside one family are harmless here.
 *
 * Throws PoleCollision when max(a_j) - 1 >= min(b_j) over the numerator
 * parameters, and NonConvergent when the error estimate (Gauss-Kronrod
 * plus tail bound) stays above max(abs_tol, rel_tol |G|).
 */
MeijerGResult meijer_g(const MeijerGSpec& spec, const MeijerGOptions& opts = {});

}  // namespace fsosec::specfun
