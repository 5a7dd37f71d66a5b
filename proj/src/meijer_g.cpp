#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "fsosec/error.hpp"
#include "fsosec/quadrature.hpp"
#include "fsosec/specfun.hpp"

namespace fsosec::specfun {
namespace {

using cplx = std::complex<double>;

class MellinBarnesIntegrand
{
  public:
    explicit MellinBarnesIntegrand(const MeijerGSpec& spec)
        : spec_(spec), log_z_(std::log(spec.z))
    {
    }

    // ln(Phi(s) z^s) where Phi is the Gamma-ratio kernel.
    cplx log_kernel(cplx s) const
    {
        cplx acc = s * log_z_;
        const int p = static_cast<int>(spec_.a.size());
        const int q = static_cast<int>(spec_.b.size());
        for (int j = 0; j < spec_.m; ++j)
            acc += log_gamma(spec_.b[j] - s);
        for (int j = 0; j < spec_.n; ++j)
            acc += log_gamma(1.0 - spec_.a[j] + s);
        for (int j = spec_.m; j < q; ++j)
            acc -= log_gamma(1.0 - spec_.b[j] + s);
        for (int j = spec_.n; j < p; ++j)
            acc -= log_gamma(spec_.a[j] - s);
        return acc;
    }

    double log_modulus(double c) const { return log_kernel(cplx(c, 0.0)).real(); }

    // Exponent of the power-law factor |t|^beta in the large-|t| envelope.
    double envelope_power(double c) const
    {
        const int p = static_cast<int>(spec_.a.size());
        const int q = static_cast<int>(spec_.b.size());
        double beta = 0.0;
        for (int j = 0; j < spec_.m; ++j)
            beta += spec_.b[j] - c - 0.5;
        for (int j = 0; j < spec_.n; ++j)
            beta += 1.0 - spec_.a[j] + c - 0.5;
        for (int j = spec_.m; j < q; ++j)
            beta -= 1.0 - spec_.b[j] + c - 0.5;
        for (int j = spec_.n; j < p; ++j)
            beta -= spec_.a[j] - c - 0.5;
        return beta;
    }

    double log_z() const { return log_z_; }

  private:
    const MeijerGSpec& spec_;
    double log_z_;
};

void validate(const MeijerGSpec& spec)
{
    const int p = static_cast<int>(spec.a.size());
    const int q = static_cast<int>(spec.b.size());
    if (spec.m < 0 || spec.n < 0 || spec.m > q || spec.n > p)
        throw DomainError("meijer_g: require 0 <= m <= q and 0 <= n <= p");
    if (!(spec.z > 0.0) || !std::isfinite(spec.z))
        throw DomainError("meijer_g: argument must be positive and finite");
    if (2 * (spec.m + spec.n) - p - q <= 0)
        throw DomainError("meijer_g: vertical contour requires 2(m+n) > p+q");
    for (double v : spec.a)
        if (!std::isfinite(v))
            throw DomainError("meijer_g: non-finite a-parameter");
    for (double v : spec.b)
        if (!std::isfinite(v))
            throw DomainError("meijer_g: non-finite b-parameter");
}

// Minimise ln|Phi(c) z^c| on (lo, hi) by golden-section search.
double saddle_abscissa(const MellinBarnesIntegrand& kernel, double lo, double hi)
{
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = kernel.log_modulus(c);
    double fd = kernel.log_modulus(d);
    for (int iter = 0; iter < 200 && (b - a) > 1e-13 * (1.0 + std::abs(a)); ++iter)
    {
        if (fc < fd)
        {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = kernel.log_modulus(c);
        }
        else
        {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = kernel.log_modulus(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

MeijerGResult meijer_g(const MeijerGSpec& spec, const MeijerGOptions& opts)
{
    validate(spec);
    const int p = static_cast<int>(spec.a.size());
    const int q = static_cast<int>(spec.b.size());

    constexpr double inf = std::numeric_limits<double>::infinity();
    double left = -inf, right = inf;
    for (int j = 0; j < spec.n; ++j)
        left = std::max(left, spec.a[j] - 1.0);
    for (int j = 0; j < spec.m; ++j)
        right = std::min(right, spec.b[j]);
    if (!(left < right))
    {
        std::ostringstream msg;
        msg << "meijer_g: pole families overlap (max a_j - 1 = " << left
            << " >= min b_j = " << right << ")";
        throw PoleCollision(msg.str());
    }
    if (!std::isfinite(left))
        left = right - 100.0;
    if (!std::isfinite(right))
        right = left + 100.0;

    MellinBarnesIntegrand kernel(spec);
    const double width = right - left;
    const double c = saddle_abscissa(kernel, left + 1e-12 * width, right - 1e-12 * width);
    const cplx log_peak_c = kernel.log_kernel(cplx(c, 0.0));
    const double log_peak = log_peak_c.real();

    auto integrand = [&](double t) {
        const cplx w = kernel.log_kernel(cplx(c, t)) - log_peak;
        if (w.real() < -745.0)
            return 0.0;
        return std::exp(w.real()) * std::cos(w.imag());
    };

    // Truncation point: march outward until the modulus is negligible and the
    // asymptotic envelope |t|^beta exp(-kappa |t|) is past its maximum.
    const double kappa = std::numbers::pi * (2 * (spec.m + spec.n) - p - q) / 2.0;
    const double beta = kernel.envelope_power(c);
    const double t_envelope = std::max(0.0, beta / kappa);
    const double log_cut = std::log(1e-18);
    double t = 0.0, step = 0.25, log_max = 0.0;
    double log_tail_mod = 0.0;
    for (int iter = 0; iter < 100000; ++iter)
    {
        t += step;
        step *= 1.02;
        log_tail_mod = (kernel.log_kernel(cplx(c, t)) - log_peak).real();
        log_max = std::max(log_max, log_tail_mod);
        if (t > 2.0 * t_envelope + 1.0 && log_tail_mod < log_max + log_cut)
            break;
    }
    const double t_max = t;
    const double decay = kappa - std::max(beta, 0.0) / t_max;
    const double tail = std::exp(log_tail_mod) / (decay > 0.5 * kappa ? decay : 0.5 * kappa);

    // Initial panels resolve the oscillation of z^{it} and any phase drift.
    const double panel = std::min(1.0, std::numbers::pi / (std::abs(kernel.log_z()) + 1.0));
    std::vector<double> breaks;
    const int panels = std::max(4, static_cast<int>(std::ceil(t_max / panel)));
    breaks.reserve(panels + 1);
    for (int i = 0; i <= panels; ++i)
        breaks.push_back(t_max * i / panels);

    quad::Options qopts;
    qopts.rel_tol = opts.rel_tol;
    qopts.max_intervals = opts.max_intervals;
    const double log_scale = log_peak - std::log(std::numbers::pi);
    if (opts.abs_tol > 0.0)
        qopts.abs_tol = std::exp(std::log(opts.abs_tol) - log_scale);
    const auto integral = quad::integrate(integrand, std::span<const double>(breaks), qopts);

    MeijerGResult result;
    result.abscissa = c;
    const double scale = std::exp(log_scale);
    result.value = scale * integral.value;
    result.abs_error = scale * (integral.abs_error + tail);
    result.log_abs_value = log_scale + std::log(std::abs(integral.value));

    const double rel_err = (integral.abs_error + tail) / std::abs(integral.value);
    const bool ok_rel = rel_err <= opts.rel_tol;
    const bool ok_abs = opts.abs_tol > 0.0 && result.abs_error <= opts.abs_tol;
    if (!(ok_rel || ok_abs))
    {
        std::ostringstream msg;
        msg << "meijer_g: G^{" << spec.m << "," << spec.n << "}_{" << p << "," << q
            << "}(" << spec.z << ") error estimate " << result.abs_error << " on value "
            << result.value << " after " << integral.evaluations << " evaluations";
        throw NonConvergent(msg.str());
    }
    return result;
}

}  // namespace fsosec::specfun
