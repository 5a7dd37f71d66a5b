#include "fsosec/fading.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fsosec/error.hpp"
#include "fsosec/specfun.hpp"

namespace fsosec::fading {
namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// Smallest log h with pred(h) true, assuming pred is monotone in h.
template <class Pred>
double bisect_log(Pred pred)
{
    double lo = -700.0, hi = 700.0;
    for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++i)
    {
        const double mid = 0.5 * (lo + hi);
        if (pred(std::exp(mid)))
            hi = mid;
        else
            lo = mid;
    }
    return std::exp(0.5 * (lo + hi));
}

specfun::BetaPair beta_pair(const FFadingParams& p, double h)
{
    const double denom = p.a * h + p.b - 1.0;
    return specfun::incomplete_beta(p.a, p.b, p.a * h / denom, (p.b - 1.0) / denom);
}

double log_f_normaliser(const FFadingParams& p)
{
    return specfun::log_beta(p.a, p.b) + specfun::log_gamma(p.a + p.b);
}

void check_gain(double h)
{
    if (!(h >= 0.0))
        throw DomainError("fading: gain must be >= 0, got " + std::to_string(h));
}

void check_snr(double snr)
{
    if (!(snr >= 0.0))
        throw DomainError("fading: SNR must be >= 0, got " + std::to_string(snr));
}

}  // namespace

void FFadingParams::validate() const
{
    if (is_no_fading())
        throw DomainError("fading: the no-fading sentinel has no density");
    if (!(a > 0.0) || !std::isfinite(a))
        throw DomainError("fading: shape a must be positive and finite");
    if (!(b > 1.0) || !std::isfinite(b))
        throw DomainError("fading: shape b must exceed 1 and be finite");
}

void SnrChannel::validate() const
{
    fading.validate();
    if (!(mean_snr > 0.0) || !std::isfinite(mean_snr))
        throw DomainError("fading: mean SNR must be positive and finite");
}

double log_pdf_ht(const FFadingParams& p, double h)
{
    p.validate();
    check_gain(h);
    if (std::isinf(h))
        return -inf;
    const double power = p.a == 1.0 ? 0.0 : (p.a - 1.0) * std::log(h);
    return p.a * std::log(p.a) + p.b * std::log(p.b - 1.0) + power - specfun::log_beta(p.a, p.b)
           - (p.a + p.b) * std::log(p.a * h + p.b - 1.0);
}

double pdf_ht(const FFadingParams& p, double h)
{
    return std::exp(log_pdf_ht(p, h));
}

double cdf_ht(const FFadingParams& p, double h)
{
    p.validate();
    check_gain(h);
    if (std::isinf(h))
        return 1.0;
    return beta_pair(p, h).p;
}

double ccdf_ht(const FFadingParams& p, double h)
{
    p.validate();
    check_gain(h);
    if (std::isinf(h))
        return 0.0;
    return beta_pair(p, h).q;
}

double pdf_ht_meijer(const FFadingParams& p, double h)
{
    p.validate();
    check_gain(h);
    if (h == 0.0 || std::isinf(h))
        return pdf_ht(p, h);
    const auto g = specfun::meijer_g({1, 1, {1.0 - p.a - p.b}, {0.0}, p.a / (p.b - 1.0) * h});
    const double log_front = p.a * std::log(p.a) + (p.a - 1.0) * std::log(h) - p.a * std::log(p.b - 1.0)
                             - log_f_normaliser(p);
    return std::exp(log_front + g.log_abs_value);
}

double cdf_ht_meijer(const FFadingParams& p, double h)
{
    p.validate();
    check_gain(h);
    if (h == 0.0 || std::isinf(h))
        return cdf_ht(p, h);
    const auto g = specfun::meijer_g({1, 2, {1.0 - p.b, 1.0}, {p.a, 0.0}, p.a / (p.b - 1.0) * h});
    return std::exp(g.log_abs_value - log_f_normaliser(p));
}

double quantile_ht(const FFadingParams& p, double prob)
{
    p.validate();
    if (!(prob >= 0.0 && prob <= 1.0))
        throw DomainError("quantile_ht: probability must lie in [0, 1]");
    if (prob == 0.0)
        return 0.0;
    if (prob == 1.0)
        return inf;
    if (prob <= 0.5)
        return bisect_log([&](double h) { return cdf_ht(p, h) >= prob; });
    const double tail = 1.0 - prob;
    return bisect_log([&](double h) { return ccdf_ht(p, h) <= tail; });
}

double upper_quantile_ht(const FFadingParams& p, double tail)
{
    p.validate();
    if (!(tail >= 0.0 && tail <= 1.0))
        throw DomainError("upper_quantile_ht: tail probability must lie in [0, 1]");
    if (tail == 0.0)
        return inf;
    if (tail == 1.0)
        return 0.0;
    return bisect_log([&](double h) { return ccdf_ht(p, h) <= tail; });
}

double variance_ht(const FFadingParams& p)
{
    p.validate();
    if (p.b <= 2.0)
        return inf;
    return (p.a + p.b - 1.0) / (p.a * (p.b - 2.0));
}

double gain_for_snr(const SnrChannel& ch, double snr)
{
    return std::sqrt(snr / (4.0 * ch.mean_snr));
}

double snr_log_pdf(const SnrChannel& ch, double snr)
{
    ch.validate();
    check_snr(snr);
    const auto& p = ch.fading;
    const double h = gain_for_snr(ch, snr);
    if (std::isinf(h))
        return -inf;
    // f_gamma = f_h(h) h / (2 gamma); the gamma power is collected so gamma = 0 stays finite.
    const double exponent = 0.5 * p.a - 1.0;
    const double power = exponent == 0.0 ? 0.0 : exponent * std::log(snr);
    return p.a * std::log(p.a) + p.b * std::log(p.b - 1.0) - specfun::log_beta(p.a, p.b)
           - (p.a + p.b) * std::log(p.a * h + p.b - 1.0) + power
           - 0.5 * p.a * std::log(4.0 * ch.mean_snr) - std::numbers::ln2;
}

double snr_pdf(const SnrChannel& ch, double snr)
{
    return std::exp(snr_log_pdf(ch, snr));
}

double snr_cdf(const SnrChannel& ch, double snr)
{
    ch.validate();
    check_snr(snr);
    return cdf_ht(ch.fading, gain_for_snr(ch, snr));
}

double snr_ccdf(const SnrChannel& ch, double snr)
{
    ch.validate();
    check_snr(snr);
    return ccdf_ht(ch.fading, gain_for_snr(ch, snr));
}

double snr_pdf_meijer(const SnrChannel& ch, double snr)
{
    ch.validate();
    check_snr(snr);
    if (snr == 0.0 || std::isinf(snr))
        return snr_pdf(ch, snr);
    const auto& p = ch.fading;
    const double x = p.a / (p.b - 1.0) * gain_for_snr(ch, snr);
    const auto g = specfun::meijer_g({1, 1, {1.0 - p.b}, {p.a}, x});
    return std::exp(g.log_abs_value - std::numbers::ln2 - log_f_normaliser(p) - std::log(snr));
}

double snr_cdf_meijer(const SnrChannel& ch, double snr)
{
    ch.validate();
    check_snr(snr);
    return cdf_ht_meijer(ch.fading, gain_for_snr(ch, snr));
}

double snr_quantile(const SnrChannel& ch, double prob)
{
    ch.validate();
    const double h = quantile_ht(ch.fading, prob);
    return 4.0 * ch.mean_snr * h * h;
}

}  // namespace fsosec::fading
