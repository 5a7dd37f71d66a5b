#pragma once

#include <cmath>
#include <limits>

#include "fsosec/random.hpp"

namespace fsosec::fading {

/// Fisher-Snedecor F shape parameters for the unit-mean fading gain h_t.
struct FFadingParams
{
    double a = 1.0;  //!< small-scale shape
    double b = 2.0;  //!< large-scale shape

    /// Sentinel for vanishing turbulence: h_t == 1 almost surely.
    static FFadingParams no_fading()
    {
        constexpr double inf = std::numeric_limits<double>::infinity();
        return {inf, inf};
    }

    bool is_no_fading() const { return std::isinf(a) && std::isinf(b); }

    /// a > 0, b > 1, both finite; throws DomainError.
    void validate() const;

    bool operator==(const FFadingParams&) const = default;
};

/// Instantaneous electrical SNR gamma = 4 mean_snr h_t^2.
struct SnrChannel
{
    FFadingParams fading;
    double mean_snr = 1.0;

    void validate() const;
};

double log_pdf_ht(const FFadingParams& p, double h);
double pdf_ht(const FFadingParams& p, double h);
double cdf_ht(const FFadingParams& p, double h);
double ccdf_ht(const FFadingParams& p, double h);

/// Meijer-G forms of the density and distribution function.
double pdf_ht_meijer(const FFadingParams& p, double h);
double cdf_ht_meijer(const FFadingParams& p, double h);

/// Quantile of h_t by bisection on the log axis.
double quantile_ht(const FFadingParams& p, double prob);

/// Gain whose exceedance probability equals `tail`, accurate for tiny tails.
double upper_quantile_ht(const FFadingParams& p, double tail);

double variance_ht(const FFadingParams& p);

/// Exact draw: ((b - 1) / a) X / Y with X ~ Gamma(a), Y ~ Gamma(b).
template <class Stream>
double sample_ht(const FFadingParams& p, Stream& rng)
{
    const double x = random::gamma(p.a, rng);
    const double y = random::gamma(p.b, rng);
    return (p.b - 1.0) / p.a * x / y;
}

/// Fading gain that maps to a given SNR on this channel.
double gain_for_snr(const SnrChannel& ch, double snr);

double snr_log_pdf(const SnrChannel& ch, double snr);
double snr_pdf(const SnrChannel& ch, double snr);
double snr_cdf(const SnrChannel& ch, double snr);
double snr_ccdf(const SnrChannel& ch, double snr);
double snr_pdf_meijer(const SnrChannel& ch, double snr);
double snr_cdf_meijer(const SnrChannel& ch, double snr);
double snr_quantile(const SnrChannel& ch, double prob);

}  // namespace fsosec::fading
