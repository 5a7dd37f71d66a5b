#include "fsosec/turbulence.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "fsosec/error.hpp"
#include "fsosec/quadrature.hpp"

namespace fsosec::turbulence {

void TurbulenceProfile::validate() const
{
    if (!(cn2_ground >= 0.0))
        throw DomainError("turbulence: C_n^2(0) must be >= 0");
    if (!(wind_speed >= 0.0))
        throw DomainError("turbulence: wind speed must be >= 0");
}

double cn2_profile(const TurbulenceProfile& profile, double h)
{
    if (!(h >= 0.0))
        throw DomainError("cn2_profile: altitude must be >= 0");
    const double wind = profile.wind_speed / 27.0;
    const double scaled = 1e-5 * h;
    const double s2 = scaled * scaled;
    const double s10 = s2 * s2 * s2 * s2 * s2;
    return 0.00594 * wind * wind * s10 * std::exp(-h / 1000.0)
           + 2.7e-16 * std::exp(-h / 1500.0) + profile.cn2_ground * std::exp(-h / 100.0);
}

double rytov_integrand(const TurbulenceProfile& profile, double ground_altitude_m, double h)
{
    return cn2_profile(profile, h) * std::pow(h - ground_altitude_m, 5.0 / 6.0);
}

RytovResult rytov_variance(const TurbulenceProfile& profile, const atmosphere::LinkGeometry& geom)
{
    profile.validate();
    geom.validate();
    const double hg = geom.ground_altitude_m;
    const double hs = geom.satellite_altitude_m;
    // Breaks follow the three scale heights of the profile.
    std::vector<double> breaks = {hg};
    for (double d : {100.0, 1000.0, 5000.0, 20000.0, 50000.0})
        if (hg + d < hs)
            breaks.push_back(hg + d);
    breaks.push_back(hs);

    auto f = [&](double h) { return rytov_integrand(profile, hg, h); };
    quad::Options opts;
    opts.rel_tol = 1e-11;
    const auto integral = quad::integrate(f, std::span<const double>(breaks), opts);
    if (!integral.converged)
        throw NonConvergent("rytov_variance: quadrature budget exhausted");

    const double k = 2.0 * std::numbers::pi / geom.wavelength_m;
    const double sec = 1.0 / std::cos(geom.zenith_rad);
    const double prefactor = 2.25 * std::pow(k, 7.0 / 6.0) * std::pow(sec, 11.0 / 6.0);
    return {prefactor * integral.value, prefactor * integral.abs_error};
}

LogIrradianceVariances log_irradiance_variances(double sigma_r2)
{
    if (!(sigma_r2 >= 0.0))
        throw DomainError("log_irradiance_variances: Rytov variance must be >= 0");
    const double s125 = std::pow(sigma_r2, 6.0 / 5.0);  // sigma_R^{12/5}
    return {0.51 * sigma_r2 / std::pow(1.0 + 0.69 * s125, 5.0 / 6.0),
            0.49 * sigma_r2 / std::pow(1.0 + 1.11 * s125, 7.0 / 6.0)};
}

fading::FFadingParams f_params_from_rytov(double sigma_r2)
{
    if (!(sigma_r2 >= 0.0))
        throw DomainError("f_params_from_rytov: Rytov variance must be >= 0");
    if (sigma_r2 == 0.0)
        return fading::FFadingParams::no_fading();
    const auto v = log_irradiance_variances(sigma_r2);
    return {1.0 / std::expm1(v.small_scale), 1.0 / std::expm1(v.large_scale) + 2.0};
}

Regime classify(double sigma_r2)
{
    if (std::abs(sigma_r2 - 1.0) <= 0.1)
        return Regime::moderate;
    return sigma_r2 < 1.0 ? Regime::weak : Regime::strong;
}

const char* to_string(Regime regime)
{
    switch (regime)
    {
        case Regime::weak:
            return "weak";
        case Regime::moderate:
            return "moderate";
        case Regime::strong:
            return "strong";
    }
    return "unknown";
}

}  // namespace fsosec::turbulence
