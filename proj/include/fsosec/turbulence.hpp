#pragma once

#include "fsosec/atmosphere.hpp"
#include "fsosec/fading.hpp"

namespace fsosec::turbulence {

struct TurbulenceProfile
{
    double cn2_ground = 1.7e-14;  //!< C_n^2(0) in m^(-2/3)
    double wind_speed = 21.0;     //!< rms wind speed in m/s

    void validate() const;
};

/// Hufnagel-Valley C_n^2 at altitude h (m).
double cn2_profile(const TurbulenceProfile& profile, double altitude_m);

struct RytovResult
{
    double sigma_r2 = 0.0;
    double quad_error = 0.0;
};

/// Plane-wave Rytov variance of the slant path from H_g up to H_s.
RytovResult rytov_variance(const TurbulenceProfile& profile, const atmosphere::LinkGeometry& geom);

/// Integral of C_n^2(h) (h - H_g)^{5/6} over [H_g, H_s]; the geometric prefactor is left out.
double rytov_integrand(const TurbulenceProfile& profile, double ground_altitude_m, double altitude_m);

struct LogIrradianceVariances
{
    double small_scale;
    double large_scale;
};

/// Plane-wave small- and large-scale log-irradiance variances.
LogIrradianceVariances log_irradiance_variances(double sigma_r2);

/// Shape parameters of the F law; sigma_r2 == 0 yields the no-fading sentinel (a = b = +inf).
fading::FFadingParams f_params_from_rytov(double sigma_r2);

enum class Regime
{
    weak,
    moderate,
    strong
};

/// Moderate when |sigma_R^2 - 1| <= 0.1.
Regime classify(double sigma_r2);
const char* to_string(Regime regime);

}  // namespace fsosec::turbulence
