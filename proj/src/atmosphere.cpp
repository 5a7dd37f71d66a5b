#include "fsosec/atmosphere.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fsosec/error.hpp"
#include "fsosec/specfun.hpp"

namespace fsosec::atmosphere {
namespace {

void require(bool ok, const char* what)
{
    if (!ok)
        throw DomainError(std::string("invalid link parameters: ") + what);
}

}  // namespace

void LinkGeometry::validate() const
{
    require(ground_altitude_m >= 0.0, "ground altitude must be >= 0");
    require(satellite_altitude_m > ground_altitude_m, "satellite must be above the ground station");
    require(zenith_rad >= 0.0 && zenith_rad < std::numbers::pi / 2, "zenith angle must lie in [0, pi/2)");
    require(wavelength_m > 0.0, "wavelength must be positive");
    require(divergence_rad > 0.0, "divergence angle must be positive");
    require(aperture_diameter_m > 0.0, "aperture diameter must be positive");
    require(bob_offset_m >= 0.0, "pointing offset must be >= 0");
    require(eve_separation_m >= 0.0, "Eve separation must be >= 0");
    require(beam_quality >= 1.0, "beam propagation factor must be >= 1");
}

void AtmosphereConfig::validate() const
{
    require(troposphere_per_km >= 0.0, "troposphere attenuation must be >= 0");
    require(stratosphere_per_km >= 0.0, "stratosphere attenuation must be >= 0");
    require(stratosphere_extent_m >= 0.0, "stratosphere extent must be >= 0");
    require(cloud_lwc_mg_m3 >= 0.0, "cloud liquid water content must be >= 0");
    require(droplet_concentration_cm3 >= 0.0, "droplet concentration must be >= 0");
    require(cloud_path_m >= 0.0, "cloud path must be >= 0");
}

double db_per_km_to_per_km(double db_per_km)
{
    return db_per_km / (10.0 * std::numbers::log10e);
}

double path_length(const LinkGeometry& geom)
{
    return (geom.satellite_altitude_m - geom.ground_altitude_m) / std::cos(geom.zenith_rad);
}

double atmospheric_loss(const LinkGeometry& geom, const AtmosphereConfig& atm)
{
    const double slant_km = path_length(geom) * 1e-3;
    const double strat_km = atm.stratosphere_extent_m * 1e-3 / std::cos(geom.zenith_rad);
    return std::exp(-atm.troposphere_per_km * slant_km) * std::exp(-atm.stratosphere_per_km * strat_km);
}

double beam_waist(const LinkGeometry& geom)
{
    return 2.0 * geom.wavelength_m / (std::numbers::pi * geom.divergence_rad);
}

double beam_radius_at(const LinkGeometry& geom, double distance_m)
{
    const double w0 = beam_waist(geom);
    const double ratio = geom.wavelength_m * distance_m / (std::numbers::pi * w0 * w0);
    return w0 * std::sqrt(1.0 + geom.beam_quality * ratio * ratio);
}

double beam_radius(const LinkGeometry& geom)
{
    return beam_radius_at(geom, path_length(geom));
}

ApertureCoupling aperture_coupling(const LinkGeometry& geom)
{
    const double w = beam_radius(geom);
    const double v = std::sqrt(std::numbers::pi) * geom.aperture_diameter_m / (2.0 * std::numbers::sqrt2 * w);
    const double ev = specfun::erf(v);
    const double w_eq2 = w * w * std::sqrt(std::numbers::pi) * ev / (2.0 * v * std::exp(-v * v));
    return {v, ev * ev, w_eq2};
}

double collection_fraction(const LinkGeometry& geom, double offset_m, double separation_m)
{
    const auto c = aperture_coupling(geom);
    return c.a0 * std::exp(-2.0 * offset_m * offset_m / c.equivalent_width2)
           * std::exp(-2.0 * separation_m * separation_m / c.equivalent_width2);
}

double visibility_km(const AtmosphereConfig& atm)
{
    const double product = atm.droplet_concentration_cm3 * atm.cloud_lwc_mg_m3;
    if (!(product > 0.0))
        throw DomainError("cloud visibility undefined: N_c * M_c must be positive");
    return 1.002 / std::pow(product, 0.6473);
}

double kim_exponent(double v)
{
    if (v > 50.0)
        return 1.6;
    if (v > 6.0)
        return 1.3;
    if (v > 1.0)
        return 0.16 * v + 0.34;
    if (v > 0.5)
        return v - 0.5;
    return 0.0;
}

double cloud_extinction_per_km(const AtmosphereConfig& atm, double wavelength_nm)
{
    const double v = visibility_km(atm);
    return 3.91 / v * std::pow(wavelength_nm / 550.0, -kim_exponent(v));
}

double cloud_attenuation(const AtmosphereConfig& atm, double wavelength_nm)
{
    if (atm.cloud_path_m == 0.0)
        return 1.0;
    return std::exp(-cloud_extinction_per_km(atm, wavelength_nm) * atm.cloud_path_m * 1e-3);
}

DeterministicGains composite_deterministic_gain(const LinkGeometry& geom, const AtmosphereConfig& atm)
{
    geom.validate();
    atm.validate();
    DeterministicGains g;
    g.path_length_m = path_length(geom);
    g.h_a = atmospheric_loss(geom, atm);
    g.h_s_bob = collection_fraction(geom, geom.bob_offset_m);
    g.h_s_eve = collection_fraction(geom, geom.bob_offset_m, geom.eve_separation_m);
    g.h_c = cloud_attenuation(atm, geom.wavelength_m * 1e9);
    return g;
}

}  // namespace fsosec::atmosphere
