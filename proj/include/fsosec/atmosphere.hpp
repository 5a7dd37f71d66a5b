#pragma once

namespace fsosec::atmosphere {

/*!
 * Slant-path geometry and transmitter/receiver optics, SI units throughout.
 *
 * Bob sits at `bob_offset_m` from the footprint centre; Eve is a further
 * `eve_separation_m` away on the receiver plane.
 */
struct LinkGeometry
{
    double satellite_altitude_m = 600e3;
    double ground_altitude_m = 10.0;
    double zenith_rad = 0.0;
    double wavelength_m = 1550e-9;
    double divergence_rad = 20e-6;  //!< full divergence angle
    double aperture_diameter_m = 0.05;
    double bob_offset_m = 0.0;
    double eve_separation_m = 0.0;
    double beam_quality = 1.0;  //!< propagation factor, >= 1

    /// Throws DomainError naming the first violated invariant.
    void validate() const;
};

/// Attenuation coefficients are natural-log (Neper) per km.
struct AtmosphereConfig
{
    double troposphere_per_km = 0.0;
    double stratosphere_per_km = 0.0;
    double stratosphere_extent_m = 28e3;
    double cloud_lwc_mg_m3 = 0.0;           //!< M_c
    double droplet_concentration_cm3 = 0.0;  //!< N_c
    double cloud_path_m = 0.0;               //!< d_c

    void validate() const;
};

/// dB/km to Neper/km: divide by 10 log10(e).
double db_per_km_to_per_km(double db_per_km);

double path_length(const LinkGeometry& geom);

/// Beer-Lambert loss through the troposphere (full slant path) and the stratosphere layer.
double atmospheric_loss(const LinkGeometry& geom, const AtmosphereConfig& atm);

double beam_waist(const LinkGeometry& geom);
double beam_radius(const LinkGeometry& geom);
double beam_radius_at(const LinkGeometry& geom, double distance_m);

struct ApertureCoupling
{
    double v;                  //!< sqrt(pi) D / (2 sqrt(2) w_L)
    double a0;                 //!< erf(v)^2, fraction collected on axis
    double equivalent_width2;  //!< w_Leq^2 in m^2
};

ApertureCoupling aperture_coupling(const LinkGeometry& geom);

/*!
 * Gaussian approximation of the power fraction collected by a circular
 * aperture whose centre is displaced by `offset_m` from the beam axis and
 * by a further `separation_m` (orthogonal) for an eavesdropper.
 */
double collection_fraction(const LinkGeometry& geom, double offset_m, double separation_m = 0.0);

double visibility_km(const AtmosphereConfig& atm);

/// Kim's size-distribution exponent for a visibility in km.
double kim_exponent(double visibility_km);

/// Cloud extinction coefficient in km^-1 for a wavelength in nm.
double cloud_extinction_per_km(const AtmosphereConfig& atm, double wavelength_nm);

double cloud_attenuation(const AtmosphereConfig& atm, double wavelength_nm);

struct DeterministicGains
{
    double path_length_m;
    double h_a;
    double h_s_bob;
    double h_s_eve;
    double h_c;

    double bob() const { return h_a * h_s_bob * h_c; }
    double eve() const { return h_a * h_s_eve * h_c; }
};

DeterministicGains composite_deterministic_gain(const LinkGeometry& geom, const AtmosphereConfig& atm);

}  // namespace fsosec::atmosphere
