#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fsosec/atmosphere.hpp"
#include "fsosec/error.hpp"
#include "fsosec/quadrature.hpp"
#include "generators.hpp"
#include "oracle_values.hpp"

using namespace fsosec;
using namespace fsosec::atmosphere;
using testgen::rel_err;

namespace {

constexpr double deg = std::numbers::pi / 180.0;

LinkGeometry geometry(double hs, double hg, double xi)
{
    LinkGeometry g;
    g.satellite_altitude_m = hs;
    g.ground_altitude_m = hg;
    g.zenith_rad = xi;
    return g;
}

// Divergence giving the requested beam radius, on the far-field branch where the radius grows with divergence.
LinkGeometry with_beam_radius(LinkGeometry g, double radius)
{
    auto radius_at = [&](double theta) {
        g.divergence_rad = theta;
        return beam_radius(g);
    };
    double lo = 1e-9, hi = 1e-1;
    for (int i = 0; i < 200; ++i)
    {
        const double m1 = lo * std::pow(hi / lo, 1.0 / 3.0);
        const double m2 = lo * std::pow(hi / lo, 2.0 / 3.0);
        if (radius_at(m1) < radius_at(m2))
            hi = m2;
        else
            lo = m1;
    }
    hi = 1e-1;
    for (int i = 0; i < 200; ++i)
    {
        g.divergence_rad = std::sqrt(lo * hi);
        (beam_radius(g) < radius ? lo : hi) = g.divergence_rad;
    }
    return g;
}

// Exact power fraction collected by a disc of radius a centred at distance d from a Gaussian beam axis.
double exact_aperture_fraction(double w, double a, double d)
{
    using namespace fsosec::quad;
    auto ring = [&](double rho) {
        auto angular = [&](double phi) {
            const double r2 = rho * rho + d * d - 2.0 * rho * d * std::cos(phi);
            return std::exp(-2.0 * r2 / (w * w));
        };
        return rho * integrate(angular, 0.0, 2.0 * std::numbers::pi, {0.0, 1e-12, 200}).value;
    };
    return 2.0 / (std::numbers::pi * w * w) * integrate(ring, 0.0, a, {0.0, 1e-12, 200}).value;
}

}  // namespace

TEST_CASE("path length")
{
    CHECK(rel_err(path_length(geometry(600e3, 0.0, 0.0)), 600e3) < 1e-15);
    CHECK(rel_err(path_length(geometry(600e3, 0.0, 60.0 * deg)), 1200e3) < 1e-14);
    CHECK(rel_err(path_length(geometry(800e3, 10.0, 50.0 * deg)), oracle::path_800km_10m_50deg) < 1e-14);
    double prev = 0.0;
    for (double xi = 0.0; xi < 85.0; xi += 5.0)
    {
        const double l = path_length(geometry(600e3, 10.0, xi * deg));
        CHECK(l > prev);
        prev = l;
    }
}

TEST_CASE("atmospheric loss")
{
    AtmosphereConfig lossless;
    CHECK(atmospheric_loss(geometry(600e3, 0.0, 0.0), lossless) == 1.0);
    AtmosphereConfig clear;
    clear.troposphere_per_km = 0.0989;
    clear.stratosphere_per_km = 1e-4;
    clear.stratosphere_extent_m = 28e3;
    CHECK(rel_err(atmospheric_loss(geometry(600e3, 0.0, 0.0), clear), oracle::h_a_clear_air_600km) < 1e-12);
    // Troposphere factor is exponential in L at fixed zenith angle.
    AtmosphereConfig tropo;
    tropo.troposphere_per_km = 0.3;
    const double h1 = atmospheric_loss(geometry(300e3, 0.0, 0.0), tropo);
    const double h2 = atmospheric_loss(geometry(600e3, 0.0, 0.0), tropo);
    CHECK(rel_err(h2, h1 * h1) < 1e-12);
    CHECK(rel_err(db_per_km_to_per_km(10.0 * std::numbers::log10e), 1.0) < 1e-15);
}

TEST_CASE("beam radius")
{
    LinkGeometry g = geometry(600e3, 0.0, 0.0);
    CHECK(rel_err(beam_radius_at(g, 0.0), beam_waist(g)) < 1e-15);
    CHECK(rel_err(beam_radius(g), oracle::beam_radius_1550nm_20urad_600km) < 1e-13);
    const double w0 = beam_waist(g);
    const double far = 1e6 * std::numbers::pi * w0 * w0 / g.wavelength_m;
    CHECK(rel_err(beam_radius_at(g, far) / far, g.wavelength_m / (std::numbers::pi * w0)) < 1e-3);
    CHECK(beam_radius(g) >= w0);
    double prev = 0.0;
    for (double hs = 200e3; hs <= 2000e3; hs += 100e3)
    {
        g.satellite_altitude_m = hs;
        CHECK(beam_radius(g) > prev);
        prev = beam_radius(g);
    }
    g.beam_quality = 4.0;
    g.satellite_altitude_m = 1e9;
    CHECK(rel_err(beam_radius(g), std::sqrt(g.beam_quality) * g.divergence_rad * path_length(g) / 2.0) < 1e-6);
}

TEST_CASE("collection fraction")
{
    const LinkGeometry g = with_beam_radius(geometry(600e3, 0.0, 0.0), 120.0);
    CHECK(rel_err(beam_radius(g), 120.0) < 1e-12);
    const auto c = aperture_coupling(g);
    CHECK(rel_err(collection_fraction(g, 0.0, 0.0), c.a0) < 1e-15);
    CHECK(rel_err(c.a0, std::pow(std::erf(c.v), 2)) < 1e-14);
    CHECK(rel_err(collection_fraction(g, 0.0, 2.0), oracle::h_s_D5cm_w120_dE2) < 1e-12);
    CHECK(collection_fraction(g, 0.0, 1e4) == 0.0);
    double prev = 1.0;
    for (double d = 0.0; d < 300.0; d += 10.0)
    {
        const double h = collection_fraction(g, d, 0.0);
        CHECK(h <= c.a0);
        CHECK(h < prev);
        CHECK(collection_fraction(g, 5.0, d + 1.0) < collection_fraction(g, 5.0, d));
        prev = h;
    }
}

TEST_CASE("gaussian aperture approximation within 1% of the exact integral")
{
    testgen::Gen gen(31);
    for (int i = 0; i < 12; ++i)
    {
        LinkGeometry g = geometry(600e3, 0.0, 0.0);
        // The beam cannot be narrower than sqrt(2 lambda L / pi), about 0.8 m here.
        const double w = gen.uniform(2.0, 30.0);
        g.aperture_diameter_m = w / gen.uniform(10.0, 60.0);
        g = with_beam_radius(g, w);
        REQUIRE(rel_err(beam_radius(g), w) < 1e-10);
        const double offset = gen.uniform(0.0, 1.2 * w);
        const double exact = exact_aperture_fraction(w, 0.5 * g.aperture_diameter_m, offset);
        CHECK(rel_err(collection_fraction(g, offset), exact) < 1e-2);
    }
}

TEST_CASE("cloud attenuation")
{
    AtmosphereConfig atm;
    atm.cloud_lwc_mg_m3 = 1.0;
    atm.droplet_concentration_cm3 = 250.0;
    CHECK(cloud_attenuation(atm, 1550.0) == 1.0);  // d_c = 0
    CHECK(rel_err(visibility_km(atm), oracle::visibility_Mc1_Nc250) < 1e-13);
    CHECK(kim_exponent(10.0) == 1.3);
    CHECK(rel_err(3.91 / 10.0 * std::pow(1550.0 / 550.0, -kim_exponent(10.0)), oracle::alpha2_V10_1550) < 1e-14);
    AtmosphereConfig dry;
    dry.cloud_path_m = 2e3;
    CHECK_THROWS_AS(cloud_attenuation(dry, 1550.0), DomainError);
    atm.cloud_path_m = 2e3;
    const double hc = cloud_attenuation(atm, 1550.0);
    CHECK(hc > 0.0);
    CHECK(hc <= 1.0);
}

TEST_CASE("kim exponent boundaries")
{
    CHECK(kim_exponent(0.5) == 0.0);
    CHECK(kim_exponent(std::nextafter(0.5, 1.0)) > 0.0);
    CHECK(kim_exponent(1.0) == doctest::Approx(0.5));
    CHECK(kim_exponent(6.0) == doctest::Approx(0.16 * 6.0 + 0.34));
    CHECK(kim_exponent(50.0) == 1.3);
    CHECK(kim_exponent(50.0001) == 1.6);
    // alpha_2 decreases with visibility inside each branch and across the continuous joins.
    AtmosphereConfig atm;
    atm.droplet_concentration_cm3 = 1.0;
    double prev = INFINITY;
    for (double lwc = 0.001; lwc < 100.0; lwc *= 1.1)
    {
        atm.cloud_lwc_mg_m3 = 1.0 / lwc;  // increasing visibility
        const double a2 = cloud_extinction_per_km(atm, 1550.0);
        const double v = visibility_km(atm);
        if (std::abs(v - 6.0) > 0.5 && std::abs(v - 50.0) > 5.0)
            CHECK(a2 < prev);
        prev = a2;
    }
}

TEST_CASE("composite gain and Eve ordering")
{
    LinkGeometry g = geometry(600e3, 10.0, 50.0 * deg);
    AtmosphereConfig lossless;
    g.divergence_rad = 1e-1;
    g.aperture_diameter_m = 1e6;  // aperture swallows the whole beam
    auto d = composite_deterministic_gain(g, lossless);
    CHECK(rel_err(d.bob(), 1.0) < 1e-12);
    g = geometry(600e3, 10.0, 50.0 * deg);
    g.eve_separation_m = 3.0;
    AtmosphereConfig atm;
    atm.troposphere_per_km = db_per_km_to_per_km(0.002);
    atm.stratosphere_per_km = db_per_km_to_per_km(0.001);
    atm.cloud_lwc_mg_m3 = 1.0;
    atm.droplet_concentration_cm3 = 0.25;
    atm.cloud_path_m = 2e3;
    d = composite_deterministic_gain(g, atm);
    CHECK(d.eve() < d.bob());
    CHECK(rel_err(d.bob(), d.h_a * d.h_s_bob * d.h_c) < 1e-15);
    for (double x : {d.h_a, d.h_s_bob, d.h_s_eve, d.h_c})
    {
        CHECK(x > 0.0);
        CHECK(x <= 1.0);
    }
}

TEST_CASE("invalid geometry is rejected")
{
    LinkGeometry g;
    g.zenith_rad = std::numbers::pi / 2;
    CHECK_THROWS_AS(g.validate(), DomainError);
    g = LinkGeometry{};
    g.beam_quality = 0.5;
    CHECK_THROWS_AS(g.validate(), DomainError);
    g = LinkGeometry{};
    g.ground_altitude_m = 700e3;
    CHECK_THROWS_AS(composite_deterministic_gain(g, AtmosphereConfig{}), DomainError);
}
