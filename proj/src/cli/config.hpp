#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fsosec/atmosphere.hpp"
#include "fsosec/mc_oracle.hpp"
#include "fsosec/secrecy.hpp"
#include "fsosec/turbulence.hpp"

namespace fsosec::cli {

/// Physical dimension of a config leaf; decides which unit suffixes parse.
enum class Dimension
{
    length,
    angle,
    attenuation,
    mass_density,
    concentration,
    structure_constant,
    speed,
    power_ratio,  //!< linear or dB
    rate,
    dimensionless,
};

/// A value with the unit the user wrote it in, kept for echoing sweep values.
struct Quantity
{
    double si = 0.0;
    std::string unit;
};

Quantity parse_quantity(const std::string& text, Dimension dim, const std::string& field);
double from_si(double si, Dimension dim, const std::string& unit);

struct WiretapConfig
{
    double target_rate = 0.5;
    double reference_snr = 1e10;                //!< gamma-bar per unit deterministic gain squared
    std::optional<double> eve_reference_snr;     //!< defaults to reference_snr
    std::optional<double> snr_ratio;             //!< overrides Eve: gE = ratio * gB
};

enum class SweepScale
{
    linear,
    log,
    db,
};

struct SweepConfig
{
    std::string variable;  //!< empty for a single point
    Quantity start, stop;
    int count = 1;
    SweepScale scale = SweepScale::linear;
    std::string series_variable;  //!< optional outer loop
    std::vector<Quantity> series;
};

struct MethodSet
{
    bool quadrature = true;
    bool closed_form = false;
    bool monte_carlo = false;
};

MethodSet parse_methods(const std::string& list);
std::string to_string(const MethodSet& methods);

struct ValidateConfig
{
    double z_threshold = 3.0;
    double analytic_bias = 0.0;  //!< relative bias applied to analytic values (negative control)
};

struct RunConfig
{
    atmosphere::LinkGeometry geometry;
    atmosphere::AtmosphereConfig atmosphere;
    turbulence::TurbulenceProfile turbulence;
    WiretapConfig wiretap;
    SweepConfig sweep;
    MethodSet methods;
    mc::McConfig mc;
    ValidateConfig validate;
    std::string output_path;
    bool gnuplot = false;

    void check() const;
};

/// Reference system defaults plus the documented calibration for unstated quantities.
RunConfig default_config();

/// Parses INI text on top of default_config(); throws ConfigError naming "section.key".
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);

/// Sets a sweepable leaf ("section.key") from an SI value.
void set_leaf(RunConfig& cfg, const std::string& path, double si_value);
Dimension leaf_dimension(const std::string& path);

/// SI values of the sweep points, in order.
std::vector<double> sweep_points(const SweepConfig& sweep);

/// The same points in the unit of sweep.start (dB for dB sweeps).
std::vector<double> sweep_display_values(const SweepConfig& sweep);

}  // namespace fsosec::cli
