#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "fsosec/error.hpp"

namespace fsosec::cli {
namespace {

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

// Drops a trailing "; ..." or " # ..." comment.
std::string strip_comment(const std::string& s)
{
    for (std::size_t i = 0; i < s.size(); ++i)
        if ((s[i] == ';' || s[i] == '#') && (i == 0 || s[i - 1] == ' ' || s[i - 1] == '\t'))
            return trim(s.substr(0, i));
    return trim(s);
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (auto t = trim(item); !t.empty())
            out.push_back(t);
    return out;
}

[[noreturn]] void fail(const std::string& field, const std::string& what)
{
    throw ConfigError(field + ": " + what);
}

double parse_number(const std::string& text, const std::string& field)
{
    const auto t = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
        fail(field, "expected a number, got '" + text + "'");
    if (!std::isfinite(value))
        fail(field, "value must be finite");
    return value;
}

struct UnitDef
{
    const char* name;
    double scale;
};

// Multiplicative units per dimension; dB for power ratios is handled separately.
std::vector<UnitDef> units_for(Dimension dim)
{
    switch (dim)
    {
        case Dimension::length:
            return {{"m", 1.0}, {"km", 1e3}, {"cm", 1e-2}, {"mm", 1e-3}, {"um", 1e-6}, {"nm", 1e-9}};
        case Dimension::angle:
            return {{"rad", 1.0}, {"mrad", 1e-3}, {"urad", 1e-6}, {"deg", std::numbers::pi / 180.0}};
        case Dimension::attenuation:
            return {{"1/km", 1.0}, {"Np/km", 1.0}, {"dB/km", atmosphere::db_per_km_to_per_km(1.0)}};
        case Dimension::mass_density:
            return {{"mg/m3", 1.0}, {"g/m3", 1e3}};
        case Dimension::concentration:
            return {{"cm-3", 1.0}, {"1/cm3", 1.0}, {"m-3", 1e-6}};
        case Dimension::structure_constant:
            return {{"m-2/3", 1.0}};
        case Dimension::speed:
            return {{"m/s", 1.0}, {"km/h", 1.0 / 3.6}};
        case Dimension::power_ratio:
            return {{"", 1.0}, {"linear", 1.0}};
        case Dimension::rate:
            return {{"bit/s/Hz", 1.0}, {"bits/s/Hz", 1.0}};
        case Dimension::dimensionless:
            return {{"", 1.0}};
    }
    return {};
}

std::string unit_list(Dimension dim)
{
    std::string out;
    for (const auto& u : units_for(dim))
        if (*u.name)
            out += (out.empty() ? "" : ", ") + std::string(u.name);
    if (dim == Dimension::power_ratio)
        out += ", dB";
    return out.empty() ? "none" : out;
}

struct Leaf
{
    const char* path;
    Dimension dim;
    std::function<void(RunConfig&, double)> set;
};

const std::vector<Leaf>& leaves()
{
    static const std::vector<Leaf> table = {
        {"geometry.satellite_altitude", Dimension::length, [](RunConfig& c, double v) { c.geometry.satellite_altitude_m = v; }},
        {"geometry.ground_altitude", Dimension::length, [](RunConfig& c, double v) { c.geometry.ground_altitude_m = v; }},
        {"geometry.zenith", Dimension::angle, [](RunConfig& c, double v) { c.geometry.zenith_rad = v; }},
        {"geometry.wavelength", Dimension::length, [](RunConfig& c, double v) { c.geometry.wavelength_m = v; }},
        {"geometry.divergence", Dimension::angle, [](RunConfig& c, double v) { c.geometry.divergence_rad = v; }},
        {"geometry.aperture_diameter", Dimension::length, [](RunConfig& c, double v) { c.geometry.aperture_diameter_m = v; }},
        {"geometry.bob_offset", Dimension::length, [](RunConfig& c, double v) { c.geometry.bob_offset_m = v; }},
        {"geometry.eve_separation", Dimension::length, [](RunConfig& c, double v) { c.geometry.eve_separation_m = v; }},
        {"geometry.beam_quality", Dimension::dimensionless, [](RunConfig& c, double v) { c.geometry.beam_quality = v; }},
        {"atmosphere.troposphere", Dimension::attenuation, [](RunConfig& c, double v) { c.atmosphere.troposphere_per_km = v; }},
        {"atmosphere.stratosphere", Dimension::attenuation, [](RunConfig& c, double v) { c.atmosphere.stratosphere_per_km = v; }},
        {"atmosphere.stratosphere_extent", Dimension::length, [](RunConfig& c, double v) { c.atmosphere.stratosphere_extent_m = v; }},
        {"atmosphere.cloud_lwc", Dimension::mass_density, [](RunConfig& c, double v) { c.atmosphere.cloud_lwc_mg_m3 = v; }},
        {"atmosphere.droplet_concentration", Dimension::concentration, [](RunConfig& c, double v) { c.atmosphere.droplet_concentration_cm3 = v; }},
        {"atmosphere.cloud_path", Dimension::length, [](RunConfig& c, double v) { c.atmosphere.cloud_path_m = v; }},
        {"turbulence.cn2_ground", Dimension::structure_constant, [](RunConfig& c, double v) { c.turbulence.cn2_ground = v; }},
        {"turbulence.wind_speed", Dimension::speed, [](RunConfig& c, double v) { c.turbulence.wind_speed = v; }},
        {"wiretap.target_rate", Dimension::rate, [](RunConfig& c, double v) { c.wiretap.target_rate = v; }},
        {"wiretap.reference_snr", Dimension::power_ratio, [](RunConfig& c, double v) { c.wiretap.reference_snr = v; }},
        {"wiretap.eve_reference_snr", Dimension::power_ratio, [](RunConfig& c, double v) { c.wiretap.eve_reference_snr = v; }},
        {"wiretap.snr_ratio", Dimension::power_ratio, [](RunConfig& c, double v) { c.wiretap.snr_ratio = v; }},
    };
    return table;
}

const Leaf* find_leaf(const std::string& path)
{
    const auto& table = leaves();
    const auto it = std::find_if(table.begin(), table.end(), [&](const Leaf& l) { return path == l.path; });
    return it == table.end() ? nullptr : &*it;
}

SweepScale parse_scale(const std::string& s, const std::string& field)
{
    if (s == "linear")
        return SweepScale::linear;
    if (s == "log")
        return SweepScale::log;
    if (s == "dB" || s == "db")
        return SweepScale::db;
    fail(field, "scale must be linear, log or dB, got '" + s + "'");
}

bool parse_bool(const std::string& s, const std::string& field)
{
    if (s == "true" || s == "yes" || s == "1" || s == "on")
        return true;
    if (s == "false" || s == "no" || s == "0" || s == "off")
        return false;
    fail(field, "expected true or false, got '" + s + "'");
}

std::uint64_t parse_count(const std::string& s, const std::string& field)
{
    const auto t = trim(s);
    // Accept scientific shorthand such as 1e7 for sample counts.
    const double v = parse_number(t, field);
    if (v < 0.0 || v != std::floor(v) || v > 1.8e19)
        fail(field, "expected a non-negative integer, got '" + s + "'");
    return static_cast<std::uint64_t>(v);
}

}  // namespace

Quantity parse_quantity(const std::string& text, Dimension dim, const std::string& field)
{
    const auto t = trim(text);
    const auto space = t.find_first_of(" \t");
    const std::string number = space == std::string::npos ? t : t.substr(0, space);
    const std::string unit = space == std::string::npos ? std::string() : trim(t.substr(space));
    const double value = parse_number(number, field);
    if (dim == Dimension::power_ratio && (unit == "dB" || unit == "db"))
        return {std::pow(10.0, value / 10.0), "dB"};
    for (const auto& u : units_for(dim))
        if (unit == u.name)
            return {value * u.scale, unit};
    if (unit.empty())
        fail(field, "missing unit (accepted: " + unit_list(dim) + ")");
    fail(field, "unknown unit '" + unit + "' (accepted: " + unit_list(dim) + ")");
}

double from_si(double si, Dimension dim, const std::string& unit)
{
    if (dim == Dimension::power_ratio && unit == "dB")
        return 10.0 * std::log10(si);
    for (const auto& u : units_for(dim))
        if (unit == u.name)
            return si / u.scale;
    return si;
}

MethodSet parse_methods(const std::string& list)
{
    MethodSet m{false, false, false};
    const auto items = split_list(list);
    if (items.empty())
        fail("methods.list", "at least one method is required");
    for (const auto& item : items)
    {
        if (item == "quadrature")
            m.quadrature = true;
        else if (item == "closed_form")
            m.closed_form = true;
        else if (item == "monte_carlo")
            m.monte_carlo = true;
        else
            fail("methods.list", "unknown method '" + item + "'");
    }
    return m;
}

std::string to_string(const MethodSet& m)
{
    std::string out;
    auto add = [&](bool on, const char* name) {
        if (on)
            out += (out.empty() ? "" : ",") + std::string(name);
    };
    add(m.quadrature, "quadrature");
    add(m.closed_form, "closed_form");
    add(m.monte_carlo, "monte_carlo");
    return out;
}

RunConfig default_config()
{
    RunConfig c;
    c.geometry.satellite_altitude_m = 600e3;
    c.geometry.ground_altitude_m = 10.0;
    c.geometry.wavelength_m = 1550e-9;
    c.geometry.aperture_diameter_m = 0.05;
    c.atmosphere.troposphere_per_km = atmosphere::db_per_km_to_per_km(0.002);
    c.atmosphere.stratosphere_per_km = atmosphere::db_per_km_to_per_km(0.001);
    c.atmosphere.stratosphere_extent_m = 28e3;
    c.atmosphere.cloud_lwc_mg_m3 = 1.0;
    c.atmosphere.droplet_concentration_cm3 = 0.25;
    c.atmosphere.cloud_path_m = 2e3;
    c.turbulence.wind_speed = 21.0;
    c.wiretap.target_rate = 0.5;
    c.wiretap.reference_snr = std::pow(10.0, 10.5);
    return c;
}

void RunConfig::check() const
{
    auto guard = [](const char* section, auto&& fn) {
        try
        {
            fn();
        }
        catch (const DomainError& e)
        {
            throw ConfigError(std::string(section) + ": " + e.what());
        }
    };
    guard("geometry", [&] { geometry.validate(); });
    guard("atmosphere", [&] { atmosphere.validate(); });
    guard("turbulence", [&] { turbulence.validate(); });
    guard("mc", [&] { mc.validate(); });
    if (!(wiretap.target_rate >= 0.0))
        fail("wiretap.target_rate", "must be >= 0");
    if (!(wiretap.reference_snr > 0.0))
        fail("wiretap.reference_snr", "must be positive");
    if (wiretap.eve_reference_snr && !(*wiretap.eve_reference_snr > 0.0))
        fail("wiretap.eve_reference_snr", "must be positive");
    if (wiretap.snr_ratio && !(*wiretap.snr_ratio > 0.0))
        fail("wiretap.snr_ratio", "must be positive");
    if (!sweep.variable.empty())
    {
        if (!find_leaf(sweep.variable))
            fail("sweep.variable", "'" + sweep.variable + "' does not name a sweepable leaf");
        if (sweep.count < 2)
            fail("sweep.count", "a sweep needs count >= 2");
        if (sweep.scale != SweepScale::linear && !(sweep.start.si > 0.0 && sweep.stop.si > 0.0))
            fail("sweep.scale", "log and dB sweeps need positive endpoints");
    }
    if (!sweep.series_variable.empty())
    {
        if (!find_leaf(sweep.series_variable))
            fail("sweep.series_variable", "'" + sweep.series_variable + "' does not name a sweepable leaf");
        if (sweep.series.empty())
            fail("sweep.series", "series_variable is set but no series values are given");
    }
    if (!methods.quadrature && !methods.closed_form && !methods.monte_carlo)
        fail("methods.list", "at least one method is required");
    if (!(validate.z_threshold > 0.0))
        fail("validate.z_threshold", "must be positive");
}

RunConfig parse_config(std::istream& in)
{
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try
    {
        pt::ini_parser::read_ini(in, tree);
    }
    catch (const pt::ini_parser_error& e)
    {
        throw ConfigError(std::string("config syntax: ") + e.message() + " (line "
                          + std::to_string(e.line()) + ")");
    }

    RunConfig c = default_config();
    std::string sweep_start, sweep_stop, series_text;
    for (const auto& [section, body] : tree)
    {
        if (body.empty() && !body.data().empty())
            fail(section, "keys must live inside a [section]");
        for (const auto& [key, node] : body)
        {
            const std::string field = section + "." + key;
            const std::string value = strip_comment(node.data());
            if (const Leaf* leaf = find_leaf(field))
            {
                leaf->set(c, parse_quantity(value, leaf->dim, field).si);
                continue;
            }
            if (field == "sweep.variable")
                c.sweep.variable = value;
            else if (field == "sweep.start")
                sweep_start = value;
            else if (field == "sweep.stop")
                sweep_stop = value;
            else if (field == "sweep.count")
                c.sweep.count = static_cast<int>(parse_count(value, field));
            else if (field == "sweep.scale")
                c.sweep.scale = parse_scale(value, field);
            else if (field == "sweep.series_variable")
                c.sweep.series_variable = value;
            else if (field == "sweep.series")
                series_text = value;
            else if (field == "methods.list")
                c.methods = parse_methods(value);
            else if (field == "mc.samples")
                c.mc.n_samples = parse_count(value, field);
            else if (field == "mc.seed")
                c.mc.seed = parse_count(value, field);
            else if (field == "mc.batch")
                c.mc.batch = parse_count(value, field);
            else if (field == "mc.workers")
                c.mc.workers = static_cast<unsigned>(parse_count(value, field));
            else if (field == "validate.z_threshold")
                c.validate.z_threshold = parse_number(value, field);
            else if (field == "validate.analytic_bias")
                c.validate.analytic_bias = parse_number(value, field);
            else if (field == "output.path")
                c.output_path = value;
            else if (field == "output.gnuplot")
                c.gnuplot = parse_bool(value, field);
            else
                fail(field, "unknown key");
        }
    }

    if (!c.sweep.variable.empty())
    {
        const Leaf* leaf = find_leaf(c.sweep.variable);
        if (!leaf)
            fail("sweep.variable", "'" + c.sweep.variable + "' does not name a sweepable leaf");
        if (sweep_start.empty() || sweep_stop.empty())
            fail("sweep", "start and stop are required when variable is set");
        c.sweep.start = parse_quantity(sweep_start, leaf->dim, "sweep.start");
        c.sweep.stop = parse_quantity(sweep_stop, leaf->dim, "sweep.stop");
    }
    else
        c.sweep.count = 1;
    if (!c.sweep.series_variable.empty())
    {
        const Leaf* leaf = find_leaf(c.sweep.series_variable);
        if (!leaf)
            fail("sweep.series_variable", "'" + c.sweep.series_variable + "' does not name a sweepable leaf");
        for (const auto& item : split_list(series_text))
            c.sweep.series.push_back(parse_quantity(item, leaf->dim, "sweep.series"));
    }
    c.check();
    return c;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in);
}

void set_leaf(RunConfig& cfg, const std::string& path, double si_value)
{
    const Leaf* leaf = find_leaf(path);
    if (!leaf)
        throw ConfigError(path + ": not a sweepable leaf");
    leaf->set(cfg, si_value);
}

Dimension leaf_dimension(const std::string& path)
{
    const Leaf* leaf = find_leaf(path);
    if (!leaf)
        throw ConfigError(path + ": not a sweepable leaf");
    return leaf->dim;
}

std::vector<double> sweep_display_values(const SweepConfig& sweep)
{
    if (sweep.variable.empty())
        return {0.0};
    const Dimension dim = leaf_dimension(sweep.variable);
    const bool db = sweep.scale == SweepScale::db;
    auto shown = [&](const Quantity& q) {
        const double v = from_si(q.si, dim, q.unit);
        return db && q.unit != "dB" ? 10.0 * std::log10(v) : v;
    };
    const double lo = shown(sweep.start), hi = shown(sweep.stop);
    std::vector<double> out;
    const int n = sweep.count;
    for (int i = 0; i < n; ++i)
    {
        const double t = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
        double v = 0.0;
        if (sweep.scale == SweepScale::log)
            v = i == n - 1 ? hi : std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)));
        else
            v = i == n - 1 ? hi : lo + t * (hi - lo);
        // Snap rounding residue of a crossing through zero.
        if (std::abs(v) < 1e-12 * std::max(std::abs(lo), std::abs(hi)))
            v = 0.0;
        out.push_back(v);
    }
    return out;
}

std::vector<double> sweep_points(const SweepConfig& sweep)
{
    if (sweep.variable.empty())
        return {0.0};
    const Dimension dim = leaf_dimension(sweep.variable);
    const double unit_scale = sweep.start.unit == "dB" ? 1.0 : parse_quantity("1 " + sweep.start.unit, dim, "sweep.start").si;
    std::vector<double> out;
    for (double v : sweep_display_values(sweep))
    {
        if (sweep.scale == SweepScale::db || sweep.start.unit == "dB")
            out.push_back(std::pow(10.0, v / 10.0) * unit_scale);
        else
            out.push_back(v * unit_scale);
    }
    return out;
}

}  // namespace fsosec::cli
