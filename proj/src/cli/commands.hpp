#pragma once

#include <iosfwd>
#include <string>

#include "config.hpp"

namespace fsosec::cli {

enum ExitCode : int
{
    exit_ok = 0,
    exit_validation_failed = 1,
    exit_config_error = 2,
    exit_nonconvergent = 3,
};

/// Everything the scenario builder derives from one configuration point.
struct PointModel
{
    atmosphere::DeterministicGains gains;
    turbulence::RytovResult rytov;
    fading::FFadingParams fading;
    turbulence::Regime regime;
    secrecy::WiretapScenario scenario;
};

PointModel build_point(const RunConfig& cfg);

/// Fixed notation: scientific below 1e-3 in magnitude, shortest general form otherwise.
std::string format_number(double x);

struct RunSummary
{
    int exit_code = exit_ok;
    std::size_t rows = 0;
};

RunSummary run_link_budget(const RunConfig& cfg, std::ostream& out, unsigned jobs);
RunSummary run_metrics(const RunConfig& cfg, std::ostream& out, unsigned jobs);
RunSummary run_validate(const RunConfig& cfg, std::ostream& out, unsigned jobs);

/// 64-bit FNV-1a, printed as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace fsosec::cli
