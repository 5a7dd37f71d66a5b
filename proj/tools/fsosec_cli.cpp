#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "fsosec/error.hpp"
#include "fsosec/version.hpp"

namespace {

using namespace fsosec::cli;

struct Flags
{
    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::string methods;
    unsigned jobs = 1;
    bool gnuplot = false;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw fsosec::ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

nlohmann::ordered_json manifest(const std::string& command, const Flags& flags, const RunConfig& cfg,
                                const std::string& config_text, const RunSummary& sum, const std::string& out)
{
    nlohmann::ordered_json j;
    j["tool"] = "fsosec";
    j["version"] = fsosec::version;
    j["command"] = command;
    j["config_path"] = flags.config_path;
    j["config_hash"] = "fnv1a64:" + fnv1a_hex(config_text + "\nseed=" + std::to_string(cfg.mc.seed)
                                              + "\nmethods=" + to_string(cfg.methods));
    j["seed"] = cfg.mc.seed;
    j["methods"] = to_string(cfg.methods);
    j["mc_samples"] = cfg.mc.n_samples;
    j["output"] = out;
    j["format"] = cfg.gnuplot ? "gnuplot" : "csv";
    j["rows"] = sum.rows;
    j["exit_code"] = sum.exit_code;
    j["compiler"] = __VERSION__;
    return j;
}

int run(const std::string& command, const Flags& flags)
{
    try
    {
        const std::string text = read_file(flags.config_path);
        std::istringstream in(text);
        RunConfig cfg = parse_config(in);
        if (flags.seed)
            cfg.mc.seed = *flags.seed;
        if (!flags.methods.empty())
            cfg.methods = parse_methods(flags.methods);
        if (flags.gnuplot)
            cfg.gnuplot = true;
        cfg.check();
        const std::string out_path = flags.out_path.empty() ? cfg.output_path : flags.out_path;

        std::ostringstream body;
        RunSummary sum;
        if (command == "link-budget")
            sum = run_link_budget(cfg, body, flags.jobs);
        else if (command == "metrics")
            sum = run_metrics(cfg, body, flags.jobs);
        else
            sum = run_validate(cfg, body, flags.jobs);

        const auto man = manifest(command, flags, cfg, text, sum, out_path.empty() ? "-" : out_path);
        if (out_path.empty() || out_path == "-")
        {
            std::cout << body.str();
            std::cerr << man.dump(2) << '\n';
        }
        else
        {
            std::ofstream csv(out_path, std::ios::binary);
            std::ofstream js(out_path + ".manifest.json", std::ios::binary);
            if (!csv || !js)
                throw fsosec::ConfigError("cannot write output '" + out_path + "'");
            csv << body.str();
            js << man.dump(2) << '\n';
        }
        return sum.exit_code;
    }
    catch (const fsosec::ConfigError& e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config_error;
    }
    catch (const fsosec::NonConvergent& e)
    {
        std::cerr << "non-convergence: " << e.what() << '\n';
        return exit_nonconvergent;
    }
    catch (const fsosec::DomainError& e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config_error;
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Secrecy performance of space-to-ground FSO wiretap links"};
    app.set_version_flag("--version", std::string(fsosec::version));
    app.require_subcommand(1);

    Flags flags;
    std::string chosen;
    for (const char* name : {"link-budget", "metrics", "validate"})
    {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", flags.config_path, "Scenario file (INI with unit suffixes)")->required();
        sub->add_option("--out", flags.out_path, "Output CSV path; '-' or unset writes to stdout");
        sub->add_option("--seed", flags.seed, "Monte Carlo seed (overrides mc.seed)");
        sub->add_option("--methods", flags.methods, "Comma list of quadrature, closed_form, monte_carlo");
        sub->add_option("--jobs", flags.jobs, "Sweep points evaluated concurrently")->check(CLI::PositiveNumber);
        sub->add_flag("--gnuplot", flags.gnuplot, "Whitespace columns with one block per series");
        sub->callback([&chosen, name] { chosen = name; });
    }
    app.get_subcommand("link-budget")->description("Deterministic gains, mean SNRs and fading parameters");
    app.get_subcommand("metrics")->description("ASC, SOP, SOP lower bound and SPSC per method");
    app.get_subcommand("validate")->description("Analytic vs Monte Carlo z-scores; exit 1 on any |z| above threshold");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_config_error;
    }
    return run(chosen, flags);
}
