#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <thread>
#include <vector>

#include "fsosec/error.hpp"

namespace fsosec::cli {
namespace {

// One row of metric output before rendering.
struct Entry
{
    std::string metric;
    std::string method;
    double value = std::nan("");
    double error = std::nan("");
    std::string status = "ok";
};

struct Point
{
    double series = 0.0;
    double x = 0.0;
    double x_shown = 0.0;  // x in the unit the sweep was written in
    std::vector<Entry> entries;
    bool nonconvergent = false;
};

struct Grid
{
    std::vector<double> series;  // SI values, one element 0 when there is no series
    std::vector<double> xs;
    std::vector<double> xs_shown;
};

Grid make_grid(const RunConfig& cfg)
{
    Grid g;
    g.xs = sweep_points(cfg.sweep);
    g.xs_shown = sweep_display_values(cfg.sweep);
    if (cfg.sweep.series.empty())
        g.series = {0.0};
    else
        for (const auto& q : cfg.sweep.series)
            g.series.push_back(q.si);
    return g;
}

RunConfig config_at(const RunConfig& cfg, double series, double x)
{
    RunConfig c = cfg;
    if (!cfg.sweep.series_variable.empty())
        set_leaf(c, cfg.sweep.series_variable, series);
    if (!cfg.sweep.variable.empty())
        set_leaf(c, cfg.sweep.variable, x);
    return c;
}

// Evaluates every grid point, `jobs` at a time; results stay in grid order.
std::vector<Point> evaluate_grid(const RunConfig& cfg, unsigned jobs,
                                 const std::function<void(const RunConfig&, Point&)>& fn)
{
    const Grid g = make_grid(cfg);
    std::vector<Point> points;
    for (double s : g.series)
        for (std::size_t i = 0; i < g.xs.size(); ++i)
            points.push_back({s, g.xs[i], g.xs_shown[i], {}, false});
    // Every grid point must be a valid configuration before any work starts.
    for (const auto& p : points)
        config_at(cfg, p.series, p.x).check();
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < points.size(); i = next++)
        {
            Point& p = points[i];
            try
            {
                fn(config_at(cfg, p.series, p.x), p);
            }
            catch (const NonConvergent& e)
            {
                p.nonconvergent = true;
                p.entries.push_back({"point", "-", std::nan(""), std::nan(""), std::string("nonconvergent: ") + e.what()});
            }
            catch (const std::exception& e)
            {
                p.entries.push_back({"point", "-", std::nan(""), std::nan(""), std::string("error: ") + e.what()});
            }
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(points.size())));
    if (n == 1)
        work();
    else
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < n; ++w)
            pool.emplace_back(work);
    }
    return points;
}

std::string csv_safe(std::string s)
{
    std::replace(s.begin(), s.end(), ',', ';');
    std::replace(s.begin(), s.end(), '\n', ' ');
    std::replace(s.begin(), s.end(), '"', '\'');
    return s;
}

std::string column_name(const std::string& path, const std::string& unit)
{
    return unit.empty() ? path : path + " [" + unit + "]";
}

struct AxisLabels
{
    std::string x, series;
    bool has_series = false;
};

AxisLabels axis_labels(const RunConfig& cfg)
{
    AxisLabels l;
    l.x = cfg.sweep.variable.empty() ? "point" : column_name(cfg.sweep.variable, cfg.sweep.start.unit);
    l.has_series = !cfg.sweep.series_variable.empty();
    if (l.has_series)
        l.series = column_name(cfg.sweep.series_variable, cfg.sweep.series.front().unit);
    return l;
}

std::string x_text(const RunConfig& cfg, const Point& p)
{
    return cfg.sweep.variable.empty() ? "0" : format_number(p.x_shown);
}

std::string series_text(const RunConfig& cfg, double s)
{
    return format_number(from_si(s, leaf_dimension(cfg.sweep.series_variable), cfg.sweep.series.front().unit));
}

template <class Fn>
void record(Point& p, const char* metric, const char* method, Fn&& fn)
{
    Entry e{metric, method};
    try
    {
        const auto [value, error] = fn();
        e.value = value;
        e.error = error;
    }
    catch (const NonConvergent& ex)
    {
        p.nonconvergent = true;
        e.status = std::string("nonconvergent: ") + ex.what();
    }
    catch (const std::exception& ex)
    {
        e.status = std::string("error: ") + ex.what();
    }
    p.entries.push_back(std::move(e));
}

std::pair<double, double> pair_of(const secrecy::MetricValue& m)
{
    return {m.value, m.error};
}

std::pair<double, double> pair_of(const mc::McEstimate& m)
{
    return {m.mean, m.std_error};
}

void evaluate_metrics(const RunConfig& c, Point& p)
{
    const PointModel model = build_point(c);
    const auto& s = model.scenario;
    if (c.methods.quadrature)
    {
        std::optional<secrecy::AscTerms> asc;
        record(p, "asc", "quadrature", [&] {
            asc = secrecy::asc_quadrature(s);
            return pair_of(asc->asc);
        });
        record(p, "sop", "quadrature", [&] { return pair_of(secrecy::sop_exact(s)); });
        record(p, "sop_lb", "quadrature", [&] { return pair_of(secrecy::sop_lower_bound_quadrature(s)); });
        record(p, "spsc", "quadrature", [&] { return pair_of(secrecy::spsc(s)); });
        record(p, "a3_nats", "quadrature", [&] { return pair_of(secrecy::asc_a3_quadrature(s)); });
    }
    if (c.methods.closed_form)
    {
        record(p, "sop_lb", "closed_form", [&] {
            if (!s.shares_fading())
                throw DomainError("closed form needs shared (a, b)");
            return pair_of(secrecy::sop_lower_bound(s));
        });
        record(p, "spsc", "closed_form", [&] { return pair_of(secrecy::spsc_closed_form(s)); });
        record(p, "a3_nats", "closed_form", [&] { return pair_of(secrecy::asc_a3_closed_form(s)); });
    }
    if (c.methods.monte_carlo)
    {
        std::optional<mc::McSecrecy> est;
        record(p, "asc", "monte_carlo", [&] {
            est = mc::mc_secrecy(s, c.mc);
            return pair_of(est->asc);
        });
        if (est)
        {
            record(p, "sop", "monte_carlo", [&] { return pair_of(est->sop); });
            record(p, "spsc", "monte_carlo", [&] { return pair_of(est->spsc); });
        }
    }
}

int summarise(const std::vector<Point>& points)
{
    for (const auto& p : points)
        if (p.nonconvergent)
            return exit_nonconvergent;
    return exit_ok;
}

void write_long(const RunConfig& cfg, const std::vector<Point>& points, std::ostream& out, RunSummary& sum)
{
    const AxisLabels l = axis_labels(cfg);
    out << l.x << (l.has_series ? "," + l.series : "") << ",metric,method,value,error,status\n";
    for (const auto& p : points)
        for (const auto& e : p.entries)
        {
            out << x_text(cfg, p);
            if (l.has_series)
                out << ',' << series_text(cfg, p.series);
            out << ',' << e.metric << ',' << e.method << ',' << format_number(e.value) << ','
                << format_number(e.error) << ',' << csv_safe(e.status) << '\n';
            ++sum.rows;
        }
}

// gnuplot layout: whitespace columns, one block per series separated by two blank lines.
void write_gnuplot(const RunConfig& cfg, const std::vector<Point>& points, std::ostream& out, RunSummary& sum)
{
    const AxisLabels l = axis_labels(cfg);
    std::vector<std::string> keys;
    for (const auto& p : points)
        for (const auto& e : p.entries)
        {
            const std::string k = e.metric + ":" + e.method;
            if (std::find(keys.begin(), keys.end(), k) == keys.end())
                keys.push_back(k);
        }
    out << "# \"" << l.x << "\"";
    for (const auto& k : keys)
        out << ' ' << k << ' ' << k << ":err";
    out << '\n';
    double current = std::nan("");
    for (const auto& p : points)
    {
        if (l.has_series && p.series != current)
        {
            if (!std::isnan(current))
                out << "\n\n";
            out << "# \"" << l.series << "\" = " << series_text(cfg, p.series) << '\n';
            current = p.series;
        }
        out << x_text(cfg, p);
        for (const auto& k : keys)
        {
            const auto it = std::find_if(p.entries.begin(), p.entries.end(),
                                         [&](const Entry& e) { return e.metric + ":" + e.method == k; });
            const bool ok = it != p.entries.end() && it->status == "ok";
            out << ' ' << (ok ? format_number(it->value) : "NaN") << ' ' << (ok ? format_number(it->error) : "NaN");
        }
        out << '\n';
        ++sum.rows;
    }
}

}  // namespace

PointModel build_point(const RunConfig& cfg)
{
    cfg.check();
    PointModel m;
    m.gains = atmosphere::composite_deterministic_gain(cfg.geometry, cfg.atmosphere);
    m.rytov = turbulence::rytov_variance(cfg.turbulence, cfg.geometry);
    m.fading = turbulence::f_params_from_rytov(m.rytov.sigma_r2);
    m.regime = turbulence::classify(m.rytov.sigma_r2);
    const double hb = m.gains.bob(), he = m.gains.eve();
    m.scenario.bob = {m.fading, cfg.wiretap.reference_snr * hb * hb};
    const double eve_ref = cfg.wiretap.eve_reference_snr.value_or(cfg.wiretap.reference_snr);
    m.scenario.eve = {m.fading, cfg.wiretap.snr_ratio ? *cfg.wiretap.snr_ratio * m.scenario.bob.mean_snr
                                                      : eve_ref * he * he};
    m.scenario.target_rate = cfg.wiretap.target_rate;
    return m;
}

std::string format_number(double x)
{
    if (std::isnan(x))
        return "NaN";
    if (std::isinf(x))
        return x > 0 ? "Inf" : "-Inf";
    if (x == 0.0)
        return "0";
    char buf[64];
    if (std::abs(x) < 1e-3)
        std::snprintf(buf, sizeof buf, "%.9e", x);
    else
        std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string fnv1a_hex(const std::string& bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : bytes)
    {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

RunSummary run_link_budget(const RunConfig& cfg, std::ostream& out, unsigned jobs)
{
    RunSummary sum;
    const auto points = evaluate_grid(cfg, jobs, [](const RunConfig& c, Point& p) {
        const PointModel m = build_point(c);
        const double values[] = {m.gains.path_length_m, m.gains.h_a, m.gains.h_s_bob, m.gains.h_s_eve,
                                 m.gains.h_c, m.scenario.bob.mean_snr, m.scenario.eve.mean_snr,
                                 m.rytov.sigma_r2, m.fading.a, m.fading.b};
        for (double v : values)
            p.entries.push_back({"", "", v, 0.0, "ok"});
        p.entries.push_back({"", "", 0.0, 0.0, turbulence::to_string(m.regime)});
    });
    const AxisLabels l = axis_labels(cfg);
    const char* sep = cfg.gnuplot ? " " : ",";
    if (cfg.gnuplot)
        out << "# ";
    out << (cfg.gnuplot ? "\"" + l.x + "\"" : l.x);
    if (l.has_series && !cfg.gnuplot)
        out << sep << l.series;
    for (const char* name : {"L [m]", "h_a", "h_s_bob", "h_s_eve", "h_c", "snr_bob_mean", "snr_eve_mean",
                             "sigma_r2", "a", "b", "regime"})
        out << sep << (cfg.gnuplot ? "\"" + std::string(name) + "\"" : std::string(name));
    if (!cfg.gnuplot)
        out << ",status";
    out << '\n';
    double current = std::nan("");
    for (const auto& p : points)
    {
        if (cfg.gnuplot && l.has_series && p.series != current)
        {
            if (!std::isnan(current))
                out << "\n\n";
            out << "# \"" << l.series << "\" = " << series_text(cfg, p.series) << '\n';
            current = p.series;
        }
        out << x_text(cfg, p);
        if (l.has_series && !cfg.gnuplot)
            out << sep << series_text(cfg, p.series);
        const bool ok = p.entries.size() == 11;
        for (std::size_t i = 0; i < 11; ++i)
        {
            if (!ok)
                out << sep << "NaN";
            else if (i == 10)
                out << sep << p.entries[i].status;
            else
                out << sep << format_number(p.entries[i].value);
        }
        if (!cfg.gnuplot)
            out << ',' << (ok ? "ok" : csv_safe(p.entries.front().status));
        out << '\n';
        ++sum.rows;
    }
    sum.exit_code = summarise(points);
    return sum;
}

RunSummary run_metrics(const RunConfig& cfg, std::ostream& out, unsigned jobs)
{
    RunSummary sum;
    const auto points = evaluate_grid(cfg, jobs, evaluate_metrics);
    if (cfg.gnuplot)
        write_gnuplot(cfg, points, out, sum);
    else
        write_long(cfg, points, out, sum);
    sum.exit_code = summarise(points);
    return sum;
}

RunSummary run_validate(const RunConfig& cfg, std::ostream& out, unsigned jobs)
{
    if (!cfg.methods.monte_carlo || !(cfg.methods.quadrature || cfg.methods.closed_form))
        throw ConfigError("methods.list: validate needs monte_carlo and at least one analytic method");
    RunConfig run = cfg;
    const auto points = evaluate_grid(run, jobs, evaluate_metrics);

    const AxisLabels l = axis_labels(cfg);
    out << l.x << (l.has_series ? "," + l.series : "")
        << ",metric,method,analytic,analytic_error,monte_carlo,mc_std_error,z,pass\n";
    RunSummary sum;
    bool any_fail = false;
    const double n = static_cast<double>(cfg.mc.n_samples);
    for (const auto& p : points)
    {
        auto find = [&](const std::string& metric, const char* method) -> const Entry* {
            for (const auto& e : p.entries)
                if (e.metric == metric && e.method == method)
                    return &e;
            return nullptr;
        };
        for (const auto& e : p.entries)
        {
            if (e.method == "monte_carlo" || e.metric == "sop_lb" || e.metric == "a3_nats")
                continue;
            const Entry* mc = find(e.metric, "monte_carlo");
            std::string line = x_text(cfg, p) + (l.has_series ? "," + series_text(cfg, p.series) : "") + ","
                               + e.metric + "," + e.method + ",";
            if (e.status != "ok" || !mc || mc->status != "ok")
            {
                const std::string why = e.status != "ok" ? e.status : (mc ? mc->status : "missing monte_carlo");
                out << line << "NaN,NaN,NaN,NaN,NaN," << csv_safe("fail: " + why) << '\n';
                any_fail = true;
                ++sum.rows;
                continue;
            }
            const double analytic = e.value * (1.0 + cfg.validate.analytic_bias);
            double se = mc->error;
            // Proportions: binomial variance under the analytic value avoids a zero SE when no hits occur.
            if (e.metric != "asc")
                se = std::sqrt(std::max(mc->value * (1.0 - mc->value), analytic * (1.0 - analytic)) / n);
            const double denom = std::sqrt(se * se + e.error * e.error);
            const double diff = analytic - mc->value;
            const double z = denom > 0.0 ? diff / denom : (diff == 0.0 ? 0.0 : std::copysign(INFINITY, diff));
            const bool pass = std::abs(z) <= cfg.validate.z_threshold;
            any_fail = any_fail || !pass;
            out << line << format_number(analytic) << ',' << format_number(e.error) << ','
                << format_number(mc->value) << ',' << format_number(mc->error) << ',' << format_number(z) << ','
                << (pass ? "pass" : "fail") << '\n';
            ++sum.rows;
        }
        if (p.entries.size() == 1 && p.entries.front().metric == "point")
        {
            out << x_text(cfg, p) << (l.has_series ? "," + series_text(cfg, p.series) : "")
                << ",point,-,NaN,NaN,NaN,NaN,NaN," << csv_safe("fail: " + p.entries.front().status) << '\n';
            any_fail = true;
            ++sum.rows;
        }
    }
    sum.exit_code = summarise(points);
    if (sum.exit_code == exit_ok && any_fail)
        sum.exit_code = exit_validation_failed;
    return sum;
}

}  // namespace fsosec::cli
