#include "fsosec/secrecy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "fsosec/error.hpp"
#include "fsosec/quadrature.hpp"
#include "fsosec/specfun.hpp"

namespace fsosec::secrecy {
namespace {

using fading::FFadingParams;
using fading::SnrChannel;

// Probability mass left outside each integration window.
constexpr double tail_mass = 1e-17;
constexpr double rel_tol = 1e-11;

// Density and distribution of one channel's fading gain, parameterised by ln h.
class GainLaw
{
  public:
    explicit GainLaw(const SnrChannel& ch)
        : a_(ch.fading.a), b_(ch.fading.b), log_4snr_(std::log(4.0 * ch.mean_snr))
    {
        log_norm_ = a_ * std::log(a_) + b_ * std::log(b_ - 1.0) - specfun::log_beta(a_, b_);
    }

    // ln(f_h(h) h); integrating exp() of this over ln h gives probabilities.
    double log_density(double log_h) const
    {
        return log_norm_ + a_ * log_h - (a_ + b_) * std::log(a_ * std::exp(log_h) + b_ - 1.0);
    }

    specfun::BetaPair distribution(double h) const
    {
        if (std::isinf(h))
            return {1.0, 0.0};
        const double denom = a_ * h + b_ - 1.0;
        return specfun::incomplete_beta(a_, b_, a_ * h / denom, (b_ - 1.0) / denom);
    }

    double log_gain_at(double log_snr) const { return 0.5 * (log_snr - log_4snr_); }
    double log_snr_at(double log_gain) const { return log_4snr_ + 2.0 * log_gain; }
    double b() const { return b_; }

  private:
    double a_, b_, log_4snr_, log_norm_;
};

// Quantiles of ln h spanning the window that holds all but 2 * tail_mass.
std::vector<double> log_gain_breaks(const FFadingParams& p)
{
    std::vector<double> out;
    for (double prob : {tail_mass, 1e-12, 1e-8, 1e-4, 1e-2, 0.1, 0.3, 0.5})
        out.push_back(std::log(fading::quantile_ht(p, prob)));
    for (double tail : {0.3, 0.1, 1e-2, 1e-4, 1e-8, 1e-12, tail_mass})
        out.push_back(std::log(fading::upper_quantile_ht(p, tail)));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double log1p_exp(double u)
{
    return u > 36.0 ? u + std::log1p(std::exp(-u)) : std::log1p(std::exp(u));
}

// Upper bound on int ln(1+g) f(g) dg outside a window holding all but 2 * tail_mass.
double log_weight_truncation(double log_snr_lo, double log_snr_hi, double b)
{
    return tail_mass * (log1p_exp(log_snr_lo) + log1p_exp(log_snr_hi) + 2.0 / b);
}

void sort_unique(std::vector<double>& v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

quad::Result run(const std::function<double(double)>& f, const std::vector<double>& breaks, const char* what)
{
    quad::Options opts;
    opts.rel_tol = rel_tol;
    opts.abs_tol = 1e-300;
    opts.max_intervals = 8000;
    auto r = quad::integrate(f, std::span<const double>(breaks), opts);
    if (!r.converged && r.abs_error > 1e-9 * std::max(1.0, std::abs(r.value)))
        throw NonConvergent(std::string(what) + ": quadrature error estimate "
                            + std::to_string(r.abs_error) + " above tolerance");
    return r;
}

// Integral over v = ln h_E of weight(h_E) f_E(h_E) h_E. `bob_to_eve` maps a
// Bob gain to the Eve gain where the weight's Bob factor passes it (or NaN).
template <class Weight, class Map>
quad::Result integrate_over_eve(const WiretapScenario& s, Weight weight, Map bob_to_eve, const char* what)
{
    const GainLaw eve(s.eve);
    auto breaks = log_gain_breaks(s.eve.fading);
    const double lo = breaks.front(), hi = breaks.back();
    for (double wb : log_gain_breaks(s.bob.fading))
    {
        const double ve = bob_to_eve(wb);
        if (std::isfinite(ve) && ve > lo && ve < hi)
            breaks.push_back(ve);
    }
    sort_unique(breaks);
    auto f = [&](double v) {
        const double dens = eve.log_density(v);
        if (dens < -745.0)
            return 0.0;
        return weight(std::exp(v)) * std::exp(dens);
    };
    auto r = run(f, breaks, what);
    r.abs_error += 2.0 * tail_mass;
    return r;
}

double outage_gain_squared(const WiretapScenario& s, double h_eve)
{
    // (2^{C_T} (1 + 4 gE h^2) - 1) / (4 gB), exact at C_T = 0.
    const double growth = std::exp2(s.target_rate);
    const double offset = std::expm1(s.target_rate * std::numbers::ln2);
    return (offset + growth * 4.0 * s.eve.mean_snr * h_eve * h_eve) / (4.0 * s.bob.mean_snr);
}

double lower_bound_slope(const WiretapScenario& s)
{
    return std::exp2(0.5 * s.target_rate) * std::sqrt(s.eve.mean_snr / s.bob.mean_snr);
}

void require_shared(const WiretapScenario& s, const char* what)
{
    if (!s.shares_fading())
        throw DomainError(std::string(what) + ": closed form needs Bob and Eve to share (a, b)");
}

MetricValue sop_lb_closed(const WiretapScenario& s, double slope)
{
    const auto& p = s.bob.fading;
    const auto g = specfun::meijer_g({2, 3, {1.0 - p.b, 1.0, 1.0 - p.a}, {p.a, p.b, 0.0}, slope});
    const double log_norm = 2.0 * (specfun::log_beta(p.a, p.b) + specfun::log_gamma(p.a + p.b));
    const double value = std::exp(g.log_abs_value - log_norm);
    return {value, value * g.abs_error / std::abs(g.value), Method::closed_form};
}

}  // namespace

void WiretapScenario::validate() const
{
    bob.validate();
    eve.validate();
    if (!(target_rate >= 0.0) || !std::isfinite(target_rate))
        throw DomainError("secrecy: target rate must be finite and >= 0");
}

const char* to_string(Method method)
{
    switch (method)
    {
        case Method::quadrature:
            return "quadrature";
        case Method::closed_form:
            return "closed_form";
        case Method::monte_carlo:
            return "monte_carlo";
    }
    return "unknown";
}

double instantaneous_secrecy_capacity(double snr_bob, double snr_eve)
{
    if (!(snr_bob >= 0.0) || !(snr_eve >= 0.0))
        throw DomainError("secrecy capacity: SNRs must be >= 0");
    return std::max(0.0, (std::log1p(snr_bob) - std::log1p(snr_eve)) / std::numbers::ln2);
}

AscTerms asc_quadrature(const WiretapScenario& s)
{
    s.validate();
    const GainLaw bob(s.bob), eve(s.eve);

    std::vector<double> bob_u, eve_u;
    for (double v : log_gain_breaks(s.bob.fading))
        bob_u.push_back(bob.log_snr_at(v));
    for (double v : log_gain_breaks(s.eve.fading))
        eve_u.push_back(eve.log_snr_at(v));
    std::vector<double> all_u = bob_u;
    all_u.insert(all_u.end(), eve_u.begin(), eve_u.end());
    sort_unique(all_u);

    // Integrands in u = ln gamma: gamma f(gamma) = f_h(h) h / 2.
    auto bob_weight = [&](double u) { return std::exp(bob.log_density(bob.log_gain_at(u)) - std::numbers::ln2); };
    auto eve_weight = [&](double u) { return std::exp(eve.log_density(eve.log_gain_at(u)) - std::numbers::ln2); };
    auto gain = [](const GainLaw& law, double u) { return std::exp(law.log_gain_at(u)); };

    auto a1 = run([&](double u) {
        const double w = bob_weight(u);
        return w == 0.0 ? 0.0 : log1p_exp(u) * w * eve.distribution(gain(eve, u)).p;
    }, all_u, "asc A1");
    auto a2 = run([&](double u) {
        const double w = eve_weight(u);
        return w == 0.0 ? 0.0 : log1p_exp(u) * w * bob.distribution(gain(bob, u)).p;
    }, eve_u, "asc A2");
    auto a3_minus_a2 = run([&](double u) {
        const double w = eve_weight(u);
        return w == 0.0 ? 0.0 : log1p_exp(u) * w * bob.distribution(gain(bob, u)).q;
    }, all_u, "asc A3-A2");
    auto a3 = run([&](double u) { return log1p_exp(u) * eve_weight(u); }, eve_u, "asc A3");

    const double trunc_bob = log_weight_truncation(bob_u.front(), bob_u.back(), s.bob.fading.b);
    const double trunc_eve = log_weight_truncation(eve_u.front(), eve_u.back(), s.eve.fading.b);

    AscTerms out;
    out.a1 = {a1.value, a1.abs_error + trunc_bob, Method::quadrature};
    out.a2 = {a2.value, a2.abs_error + trunc_eve, Method::quadrature};
    out.a3 = {a3.value, a3.abs_error + trunc_eve, Method::quadrature};

    double asc = (a1.value - a3_minus_a2.value) / std::numbers::ln2;
    const double err = (out.a1.error + a3_minus_a2.abs_error + trunc_eve) / std::numbers::ln2;
    if (asc < 0.0)
    {
        if (-asc > err)
            throw NonConvergent("asc_quadrature: negative ASC " + std::to_string(asc)
                                + " exceeds its error estimate " + std::to_string(err));
        asc = 0.0;
    }
    out.asc = {asc, err, Method::quadrature};
    return out;
}

MetricValue asc_a3_quadrature(const WiretapScenario& s)
{
    s.validate();
    const GainLaw eve(s.eve);
    std::vector<double> eve_u;
    for (double v : log_gain_breaks(s.eve.fading))
        eve_u.push_back(eve.log_snr_at(v));
    auto r = run([&](double u) {
        return log1p_exp(u) * std::exp(eve.log_density(eve.log_gain_at(u)) - std::numbers::ln2);
    }, eve_u, "A3");
    return {r.value, r.abs_error + log_weight_truncation(eve_u.front(), eve_u.back(), s.eve.fading.b),
            Method::quadrature};
}

MetricValue asc_a3_closed_form(const WiretapScenario& s)
{
    s.validate();
    const double a = s.eve.fading.a, b = s.eve.fading.b;
    const double z = a * a / (4.0 * (b - 1.0) * (b - 1.0) * s.eve.mean_snr);
    const auto g = specfun::meijer_g({4, 3, {(1.0 - b) / 2.0, (2.0 - b) / 2.0, 0.0, 1.0},
                                      {a / 2.0, (a + 1.0) / 2.0, 0.0, 0.0}, z});
    const double log_front = (a + b) * std::numbers::ln2 - std::log(4.0 * std::numbers::pi)
                             - specfun::log_beta(a, b) - specfun::log_gamma(a + b);
    const double value = std::copysign(std::exp(log_front + g.log_abs_value), g.value);
    return {value, std::abs(value) * g.abs_error / std::abs(g.value), Method::closed_form};
}

MetricValue sop_exact(const WiretapScenario& s)
{
    s.validate();
    const GainLaw bob(s.bob);
    const double growth = std::exp2(s.target_rate);
    const double offset = std::expm1(s.target_rate * std::numbers::ln2);
    auto bob_to_eve = [&](double log_hb) {
        const double hb = std::exp(log_hb);
        const double he2 = ((4.0 * s.bob.mean_snr * hb * hb - offset) / growth) / (4.0 * s.eve.mean_snr);
        return he2 > 0.0 ? 0.5 * std::log(he2) : std::nan("");
    };
    auto r = integrate_over_eve(
        s, [&](double he) { return bob.distribution(std::sqrt(outage_gain_squared(s, he))).p; }, bob_to_eve,
        "sop_exact");
    return {std::clamp(r.value, 0.0, 1.0), r.abs_error, Method::quadrature};
}

MetricValue sop_lower_bound_quadrature(const WiretapScenario& s)
{
    s.validate();
    const GainLaw bob(s.bob);
    const double slope = lower_bound_slope(s);
    auto r = integrate_over_eve(
        s, [&](double he) { return bob.distribution(slope * he).p; },
        [&](double log_hb) { return log_hb - std::log(slope); }, "sop_lower_bound");
    return {std::clamp(r.value, 0.0, 1.0), r.abs_error, Method::quadrature};
}

MetricValue sop_lower_bound(const WiretapScenario& s)
{
    s.validate();
    if (!s.shares_fading())
        return sop_lower_bound_quadrature(s);
    return sop_lb_closed(s, lower_bound_slope(s));
}

MetricValue spsc(const WiretapScenario& s)
{
    s.validate();
    const GainLaw bob(s.bob);
    const double slope = std::sqrt(s.eve.mean_snr / s.bob.mean_snr);
    auto r = integrate_over_eve(
        s, [&](double he) { return bob.distribution(slope * he).q; },
        [&](double log_hb) { return log_hb - std::log(slope); }, "spsc");
    return {std::clamp(r.value, 0.0, 1.0), r.abs_error, Method::quadrature};
}

MetricValue spsc_closed_form(const WiretapScenario& s)
{
    s.validate();
    require_shared(s, "spsc_closed_form");
    const auto sop0 = sop_lb_closed(s, std::sqrt(s.eve.mean_snr / s.bob.mean_snr));
    return {1.0 - sop0.value, sop0.error, Method::closed_form};
}

SecrecyReport analyse(const WiretapScenario& s)
{
    SecrecyReport report;
    report.asc = asc_quadrature(s).asc;
    report.sop_exact = sop_exact(s);
    report.sop_lb = sop_lower_bound(s);
    report.spsc = spsc(s);
    return report;
}

}  // namespace fsosec::secrecy
