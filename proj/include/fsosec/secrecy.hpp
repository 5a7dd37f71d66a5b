#pragma once

#include "fsosec/fading.hpp"

namespace fsosec::secrecy {

/// Bob and Eve observe statistically independent fading.
struct WiretapScenario
{
    fading::SnrChannel bob;
    fading::SnrChannel eve;
    double target_rate = 0.5;  //!< C_T in bits/s/Hz

    void validate() const;
    bool shares_fading() const { return bob.fading == eve.fading; }
};

enum class Method
{
    quadrature,
    closed_form,
    monte_carlo
};

const char* to_string(Method method);

struct MetricValue
{
    double value = 0.0;
    double error = 0.0;
    Method method = Method::quadrature;
};

/// [log2(1 + gB) - log2(1 + gE)]^+
double instantaneous_secrecy_capacity(double snr_bob, double snr_eve);

/// ASC decomposition terms in nats; ASC = (A1 + A2 - A3) / ln 2.
struct AscTerms
{
    MetricValue a1;
    MetricValue a2;
    MetricValue a3;
    MetricValue asc;  //!< bits/s/Hz
};

/*!
 * Average secrecy capacity by adaptive quadrature on the log-SNR axis.
 *
 * ASC is assembled as A1 - int ln(1+g) f_E(g) (1 - F_B(g)) dg, which equals
 * A1 + A2 - A3 without the cancellation between the last two terms. Small
 * negative results inside the error bar are clamped to zero; anything more
 * negative throws NonConvergent.
 */
AscTerms asc_quadrature(const WiretapScenario& scenario);

/// A3 = E[ln(1 + gamma_E)] through the G^{4,3}_{4,4} closed form (nats).
MetricValue asc_a3_closed_form(const WiretapScenario& scenario);

/// A3 by quadrature of its defining integral (nats).
MetricValue asc_a3_quadrature(const WiretapScenario& scenario);

/// Pr[log2((1 + gB) / (1 + gE)) < C_T], integrated over Eve's gain.
MetricValue sop_exact(const WiretapScenario& scenario);

/// Lower bound of the SOP by quadrature of its defining integral.
MetricValue sop_lower_bound_quadrature(const WiretapScenario& scenario);

/*!
 * Lower bound of the SOP.
 *
 * Uses the G^{2,3}_{3,3} closed form when Bob and Eve share (a, b), and
 * falls back to quadrature otherwise (the returned method says which).
 */
MetricValue sop_lower_bound(const WiretapScenario& scenario);

/// Pr[gB > gE] by quadrature of Bob's survival function.
MetricValue spsc(const WiretapScenario& scenario);

/// 1 - SOP_LB(C_T = 0) through the closed form; requires shared (a, b).
MetricValue spsc_closed_form(const WiretapScenario& scenario);

struct SecrecyReport
{
    MetricValue asc;
    MetricValue sop_exact;
    MetricValue sop_lb;
    MetricValue spsc;
};

SecrecyReport analyse(const WiretapScenario& scenario);

}  // namespace fsosec::secrecy
