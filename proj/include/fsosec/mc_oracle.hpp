#pragma once

#include <cstdint>
#include <span>

#include "fsosec/secrecy.hpp"

namespace fsosec::mc {

/*!
 * Sample i always draws from random::CounterStream(seed, i), so the logical
 * sample sequence is fixed by the seed alone. `batch` sets the size of the
 * accumulation blocks handed to workers; blocks are merged in index order,
 * which makes the estimate independent of `workers`.
 */
struct McConfig
{
    std::uint64_t n_samples = 1'000'000;
    std::uint64_t seed = 1;
    std::uint64_t batch = 65'536;
    unsigned workers = 1;

    void validate() const;
};

struct McEstimate
{
    double mean = 0.0;
    double std_error = 0.0;  //!< sample std / sqrt(n); 0 when n == 1
    std::uint64_t n = 0;
};

/// All three metrics from one pass over the same paired draws.
struct McSecrecy
{
    McEstimate asc;   //!< bits/s/Hz
    McEstimate sop;   //!< Pr[log2((1 + gB) / (1 + gE)) <= C_T]
    McEstimate sop0;  //!< the same event at C_T = 0
    McEstimate spsc;  //!< complement of sop0 on the same draws
};

McSecrecy mc_secrecy(const secrecy::WiretapScenario& scenario, const McConfig& cfg);

McEstimate mc_asc(const secrecy::WiretapScenario& scenario, const McConfig& cfg);
McEstimate mc_sop(const secrecy::WiretapScenario& scenario, const McConfig& cfg);
McEstimate mc_spsc(const secrecy::WiretapScenario& scenario, const McConfig& cfg);

/// Estimators applied to caller-supplied SNR pairs instead of sampled ones.
McSecrecy mc_secrecy_from_draws(const secrecy::WiretapScenario& scenario, std::span<const double> snr_bob,
                                std::span<const double> snr_eve);

}  // namespace fsosec::mc
