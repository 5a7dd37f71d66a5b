#include "fsosec/mc_oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

#include "fsosec/error.hpp"
#include "fsosec/random.hpp"

namespace fsosec::mc {
namespace {

using secrecy::WiretapScenario;

// Running sums for one block; indicator events are kept as exact counts.
struct Tally
{
    std::uint64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;
    std::uint64_t outage = 0;
    std::uint64_t outage0 = 0;

    void add(double capacity, bool out, bool out0)
    {
        ++n;
        const double delta = capacity - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (capacity - mean);
        outage += out;
        outage0 += out0;
    }

    // Chan et al. pairwise update.
    void merge(const Tally& other)
    {
        if (other.n == 0)
            return;
        const double na = static_cast<double>(n), nb = static_cast<double>(other.n);
        const double delta = other.mean - mean;
        const double total = na + nb;
        mean += delta * nb / total;
        m2 += other.m2 + delta * delta * na * nb / total;
        n += other.n;
        outage += other.outage;
        outage0 += other.outage0;
    }
};

class PairEvaluator
{
  public:
    explicit PairEvaluator(const WiretapScenario& s)
        : threshold_(s.target_rate * std::numbers::ln2)
    {
    }

    void operator()(Tally& t, double snr_bob, double snr_eve) const
    {
        const double diff = std::log1p(snr_bob) - std::log1p(snr_eve);
        t.add(std::max(0.0, diff) / std::numbers::ln2, diff <= threshold_, diff <= 0.0);
    }

  private:
    double threshold_;
};

double draw_gain(const fading::FFadingParams& p, random::CounterStream& rng)
{
    return p.is_no_fading() ? 1.0 : fading::sample_ht(p, rng);
}

void check_scenario(const WiretapScenario& s)
{
    for (const auto* ch : {&s.bob, &s.eve})
    {
        if (!ch->fading.is_no_fading())
            ch->fading.validate();
        if (!(ch->mean_snr >= 0.0) || !std::isfinite(ch->mean_snr))
            throw DomainError("monte carlo: mean SNR must be finite and >= 0");
    }
    if (!(s.target_rate >= 0.0) || !std::isfinite(s.target_rate))
        throw DomainError("monte carlo: target rate must be finite and >= 0");
}

McEstimate proportion(std::uint64_t hits, std::uint64_t n)
{
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    McEstimate e{p, 0.0, n};
    if (n > 1)
    {
        const double nd = static_cast<double>(n);
        e.std_error = std::sqrt(p * (1.0 - p) * nd / (nd - 1.0) / nd);
    }
    return e;
}

McSecrecy finish(const Tally& t)
{
    McSecrecy out;
    out.asc = {t.mean, 0.0, t.n};
    if (t.n > 1)
        out.asc.std_error = std::sqrt(t.m2 / static_cast<double>(t.n - 1) / static_cast<double>(t.n));
    out.sop = proportion(t.outage, t.n);
    out.sop0 = proportion(t.outage0, t.n);
    out.spsc = {1.0 - out.sop0.mean, out.sop0.std_error, t.n};
    return out;
}

}  // namespace

void McConfig::validate() const
{
    if (n_samples < 1)
        throw DomainError("monte carlo: n_samples must be >= 1");
    if (batch < 1)
        throw DomainError("monte carlo: batch must be >= 1");
    if (workers < 1)
        throw DomainError("monte carlo: workers must be >= 1");
}

McSecrecy mc_secrecy(const WiretapScenario& s, const McConfig& cfg)
{
    check_scenario(s);
    cfg.validate();
    const PairEvaluator eval(s);
    const std::uint64_t blocks = (cfg.n_samples + cfg.batch - 1) / cfg.batch;
    std::vector<Tally> tallies(blocks);
    std::atomic<std::uint64_t> next{0};

    auto work = [&] {
        for (std::uint64_t blk = next++; blk < blocks; blk = next++)
        {
            const std::uint64_t lo = blk * cfg.batch;
            const std::uint64_t hi = std::min(cfg.n_samples, lo + cfg.batch);
            Tally& t = tallies[blk];
            for (std::uint64_t i = lo; i < hi; ++i)
            {
                random::CounterStream rng(cfg.seed, i);
                const double hb = draw_gain(s.bob.fading, rng);
                const double he = draw_gain(s.eve.fading, rng);
                eval(t, 4.0 * s.bob.mean_snr * hb * hb, 4.0 * s.eve.mean_snr * he * he);
            }
        }
    };

    const unsigned n_threads = static_cast<unsigned>(std::min<std::uint64_t>(cfg.workers, blocks));
    if (n_threads <= 1)
        work();
    else
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < n_threads; ++w)
            pool.emplace_back(work);
    }

    Tally total;
    for (const auto& t : tallies)
        total.merge(t);
    return finish(total);
}

McEstimate mc_asc(const WiretapScenario& s, const McConfig& cfg)
{
    return mc_secrecy(s, cfg).asc;
}

McEstimate mc_sop(const WiretapScenario& s, const McConfig& cfg)
{
    return mc_secrecy(s, cfg).sop;
}

McEstimate mc_spsc(const WiretapScenario& s, const McConfig& cfg)
{
    return mc_secrecy(s, cfg).spsc;
}

McSecrecy mc_secrecy_from_draws(const WiretapScenario& s, std::span<const double> snr_bob,
                                std::span<const double> snr_eve)
{
    if (snr_bob.size() != snr_eve.size() || snr_bob.empty())
        throw DomainError("monte carlo: draw spans must be non-empty and of equal length");
    const PairEvaluator eval(s);
    Tally t;
    for (std::size_t i = 0; i < snr_bob.size(); ++i)
    {
        if (!(snr_bob[i] >= 0.0) || !(snr_eve[i] >= 0.0))
            throw DomainError("monte carlo: forced SNR draws must be >= 0");
        eval(t, snr_bob[i], snr_eve[i]);
    }
    return finish(t);
}

}  // namespace fsosec::mc
