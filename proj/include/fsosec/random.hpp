#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace fsosec::random {

/// Philox4x32-10 block function (Salmon et al., Random123).
class Philox4x32
{
  public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter block(Counter ctr, Key key)
    {
        for (int round = 0; round < 10; ++round)
        {
            if (round > 0)
            {
                key[0] += 0x9E3779B9u;
                key[1] += 0xBB67AE85u;
            }
            const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
            ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
                   static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
                   static_cast<std::uint32_t>(p0)};
        }
        return ctr;
    }
};

/*!
 * Sequential view of one Philox counter lane.
 *
 * A stream is identified by (seed, index, lane): the seed is the key, the
 * index and lane fill the upper counter words, and the lowest word counts
 * blocks. Two streams with different (index, lane) never overlap, so each
 * Monte Carlo sample can own a stream regardless of which worker draws it.
 */
class CounterStream
{
  public:
    CounterStream(std::uint64_t seed, std::uint64_t index, std::uint32_t lane = 0)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          ctr_{0u, lane, static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)}
    {
    }

    std::uint32_t next_u32()
    {
        if (used_ == 4)
        {
            buffer_ = Philox4x32::block(ctr_, key_);
            ++ctr_[0];
            used_ = 0;
        }
        return buffer_[used_++];
    }

    std::uint64_t next_u64()
    {
        const std::uint64_t hi = next_u32();
        return (hi << 32) | next_u32();
    }

    /// Uniform on the open interval (0, 1) with 53 random bits.
    double uniform() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

  private:
    Philox4x32::Key key_;
    Philox4x32::Counter ctr_;
    Philox4x32::Counter buffer_{};
    int used_ = 4;
};

/// Standard normal by the Marsaglia polar method (second variate is discarded).
template <class Stream>
double normal(Stream& rng)
{
    for (;;)
    {
        const double u = 2.0 * rng.uniform() - 1.0;
        const double v = 2.0 * rng.uniform() - 1.0;
        const double s = u * u + v * v;
        if (s > 0.0 && s < 1.0)
            return u * std::sqrt(-2.0 * std::log(s) / s);
    }
}

/*!
 * Gamma(shape, 1) variate, exact for every shape > 0.
 *
 * Marsaglia-Tsang squeeze/rejection for shape >= 1; smaller shapes are
 * boosted through Gamma(shape + 1) * U^{1/shape}.
 */
template <class Stream>
double gamma(double shape, Stream& rng)
{
    if (shape < 1.0)
    {
        const double boosted = gamma(shape + 1.0, rng);
        return boosted * std::pow(rng.uniform(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;)
    {
        double x, v;
        do
        {
            x = normal(rng);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2)
            return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v)))
            return d * v;
    }
}

}  // namespace fsosec::random
