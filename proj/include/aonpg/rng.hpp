#pragma once

#include <cstdint>
#include <limits>

namespace aonpg {

//---------------------------------------------------------------------------//
/*!
 * SplitMix64 output function.
 *
 * Bijective 64-bit finalizer (Steele, Lea & Flood 2014). See
 * https://prng.di.unimi.it for the reference implementation.
 */
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t golden_gamma = 0x9e3779b97f4a7c15ull;

//---------------------------------------------------------------------------//
/*!
 * Seed of the stream with the given index under a master seed.
 *
 * This is the (index+1)-th output of a SplitMix64 generator seeded with
 * \c master, so appending streams never changes earlier ones.
 */
constexpr std::uint64_t derive_seed(std::uint64_t master,
                                    std::uint64_t index) noexcept
{
    return mix64(master + (index + 1) * golden_gamma);
}

//---------------------------------------------------------------------------//
/*!
 * xoshiro256** 1.0 (Blackman & Vigna), seeded by four successive SplitMix64
 * outputs of the user seed.
 *
 * Every derived quantity (uniform doubles, bounded integers) is produced by
 * a fixed integer algorithm so streams are identical on every platform.
 * Satisfies UniformRandomBitGenerator.
 */
class Rng
{
  public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) noexcept
    {
        std::uint64_t sm = seed;
        for (auto& word : s_)
        {
            sm += golden_gamma;
            word = mix64(sm);
        }
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept
    {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() noexcept
    {
        std::uint64_t const result = rotl(s_[1] * 5, 7) * 9;
        std::uint64_t const t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    //! Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept
    {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

    //! Uniform double in (0, 1); zero draws are rejected and redrawn.
    double uniform_positive() noexcept
    {
        double u = uniform();
        while (u == 0.0)
        {
            u = uniform();
        }
        return u;
    }

    //! Unbiased integer in [0, bound) by Lemire's multiply-and-reject.
    std::uint64_t below(std::uint64_t bound) noexcept
    {
        __uint128_t m = static_cast<__uint128_t>((*this)()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound)
        {
            std::uint64_t const threshold = (0 - bound) % bound;
            while (low < threshold)
            {
                m = static_cast<__uint128_t>((*this)()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

  private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept
    {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
};

}  // namespace aonpg
