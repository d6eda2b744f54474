// rng.hpp - splitmix64, the only random source in the library.
//
// Every stochastic draw goes through this generator so trained models are
// reproducible bit for bit. Draw conventions:
//   next_double()  = (next() >> 11) * 2^-53, uniform in [0, 1)
//   next_index(n)  = high 64 bits of next() * n, uniform-ish in [0, n)
//   shuffle()      = Fisher-Yates from the back, one next_index per swap
//   stream(seed,i) = independent generator for ensemble member i

#ifndef SENTI_RNG_HPP
#define SENTI_RNG_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>

namespace senti
{

class splitmix64
{
public:
    explicit constexpr splitmix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double next_double() noexcept
    {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) noexcept
    {
        return lo + (hi - lo) * next_double();
    }

    std::size_t next_index(std::size_t n) noexcept
    {
        const unsigned __int128 wide = static_cast<unsigned __int128>(next()) * n;
        return static_cast<std::size_t>(wide >> 64);
    }

    template <typename T>
    void shuffle(std::span<T> items) noexcept
    {
        for (std::size_t i = items.size(); i > 1; --i)
        {
            const std::size_t j = next_index(i);
            std::swap(items[i - 1], items[j]);
        }
    }

    /// Generator for member `index` of an ensemble trained from `seed`.
    /// Depends only on (seed, index), never on scheduling.
    static splitmix64 stream(std::uint64_t seed, std::uint64_t index) noexcept
    {
        splitmix64 mixer(seed ^ ((index + 1) * 0xd1b54a32d192ed03ULL));
        return splitmix64(mixer.next());
    }

private:
    std::uint64_t state_;
};

}  // namespace senti

#endif  // SENTI_RNG_HPP
