#ifndef COOP_RNG_HPP
#define COOP_RNG_HPP

// Counter-based random numbers.
//
// Every variate is a pure function of (seed, stream, counter):
//
//   bits(seed, stream, counter) = mix(mix(mix(seed) ^ stream * G) ^ counter * G2)
//
// where mix is the splitmix64 finaliser and G, G2 are odd 64-bit constants.
// Uniforms take the top 53 bits, mapped to (0,1) by (x + 0.5) / 2^53.
// Normals use the cosine branch of Box-Muller on the uniforms at counters
// 2c and 2c+1, so normal #c in a stream never shares draws with normal #c+1.
//
// Nothing depends on <random> distributions, whose output differs between
// standard libraries, so streams reproduce on any conforming compiler.

#include <cmath>
#include <cstdint>
#include <numbers>

namespace coop {

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t counter_bits(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter)
{
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ (stream * 0xD1B54A32D192ED03ULL));
    return splitmix64(h ^ (counter * 0x8CB92BA72F3D8DD7ULL));
}

inline double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter)
{
    return (static_cast<double>(counter_bits(seed, stream, counter) >> 11) + 0.5) * 0x1.0p-53;
}

inline double counter_normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter)
{
    const double u1 = counter_uniform(seed, stream, 2 * counter);
    const double u2 = counter_uniform(seed, stream, 2 * counter + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

/// Sequential view over one stream, for code that just wants "the next number".
class StreamRng {
public:
    StreamRng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

    double uniform() { return counter_uniform(seed_, stream_, counter_++); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double normal() { return counter_normal(seed_, stream_, counter_++); }

    /// Integer in [0, n) by multiply-shift on 53 random bits; bias is below 2^-40 for the sizes used here.
    std::uint64_t below(std::uint64_t n) { return static_cast<std::uint64_t>(uniform() * static_cast<double>(n)); }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
};

/// Seed of the index-th independent work item.
inline std::uint64_t derived_seed(std::uint64_t master, std::uint64_t index) { return master ^ index; }

}  // namespace coop

#endif  // COOP_RNG_HPP
