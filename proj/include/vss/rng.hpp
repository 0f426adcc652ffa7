// rng.hpp - seedable deterministic randomness
#ifndef VSS_RNG_HPP
#define VSS_RNG_HPP

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "vss/bits.hpp"

namespace vss {

// splitmix64 step (public-domain mixer by Sebastiano Vigna).
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Byte digest built by folding splitmix64 over the input, length-absorbed.
// 8 bytes out, big-endian. Used as the default control-number digest and
// for file fingerprints; not a cryptographic hash.
inline std::vector<std::uint8_t> mix64_digest(std::span<const std::uint8_t> data) {
    std::uint64_t h = 0x243F6A8885A308D3ull;
    for (std::uint8_t b : data) h = splitmix64(h ^ b);
    h = splitmix64(h ^ static_cast<std::uint64_t>(data.size()));
    std::vector<std::uint8_t> out(8);
    for (int i = 0; i < 8; ++i) out[i] = static_cast<std::uint8_t>(h >> (56 - 8 * i));
    return out;
}

// Deterministic random stream. mt19937_64 output is fully specified by the
// standard, and bounded draws use rejection sampling rather than
// std::uniform_int_distribution, so sequences are identical across platforms.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : gen_(seed) {}

    // Independent stream for one trial of a batch job.
    static RandomSource for_trial(std::uint64_t seed, std::uint64_t trial) {
        return RandomSource(splitmix64(splitmix64(seed) ^ trial));
    }

    std::uint64_t next_u64() { return gen_(); }

    // Uniform draw from [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("RandomSource::below: zero bound");
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound + 1) % bound;
        std::uint64_t v;
        do {
            v = gen_();
        } while (v > limit);
        return v % bound;
    }

    int bit() { return static_cast<int>(gen_() >> 63); }

    std::uint32_t field_value(std::uint32_t p) { return static_cast<std::uint32_t>(below(p)); }

    BitVector bits(std::size_t width) {
        BitVector v(width);
        for (std::size_t i = 0; i < width; ++i) v.set_bit(i, bit());
        return v;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace vss

#endif  // VSS_RNG_HPP
