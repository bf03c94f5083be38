#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace fieldline {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Deterministic stream: mt19937_64 seeded through a splitmix64 expansion of
// (root seed, stream id). Identical inputs reproduce identical streams on
// every platform; doubles carry the top 53 bits.
class rng_stream {
public:
    explicit rng_stream(std::uint64_t root_seed, std::uint64_t stream_id = 0) {
        std::uint64_t s = root_seed;
        (void)splitmix64(s);
        s ^= 0xD1B54A32D192ED03ull * (stream_id + 1);
        engine_.seed(splitmix64(s));
    }

    std::uint64_t next_u64() { return engine_(); }

    double next_double() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // inverse-CDF draw from an explicit probability vector
    int pick(const std::vector<double>& probs) {
        const double u = next_double();
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
            acc += probs[i];
            if (u < acc) return static_cast<int>(i);
        }
        return static_cast<int>(probs.size()) - 1;
    }

    static const char* name() { return "mt19937_64+splitmix64"; }

private:
    std::mt19937_64 engine_;
};

}  // namespace fieldline
