#ifndef BOUNDARYLAB_RNG_HPP
#define BOUNDARYLAB_RNG_HPP

#include <cmath>
#include <cstdint>

namespace boundarylab {

// Counter-based random stream keyed by (seed, stream_id). Output depends only
// on the key and the number of draws made, never on thread schedule, so any
// parallel decomposition that gives each unit of work its own stream_id is
// reproducible. Not cryptographic.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream_id)
        : key_(derive_key(seed, stream_id)) {}

    std::uint64_t next_u64() {
        return scramble(key_ + (++counter_) * 0x9e3779b97f4a7c15ull);
    }

    // Uniform in [0, 1), 53-bit mantissa.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; consumes two uniforms per pair.
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 1.0 - next_double();  // (0, 1], keeps log finite
        double u2 = next_double();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

private:
    static std::uint64_t scramble(std::uint64_t x) {
        x ^= x >> 30;
        x *= 0xbf58476d1ce4e5b9ull;
        x ^= x >> 27;
        x *= 0x94d049bb133111ebull;
        x ^= x >> 31;
        return x;
    }

    static std::uint64_t derive_key(std::uint64_t seed, std::uint64_t stream_id) {
        std::uint64_t a = scramble(seed + 0x632be59bd9b4e019ull);
        std::uint64_t b = scramble(stream_id + 0xd1b54a32d192ed03ull);
        return scramble(a ^ (b * 0x2545f4914f6cdd1dull + 0x9e3779b97f4a7c15ull));
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

inline RandomStream seeded_stream(std::uint64_t seed, std::uint64_t stream_id) {
    return RandomStream(seed, stream_id);
}

}  // namespace boundarylab

#endif  // BOUNDARYLAB_RNG_HPP
