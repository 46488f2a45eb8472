#ifndef VNE_RNG_HPP_
#define VNE_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <random>

namespace vne {

// Deterministic random source. std:: distributions are implementation
// defined, so the draw algorithms live here and replay identically on
// every platform.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t next_u64() { return eng_(); }

    // uniform integer in [lo, hi], inclusive
    int uniform_int(int lo, int hi) {
        uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
        uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        uint64_t v;
        do {
            v = eng_();
        } while (v >= limit);
        return lo + static_cast<int>(v % span);
    }

    // uniform in [0, 1) with 53 bits
    double uniform01() { return (eng_() >> 11) * 0x1.0p-53; }

    double exponential(double mean) {
        double u = uniform01();
        return -mean * std::log1p(-u);
    }

    bool bernoulli(double p) { return uniform01() < p; }

private:
    std::mt19937_64 eng_;
};

}  // namespace vne

#endif
