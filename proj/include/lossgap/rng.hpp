#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace lossgap {

// SplitMix64 finalizer. Used to derive per-trial seeds from a master seed:
//   trial_seed(master, t) = mix64(master + (t + 1) * 0x9E3779B97F4A7C15)
// Trials are therefore order-independent and may run concurrently.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

constexpr std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index) {
    return mix64(master_seed + (trial_index + 1) * 0x9E3779B97F4A7C15ull);
}

// Deterministic random stream: mt19937_64 (output sequence fixed by the
// standard) with uniforms mapped to (0,1] and normals via Box-Muller.
// The same seed always reproduces the same draw sequence.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // uniform on (0, 1]
    double next_unit() {
        return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    }

    // standard normal; Box-Muller, second variate cached
    double next_normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = next_unit();
        const double u2 = next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * pi_ * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    double next_normal(double mean, double stddev) {
        return mean + stddev * next_normal();
    }

    // uniform on [-1, 1] scaled
    double next_symmetric(double scale) {
        return scale * (2.0 * next_unit() - 1.0);
    }

    int next_sign() { return (engine_() & 1u) ? 1 : -1; }

private:
    static constexpr double pi_ = 3.14159265358979323846;
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace lossgap
