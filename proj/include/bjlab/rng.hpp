#pragma once

// Deterministic random source for searches and property suites.
// All randomness flows through this wrapper so that a (seed, round) pair
// reproduces the exact same sample stream on every run; the gaussian is a
// hand-rolled Box-Muller because std::normal_distribution's output sequence
// is implementation defined.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace bjlab {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(splitmix64(seed)) {}

    // Independent stream for one search round / trial; mixing keeps streams
    // decorrelated even for consecutive round numbers.
    static Rng stream(std::uint64_t seed, std::uint64_t round) {
        return Rng(splitmix64(seed) ^ splitmix64(round * 0xd1342543de82ef95ull + 0x2545f4914f6cdd1dull));
    }

    std::uint64_t next_u64() { return eng_(); }

    // uniform in [0, 1)
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    std::size_t index(std::size_t n) {
        return static_cast<std::size_t>(next_u64() % n);
    }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    std::vector<double> gaussian_vec(std::size_t n) {
        std::vector<double> v(n);
        for (auto& c : v) c = gaussian();
        return v;
    }

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace bjlab
