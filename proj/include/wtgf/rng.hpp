#pragma once

#include <cstdint>
#include <cmath>
#include <vector>

#include <random>

namespace wtgf::rng {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic random stream. All randomness in the library goes through
/// this wrapper so results depend only on the seed, not on the standard
/// library's distribution implementations.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : engine_(seed) {}

    /// Independent substream; substream(seed, i) != substream(seed, j) for i != j.
    static Stream substream(std::uint64_t seed, std::uint64_t index) {
        std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL * (index + 1));
        std::uint64_t mixed = splitmix64(s);
        return Stream(mixed);
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform index in [0, n). n must be positive.
    std::size_t next_index(std::size_t n) {
        return static_cast<std::size_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    double next_exp() {
        double u = next_double();
        return -std::log1p(-u);
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = next_index(i);
            std::swap(v[i - 1], v[j]);
        }
    }

    /// Dirichlet(1,...,1): uniform point on the k-simplex.
    std::vector<double> simplex_uniform(std::size_t k) {
        std::vector<double> x(k);
        double sum = 0.0;
        for (auto& xi : x) {
            xi = next_exp();
            sum += xi;
        }
        if (sum <= 0.0) {
            for (auto& xi : x) xi = 1.0 / static_cast<double>(k);
            return x;
        }
        for (auto& xi : x) xi /= sum;
        return x;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace wtgf::rng
