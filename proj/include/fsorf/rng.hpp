#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace fsorf {

// Philox2x64-10 counter-based generator (Salmon et al., SC 2011).
// A stream is (key = seed, counter hi = stream index, counter lo = block
// index); draws are a pure function of (seed, stream, position), so trial
// partitioning across workers cannot change any sampled value.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream)
        : key_(seed), hi_(stream) {}

    std::uint64_t next_u64() {
        if (avail_ == 0) {
            block(key_, blk_++, hi_, out_);
            avail_ = 2;
        }
        return out_[--avail_];
    }

    /// uniform on the open interval (0, 1)
    double uniform() {
        return ((next_u64() >> 11) + 0.5) * 0x1p-53;
    }

    double exponential(double mean) { return -mean * std::log(uniform()); }

    /// standard normal via Box-Muller (cosine leg only; streams stay aligned)
    double normal() {
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
    }

    /// Gamma(shape, scale = 1) by Marsaglia-Tsang squeeze
    double gamma_variate(double shape) {
        if (!(shape > 0.0)) throw std::domain_error("gamma_variate: shape must be positive");
        if (shape < 1.0)
            return gamma_variate(shape + 1.0) * std::pow(uniform(), 1.0 / shape);
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    /// unit-mean Gamma variate (shape k, scale 1/k)
    double gamma_unit_mean(double shape) { return gamma_variate(shape) / shape; }

private:
    static void block(std::uint64_t key, std::uint64_t c0, std::uint64_t c1,
                      std::uint64_t out[2]) {
        constexpr std::uint64_t M = 0xD2B74407B1CE6E93ULL;
        constexpr std::uint64_t W = 0x9E3779B97F4A7C15ULL;
        std::uint64_t k = key;
        for (int round = 0; round < 10; ++round) {
            const unsigned __int128 prod = (unsigned __int128)M * c0;
            const std::uint64_t lo = (std::uint64_t)prod;
            const std::uint64_t hi = (std::uint64_t)(prod >> 64);
            c0 = hi ^ k ^ c1;
            c1 = lo;
            k += W;
        }
        out[0] = c0;
        out[1] = c1;
    }

    std::uint64_t key_, hi_;
    std::uint64_t blk_ = 0;
    std::uint64_t out_[2]{};
    int avail_ = 0;
};

}  // namespace fsorf
