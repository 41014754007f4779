#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

namespace lup {

// Philox 4x32-10 counter-based generator (Salmon et al., SC 2011).
//
// Keyed by (seed, stream_id): same pair replays the same sequence, distinct
// stream ids occupy disjoint counter spaces and are statistically
// independent, which is what makes Monte Carlo results reproducible no
// matter how samples are distributed over workers.
class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id)
        : seed_(seed), stream_(stream_id) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_; }

    // Derived stream, decorrelated from this one and from other indices.
    RngStream substream(std::uint64_t index) const {
        return RngStream(seed_, mix64(stream_ ^ mix64(index + 0x9e3779b97f4a7c15ull)));
    }

    std::uint32_t next_u32() {
        if (pos_ == 4) refill();
        return block_[pos_++];
    }

    std::uint64_t next_u64() {
        const std::uint64_t lo = next_u32();
        const std::uint64_t hi = next_u32();
        return (hi << 32) | lo;
    }

    // uniform on (0, 1]; never returns 0 so log(u) is always finite
    double next_uniform() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1p-53;
    }

    // standard normal via Box-Muller on the counter-based uniform stream
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = next_uniform();
        const double u2 = next_uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    // centred complex Gaussian with E|g|^2 = variance (each part variance/2)
    std::complex<double> next_complex_gaussian(double variance) {
        const double s = std::sqrt(0.5 * variance);
        const double re = next_gaussian();
        const double im = next_gaussian();
        return {s * re, s * im};
    }

    // one 128-bit Philox block; counter words (c0,c1) from block_index,
    // (c2,c3) from stream_id, key from seed
    static std::array<std::uint32_t, 4> philox_block(std::uint64_t seed, std::uint64_t stream_id,
                                                     std::uint64_t block_index) {
        std::uint32_t c0 = static_cast<std::uint32_t>(block_index);
        std::uint32_t c1 = static_cast<std::uint32_t>(block_index >> 32);
        std::uint32_t c2 = static_cast<std::uint32_t>(stream_id);
        std::uint32_t c3 = static_cast<std::uint32_t>(stream_id >> 32);
        std::uint32_t k0 = static_cast<std::uint32_t>(seed);
        std::uint32_t k1 = static_cast<std::uint32_t>(seed >> 32);
        for (int round = 0; round < 10; ++round) {
            std::uint32_t hi0, lo0, hi1, lo1;
            mul_hilo(0xD2511F53u, c0, hi0, lo0);
            mul_hilo(0xCD9E8D57u, c2, hi1, lo1);
            const std::uint32_t n0 = hi1 ^ c1 ^ k0;
            const std::uint32_t n1 = lo1;
            const std::uint32_t n2 = hi0 ^ c3 ^ k1;
            const std::uint32_t n3 = lo0;
            c0 = n0;
            c1 = n1;
            c2 = n2;
            c3 = n3;
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
        }
        return {c0, c1, c2, c3};
    }

  private:
    static std::uint64_t mix64(std::uint64_t z) {
        // splitmix64 finalizer
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    static void mul_hilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
        const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
        hi = static_cast<std::uint32_t>(p >> 32);
        lo = static_cast<std::uint32_t>(p);
    }

    void refill() {
        block_ = philox_block(seed_, stream_, counter_);
        pos_ = 0;
        ++counter_;
    }

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
    std::array<std::uint32_t, 4> block_{};
    int pos_ = 4;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace lup
