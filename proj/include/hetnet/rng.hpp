#pragma once

// Counter-based RNG (Philox4x32-10, Salmon et al. SC'11 / Random123) plus the
// hand-rolled samplers the simulator relies on. std:: distributions are
// implementation-defined, so everything here is spelled out to keep results
// bit-stable across platforms and versions.
//
// Stream derivation contract (stable across versions):
//   key     = (seed lo32, seed hi32)
//   counter = (block lo32, block hi32, stream lo32, stream hi32)
// where `block` starts at 0 and increments once per 128-bit output block.
// The Monte Carlo driver uses stream = round index.

#include <cmath>
#include <cstdint>

namespace hetnet {

class PhiloxRng {
  public:
    using result_type = std::uint64_t;

    PhiloxRng(std::uint64_t seed, std::uint64_t stream)
        : key0_(static_cast<std::uint32_t>(seed)),
          key1_(static_cast<std::uint32_t>(seed >> 32)),
          stream_(stream) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~static_cast<result_type>(0); }

    result_type operator()() {
        if (pos_ == 2) {
            fill_block();
            pos_ = 0;
        }
        return out_[pos_++];
    }

  private:
    void fill_block() {
        constexpr std::uint32_t kMul0 = 0xD2511F53u;
        constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
        constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
        constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

        std::uint32_t c0 = static_cast<std::uint32_t>(block_);
        std::uint32_t c1 = static_cast<std::uint32_t>(block_ >> 32);
        std::uint32_t c2 = static_cast<std::uint32_t>(stream_);
        std::uint32_t c3 = static_cast<std::uint32_t>(stream_ >> 32);
        std::uint32_t k0 = key0_, k1 = key1_;

        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c0;
            const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c2;
            const std::uint32_t n0 = static_cast<std::uint32_t>(p1 >> 32) ^ c1 ^ k0;
            const std::uint32_t n1 = static_cast<std::uint32_t>(p1);
            const std::uint32_t n2 = static_cast<std::uint32_t>(p0 >> 32) ^ c3 ^ k1;
            const std::uint32_t n3 = static_cast<std::uint32_t>(p0);
            c0 = n0;
            c1 = n1;
            c2 = n2;
            c3 = n3;
            k0 += kWeyl0;
            k1 += kWeyl1;
        }

        out_[0] = static_cast<std::uint64_t>(c0) | (static_cast<std::uint64_t>(c1) << 32);
        out_[1] = static_cast<std::uint64_t>(c2) | (static_cast<std::uint64_t>(c3) << 32);
        ++block_;
    }

    std::uint32_t key0_, key1_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::uint64_t out_[2] = {0, 0};
    int pos_ = 2;
};

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_double(PhiloxRng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_range(PhiloxRng& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform_double(rng);
}

/// Exponential with unit mean via inverse CDF. uniform_double never returns 1,
/// so the log argument stays positive.
inline double exponential_unit(PhiloxRng& rng) {
    return -std::log1p(-uniform_double(rng));
}

/// Exact Poisson sampling by block decomposition: a Poisson(mean) draw is the
/// sum of independent Poisson draws with block means <= 16, each sampled by
/// sequential inverse-CDF search. Exact in distribution, no large-mean
/// approximation, and free of exp() underflow.
inline std::int64_t poisson(PhiloxRng& rng, double mean) {
    std::int64_t total = 0;
    double remaining = mean;
    while (remaining > 0.0) {
        const double m = remaining > 16.0 ? 16.0 : remaining;
        remaining -= m;
        const double u = uniform_double(rng);
        double p = std::exp(-m);
        double cum = p;
        std::int64_t k = 0;
        while (u > cum && k < 512) {
            ++k;
            p *= m / static_cast<double>(k);
            cum += p;
        }
        total += k;
    }
    return total;
}

}  // namespace hetnet
