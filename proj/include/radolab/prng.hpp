#pragma once

#include <array>
#include <cstdint>

namespace rado {

// Philox 4x32-10 counter-based generator. Every draw is addressed by four
// 32-bit counter lanes, so parallel trials can pull independent streams with
// no shared state and bitwise reproducibility per (seed, address).
class Philox {
public:
    explicit Philox(uint64_t seed)
        : key0_(static_cast<uint32_t>(seed)), key1_(static_cast<uint32_t>(seed >> 32)) {}

    std::array<uint32_t, 4> block(uint32_t c0, uint32_t c1, uint32_t c2, uint32_t c3) const {
        uint32_t k0 = key0_, k1 = key1_;
        std::array<uint32_t, 4> x = {c0, c1, c2, c3};
        for (int round = 0; round < 10; ++round) {
            uint64_t p0 = uint64_t{0xD2511F53u} * x[0];
            uint64_t p1 = uint64_t{0xCD9E8D57u} * x[2];
            x = {static_cast<uint32_t>(p1 >> 32) ^ x[1] ^ k0, static_cast<uint32_t>(p1),
                 static_cast<uint32_t>(p0 >> 32) ^ x[3] ^ k1, static_cast<uint32_t>(p0)};
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
        }
        return x;
    }

    // Uniform double in [0,1) with 53 random bits, addressed by
    // (cell, trial, element, purpose).
    double uniform(uint32_t cell, uint32_t trial, uint32_t element, uint32_t purpose) const {
        auto x = block(cell, trial, element, purpose);
        uint64_t hi = x[0] >> 6;                       // 26 bits
        uint64_t lo = x[1] >> 5;                       // 27 bits
        return static_cast<double>((hi << 27) | lo) * 0x1.0p-53;
    }

private:
    uint32_t key0_, key1_;
};

}  // namespace rado
