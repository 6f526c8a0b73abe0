#pragma once

#include <cstdint>
#include <string>

#include "ringtower/errors.hpp"

namespace ringtower {

// Modular arithmetic on uint64 with modulus < 2^32 so products never overflow.
inline uint64_t mod_add(uint64_t a, uint64_t b, uint64_t m) { return (a + b) % m; }
inline uint64_t mod_sub(uint64_t a, uint64_t b, uint64_t m) { return (a + m - b % m) % m; }
inline uint64_t mod_mul(uint64_t a, uint64_t b, uint64_t m) { return (a * b) % m; }

inline uint64_t mod_pow(uint64_t base, uint64_t exp, uint64_t m) {
    uint64_t r = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) r = mod_mul(r, base, m);
        base = mod_mul(base, base, m);
        exp >>= 1;
    }
    return r;
}

// p^n as a safe uint64 modulus; throws when the power would make products unsafe.
inline uint64_t checked_pow_u64(uint64_t p, unsigned n) {
    uint64_t r = 1;
    for (unsigned i = 0; i < n; ++i) {
        if (r > (uint64_t(1) << 32) / p)
            throw config_error("modulus " + std::to_string(p) + "^" + std::to_string(n) +
                               " exceeds the supported 32-bit range");
        r *= p;
    }
    return r;
}

inline int64_t ipow_i64(int64_t b, unsigned n) {
    int64_t r = 1;
    for (unsigned i = 0; i < n; ++i) r *= b;
    return r;
}

// Deterministic, platform-independent RNG (splitmix64). std::mt19937 with
// std::uniform_int_distribution is not guaranteed to produce identical
// sequences across standard libraries, and the reports must be byte-stable.
class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound) by rejection; bound > 0.
    uint64_t below(uint64_t bound) {
        const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % bound;
    }

    int64_t range(int64_t lo, int64_t hi) { // inclusive ends, lo <= hi
        return lo + int64_t(below(uint64_t(hi - lo + 1)));
    }

  private:
    uint64_t state_;
};

// Stable 64-bit string hash (FNV-1a); used to derive per-case RNG seeds so
// that results do not depend on case execution order.
inline uint64_t stable_hash(const std::string& s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace ringtower
