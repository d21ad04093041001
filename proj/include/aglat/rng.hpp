#pragma once

#include <cstdint>
#include <gmpxx.h>

namespace aglat {

using Int = mpz_class;
using Rat = mpq_class;

// Deterministic randomness source (GMP Mersenne Twister under the hood).
// All library operations that need randomness take one of these explicitly,
// so identical seeds give identical results everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    // uniform in [0, 2^n)
    Int bits(unsigned long n);
    // uniform in [0, bound), bound >= 1
    Int below(const Int& bound);
    // uniform in [lo, hi], inclusive
    Int range(const Int& lo, const Int& hi);
    long range_long(long lo, long hi);
    bool coin();
    std::uint64_t u64();

    // Stable seed derivation for per-task streams: mixes (seed, a, b) with
    // splitmix64 so concurrent trials never share a stream.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

private:
    gmp_randclass state_;
};

} // namespace aglat
