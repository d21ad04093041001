#include "aglat/rng.hpp"

#include <stdexcept>

namespace aglat {

namespace {

std::uint64_t splitmix64(std::uint64_t& s) {
    s += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

Rng::Rng(std::uint64_t seed) : state_(gmp_randinit_mt) {
    Int s;
    mpz_import(s.get_mpz_t(), 1, 1, sizeof(seed), 0, 0, &seed);
    state_.seed(s);
}

Int Rng::bits(unsigned long n) { return state_.get_z_bits(n); }

Int Rng::below(const Int& bound) {
    if (bound <= 0) throw std::domain_error("Rng::below requires bound >= 1");
    return state_.get_z_range(bound);
}

Int Rng::range(const Int& lo, const Int& hi) {
    if (lo > hi) throw std::domain_error("Rng::range requires lo <= hi");
    return lo + below(hi - lo + 1);
}

long Rng::range_long(long lo, long hi) {
    return static_cast<long>(range(Int(lo), Int(hi)).get_si());
}

bool Rng::coin() { return bits(1) == 1; }

std::uint64_t Rng::u64() {
    Int v = bits(64);
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, v.get_mpz_t());
    return out;
}

std::uint64_t Rng::derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = seed;
    std::uint64_t h = splitmix64(s);
    s ^= a + 0x9e3779b97f4a7c15ULL;
    h ^= splitmix64(s);
    s ^= b + 0xbf58476d1ce4e5b9ULL;
    h ^= splitmix64(s);
    return h ? h : 0x123456789abcdefULL; // keep derived seeds nonzero
}

} // namespace aglat
