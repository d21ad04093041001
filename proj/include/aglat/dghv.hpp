#pragma once

#include <vector>

#include "aglat/params.hpp"
#include "aglat/rng.hpp"

namespace aglat {

// Key material for the integer scheme. pk is x[0..tau] with x[0] the
// reduction modulus; p is the secret. q/r ground truth is retained only in
// instrumented mode (never serialized publicly).
struct DghvKeyPair {
    Params params;
    std::uint64_t seed = 0;
    Int p;              // secret odd integer in [2^(eta-1), 2^eta)
    std::vector<Int> x; // tau+1 public integers, x[0] first
    bool instrumented = false;
    std::vector<Int> q; // per-index quotients (instrumented only)
    std::vector<Int> r; // per-index noises (instrumented only)
};

// Everything encrypt decided, for instrumented experiments: the ciphertext,
// the noise r, the subset of [1..tau] summed in, and how many multiples of
// x0 the centered reduction folded out (signed).
struct EncryptResult {
    Int c;
    Int r;
    std::vector<long> subset;
    Int fold;
};

// Unique z == c (mod modulus) with -modulus/2 < z <= modulus/2.
Int centered_mod(const Int& c, const Int& modulus);

// Parity in {0,1} of |z|.
int parity(const Int& z);

DghvKeyPair keygen(const Params& params, Rng& rng, bool instrumented = false);

Int encrypt(const DghvKeyPair& kp, int m, Rng& rng);
EncryptResult encrypt_detail(const DghvKeyPair& kp, int m, Rng& rng);
// Forced randomness (tests and fixtures).
EncryptResult encrypt_with(const DghvKeyPair& kp, int m, const Int& r,
                           const std::vector<long>& subset);

int decrypt(const Int& p, const Int& c);

Int eval_add(const Int& c1, const Int& c2, const Int& x0);
Int eval_mul(const Int& c1, const Int& c2, const Int& x0);

// Test oracle: the centered residue mod p that decryption takes the parity of.
Int noise_of(const Int& p, const Int& c);

// Test oracle: naive AGCD search (guess noises, take gcds, verify).
// Guarded to tiny parameters; throws GuardError / NotFoundError.
Int brute_force_agcd(const std::vector<Int>& pk_x, const Params& params);

} // namespace aglat
