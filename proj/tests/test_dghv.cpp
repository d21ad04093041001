#include <doctest.h>

#include <stdexcept>

#include "aglat/dghv.hpp"
#include "aglat/errors.hpp"
#include "aglat/params.hpp"

using namespace aglat;

namespace {

const char* kBigCipherOdd =
    "-196848789281973859727465844151315553725055119450697291705147663567242373";
const char* kBigCipherEven =
    "-196848789281973859727465844151315553725055119450697291705147663567242374";
const Int kToyP("134217729");
const Params kToyParams{3, 3, 27, 243, 246, 27};

DghvKeyPair toy_instance(std::uint64_t seed) {
    Rng rng(seed);
    DghvKeyPair kp = keygen(kToyParams, rng, true);
    kp.seed = seed;
    return kp;
}

} // namespace

TEST_CASE("centered_mod: canonical representative in (-m/2, m/2]") {
    CHECK(centered_mod(7, 10) == -3);
    CHECK(centered_mod(5, 10) == 5); // upper boundary stays positive
    CHECK(centered_mod(-3, 10) == -3);
    CHECK(centered_mod(0, 7) == 0);
    CHECK(centered_mod(10, 7) == 3);
    CHECK(centered_mod(-10, 7) == -3);
    CHECK(centered_mod(4, 7) == -3);

    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        const Int c = rng.range(-1000000, 1000000);
        const Int p = rng.range(1, 99999) * 2 + 1;
        const Int z = centered_mod(c, p);
        CHECK((c - z) % p == 0);
        CHECK(2 * z <= p);
        CHECK(2 * z > -p);
    }
}

TEST_CASE("parity convention on signed residues") {
    CHECK(parity(0) == 0);
    CHECK(parity(3) == 1);
    CHECK(parity(-3) == 1);
    CHECK(parity(-48) == 0);
    CHECK(parity(Int(kBigCipherOdd)) == 1);
}

TEST_CASE("decrypt: known-answer fixtures") {
    CHECK(decrypt(kToyP, 7) == 1);          // 1 + 2*3, no masking
    CHECK(decrypt(kToyP, 2 * kToyP) == 0);  // exact multiple
    CHECK(decrypt(kToyP, Int(kBigCipherOdd)) == 1);
    CHECK(decrypt(kToyP, Int(kBigCipherEven)) == 0);
    CHECK(noise_of(kToyP, Int(kBigCipherOdd)) == -47);
    CHECK(noise_of(kToyP, Int(kBigCipherEven)) == -48);
    CHECK(noise_of(kToyP, kToyP) == 0);
    CHECK(noise_of(kToyP, 7) == 7);
}

TEST_CASE("keygen: structural invariants at the toy size") {
    DghvKeyPair kp = toy_instance(101);
    REQUIRE(kp.x.size() == static_cast<std::size_t>(kToyParams.tau + 1));
    REQUIRE(kp.q.size() == kp.x.size());
    REQUIRE(kp.r.size() == kp.x.size());

    const Int lo = Int(1) << 26;
    const Int hi = Int(1) << 27;
    CHECK(kp.p >= lo);
    CHECK(kp.p < hi);
    CHECK(parity(kp.p) == 1);

    CHECK(kp.x[0] > 0);
    CHECK(parity(kp.x[0]) == 1);
    CHECK(kp.x[0] == kp.q[0] * kp.p + 2 * kp.r[0]);
    CHECK(parity(kp.q[0]) == 1);

    const Int q_cap = ((Int(1) << 243) - 1) / kp.p;
    const Int noise_cap = Int(1) << 3;
    for (long i = 0; i <= kToyParams.tau; ++i) {
        CHECK(kp.q[i] >= 0);
        CHECK(kp.q[i] <= q_cap);
        CHECK(kp.q[i] <= kp.q[0]); // the modulus element carries the largest quotient
        CHECK(abs(kp.r[i]) <= noise_cap);
        if (i > 0) {
            CHECK(kp.x[i] == centered_mod(kp.q[i] * kp.p + 2 * kp.r[i], kp.x[0]));
            CHECK(2 * kp.x[i] <= kp.x[0]);
            CHECK(2 * kp.x[i] > -kp.x[0]);
        }
    }
}

TEST_CASE("keygen: identical seeds reproduce the keypair") {
    const DghvKeyPair a = toy_instance(7);
    const DghvKeyPair b = toy_instance(7);
    CHECK(a.p == b.p);
    CHECK(a.x == b.x);
    CHECK(a.q == b.q);
    CHECK(a.r == b.r);
    const DghvKeyPair c = toy_instance(8);
    CHECK(a.x != c.x);
}

TEST_CASE("encrypt: forced randomness fixtures") {
    const DghvKeyPair kp = toy_instance(21);

    // no noise, no masking: the ciphertext is the message itself
    CHECK(encrypt_with(kp, 0, 0, {}).c == 0);
    CHECK(encrypt_with(kp, 1, 0, {}).c == 1);
    CHECK(encrypt_with(kp, 1, 3, {}).c == 7);
    CHECK(decrypt(kp.p, 7) == 1);

    // masking by public elements folds back into the centered range
    const EncryptResult res = encrypt_with(kp, 1, 2, {1, 5, 9});
    Int sum = 1 + 2 * 2 + kp.x[1] + kp.x[5] + kp.x[9];
    CHECK(res.c == centered_mod(sum, kp.x[0]));
    CHECK(sum - res.fold * kp.x[0] == res.c);
    CHECK(decrypt(kp.p, res.c) == 1);

    CHECK_THROWS_AS(encrypt_with(kp, 2, 0, {}), std::domain_error);
    CHECK_THROWS_AS(encrypt_with(kp, 0, 0, {0}), std::domain_error);
    CHECK_THROWS_AS(encrypt_with(kp, 0, 0, {kToyParams.tau + 1}), std::domain_error);
}

TEST_CASE("encrypt: sampled randomness stays in contract") {
    const DghvKeyPair kp = toy_instance(33);
    Rng rng(90);
    for (int i = 0; i < 50; ++i) {
        const int m = rng.coin() ? 1 : 0;
        const EncryptResult res = encrypt_detail(kp, m, rng);
        CHECK(abs(res.r) <= 8);
        for (long idx : res.subset) {
            CHECK(idx >= 1);
            CHECK(idx <= kToyParams.tau);
        }
        // subset indices are distinct and sorted
        for (std::size_t k = 1; k < res.subset.size(); ++k)
            CHECK(res.subset[k - 1] < res.subset[k]);
        CHECK(res.c == encrypt_with(kp, m, res.r, res.subset).c);
        CHECK(decrypt(kp.p, res.c) == m);
    }
}

TEST_CASE("round-trip and fresh-noise bound at small sizes") {
    for (long lam : {2L, 3L}) {
        const Params params = Params::from_lambda(lam);
        Rng rng(lam * 1000 + 1);
        const DghvKeyPair kp = keygen(params, rng, true);
        const Int bound = (Int(1) << (params.rho + 2)) * (params.tau + 2);
        for (int i = 0; i < 300; ++i) {
            const int m = rng.coin() ? 1 : 0;
            const Int c = encrypt(kp, m, rng);
            CHECK(decrypt(kp.p, c) == m);
            CHECK(abs(noise_of(kp.p, c)) <= bound);
            CHECK(2 * c <= kp.x[0]);
            CHECK(2 * c > -kp.x[0]);
        }
    }
}

TEST_CASE("evaluation: addition fixtures and noise identity") {
    const DghvKeyPair kp = toy_instance(55);
    const Int c0 = encrypt_with(kp, 0, 0, {}).c;
    const Int c1 = encrypt_with(kp, 1, 0, {}).c;
    CHECK(decrypt(kp.p, eval_add(c0, c1, kp.x[0])) == 1);
    CHECK(decrypt(kp.p, eval_mul(c1, 0, kp.x[0])) == 0);
    CHECK(eval_mul(c1, 0, kp.x[0]) == 0);

    Rng rng(14);
    for (int i = 0; i < 50; ++i) {
        const int m1 = rng.coin() ? 1 : 0;
        const int m2 = rng.coin() ? 1 : 0;
        const Int a = encrypt(kp, m1, rng);
        const Int b = encrypt(kp, m2, rng);
        const Int ca = eval_add(a, b, kp.x[0]);
        const Int fold = (a + b - ca) / kp.x[0];
        CHECK(abs(fold) <= 1);
        // folding out the modulus element drags its noise along
        const Int expected = noise_of(kp.p, a) + noise_of(kp.p, b) - 2 * fold * kp.r[0];
        CHECK(noise_of(kp.p, ca) == centered_mod(expected, kp.p));
        CHECK(decrypt(kp.p, ca) == (m1 + m2) % 2);
    }
}

TEST_CASE("evaluation: multiplication noise identity on any instance") {
    const DghvKeyPair kp = toy_instance(56);
    Rng rng(15);
    for (int i = 0; i < 30; ++i) {
        const Int a = encrypt(kp, rng.coin() ? 1 : 0, rng);
        const Int b = encrypt(kp, rng.coin() ? 1 : 0, rng);
        const Int cm = eval_mul(a, b, kp.x[0]);
        const Int fold = (a * b - cm) / kp.x[0];
        CHECK(a * b - fold * kp.x[0] == cm);
        const Int expected = noise_of(kp.p, a) * noise_of(kp.p, b) - 2 * fold * kp.r[0];
        CHECK(noise_of(kp.p, cm) == centered_mod(expected, kp.p));
    }
}

TEST_CASE("evaluation: multiplication round-trips once the fold is noiseless") {
    // The product reduction folds out ~gamma bits worth of modulus-element
    // copies, so its noise survives only when that element is an exact
    // multiple of the secret. Scan for the first such instance and then the
    // margin argument applies to every fresh pair.
    const Params params = Params::from_lambda(3);
    DghvKeyPair kp;
    std::uint64_t seed = 1;
    for (;; ++seed) {
        Rng rng(seed);
        kp = keygen(params, rng, true);
        if (kp.r[0] == 0) break;
        REQUIRE(seed < 2000); // expected after ~17 draws
    }
    kp.seed = seed;
    Rng rng(77);
    const Int half_p = kp.p / 2;
    for (int i = 0; i < 1000; ++i) {
        const int m1 = rng.coin() ? 1 : 0;
        const int m2 = rng.coin() ? 1 : 0;
        const Int a = encrypt(kp, m1, rng);
        const Int b = encrypt(kp, m2, rng);
        // margin verified through the oracle before asserting the round-trip
        REQUIRE(abs(noise_of(kp.p, a) * noise_of(kp.p, b)) < half_p);
        CHECK(decrypt(kp.p, eval_mul(a, b, kp.x[0])) == m1 * m2);
    }
}

TEST_CASE("agcd search: recovers the secret on tiny instances") {
    const Params params = Params::from_lambda(2);
    for (std::uint64_t seed : {11ULL, 12ULL, 13ULL}) {
        Rng rng(seed);
        const DghvKeyPair kp = keygen(params, rng, true);
        CHECK(brute_force_agcd(kp.x, params) == kp.p);
    }
}

TEST_CASE("agcd search: negative control and guard") {
    const Params params = Params::from_lambda(2);
    Rng rng(31);
    DghvKeyPair kp = keygen(params, rng, true);
    // tamper: one public element becomes a random value with no small noise
    kp.x[3] = (Int(1) << 31) + 12345679;
    CHECK_THROWS_AS(brute_force_agcd(kp.x, params), NotFoundError);

    Params big = params;
    big.rho = 20;
    big.eta = 32;
    big.gamma = 64;
    CHECK_THROWS_AS(brute_force_agcd(kp.x, big), GuardError);
}
