#include "aglat/dghv.hpp"

#include <algorithm>
#include <stdexcept>

#include "aglat/errors.hpp"

namespace aglat {

Int centered_mod(const Int& c, const Int& modulus) {
    if (modulus <= 0) throw std::domain_error("centered_mod: modulus must be positive");
    Int z;
    mpz_mod(z.get_mpz_t(), c.get_mpz_t(), modulus.get_mpz_t()); // z in [0, modulus)
    if (2 * z > modulus) z -= modulus;
    return z;
}

int parity(const Int& z) { return mpz_odd_p(z.get_mpz_t()) ? 1 : 0; }

namespace {

Int pow2(long e) {
    Int v = 1;
    mpz_mul_2exp(v.get_mpz_t(), v.get_mpz_t(), e);
    return v;
}

} // namespace

DghvKeyPair keygen(const Params& params, Rng& rng, bool instrumented) {
    params.validate();
    DghvKeyPair kp;
    kp.params = params;
    kp.instrumented = instrumented;

    // odd p in [2^(eta-1), 2^eta)
    Int lo = pow2(params.eta - 1);
    Int p = lo + rng.below(lo);
    if (parity(p) == 0) p = (p + 1 < 2 * lo) ? Int(p + 1) : Int(p - 1);
    kp.p = p;

    // q_i in [0, 2^gamma / p), i.e. [0, Q] with Q = floor((2^gamma - 1)/p)
    Int Q = (pow2(params.gamma) - 1) / p;
    Int noise_hi = pow2(params.rho);

    std::vector<Int> q(params.tau + 1), r(params.tau + 1);
    Int max_q = 0;
    for (long i = 1; i <= params.tau; ++i) {
        q[i] = rng.below(Q + 1);
        if (q[i] > max_q) max_q = q[i];
    }
    // q_0: odd and maximal. Preferred: uniform odd in (max_q, Q]; if none
    // exists, take the largest odd <= Q and resample the q_i above it.
    Int first_odd = max_q + 1;
    if (parity(first_odd) == 0) first_odd += 1;
    if (first_odd <= Q) {
        Int count = (Q - first_odd) / 2 + 1;
        q[0] = first_odd + 2 * rng.below(count);
    } else {
        q[0] = (parity(Q) == 1) ? Q : Int(Q - 1);
        for (long i = 1; i <= params.tau; ++i)
            while (q[i] > q[0]) q[i] = rng.below(q[0] + 1);
    }

    for (long i = 0; i <= params.tau; ++i) r[i] = rng.range(-noise_hi, noise_hi);

    kp.x.resize(params.tau + 1);
    kp.x[0] = q[0] * p + 2 * r[0];
    for (long i = 1; i <= params.tau; ++i)
        kp.x[i] = centered_mod(q[i] * p + 2 * r[i], kp.x[0]);

    if (instrumented) {
        kp.q = std::move(q);
        kp.r = std::move(r);
    }
    return kp;
}

EncryptResult encrypt_with(const DghvKeyPair& kp, int m, const Int& r,
                           const std::vector<long>& subset) {
    if (m != 0 && m != 1) throw std::domain_error("encrypt: message must be a bit");
    Int sum = m + 2 * r;
    for (long idx : subset) {
        if (idx < 1 || idx > kp.params.tau)
            throw std::domain_error("encrypt: subset index out of range");
        sum += kp.x[idx];
    }
    EncryptResult res;
    res.c = centered_mod(sum, kp.x[0]);
    res.r = r;
    res.subset = subset;
    res.fold = (sum - res.c) / kp.x[0];
    return res;
}

EncryptResult encrypt_detail(const DghvKeyPair& kp, int m, Rng& rng) {
    Int noise_hi = pow2(kp.params.rho);
    Int r = rng.range(-noise_hi, noise_hi);
    std::vector<long> subset;
    for (long i = 1; i <= kp.params.tau; ++i)
        if (rng.coin()) subset.push_back(i);
    return encrypt_with(kp, m, r, subset);
}

Int encrypt(const DghvKeyPair& kp, int m, Rng& rng) {
    return encrypt_detail(kp, m, rng).c;
}

int decrypt(const Int& p, const Int& c) { return parity(centered_mod(c, p)); }

Int eval_add(const Int& c1, const Int& c2, const Int& x0) {
    return centered_mod(c1 + c2, x0);
}

Int eval_mul(const Int& c1, const Int& c2, const Int& x0) {
    return centered_mod(c1 * c2, x0);
}

Int noise_of(const Int& p, const Int& c) { return centered_mod(c, p); }

namespace {

// Every x_i must leave an even centered residue mod g, small enough to be
// scheme noise: 2^(rho+1) for x_0, 2^(rho+2) for the rest (the centered
// reduction by x_0 can fold in one extra copy of x_0's noise).
bool agcd_verify(const std::vector<Int>& xs, const Int& g, long rho) {
    Int b0 = 2 * pow2(rho);
    Int bi = 2 * b0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        Int res = centered_mod(xs[i], g);
        if (parity(res) == 1) return false;
        if (abs(res) > (i == 0 ? b0 : bi)) return false;
    }
    return true;
}

} // namespace

Int brute_force_agcd(const std::vector<Int>& pk_x, const Params& params) {
    if (params.rho > 12 || params.eta > 32)
        throw GuardError("brute_force_agcd: refused (rho <= 12 and eta <= 32 required)");
    if (pk_x.size() < 2)
        throw std::domain_error("brute_force_agcd: need x_0 and at least one partner");

    Int lo = pow2(params.eta - 1), hi = pow2(params.eta);
    Int r0_hi = pow2(params.rho);
    Int rj_hi = 2 * r0_hi;

    for (Int r0 = -r0_hi; r0 <= r0_hi; ++r0) {
        Int a = pk_x[0] - 2 * r0; // = q_0 * p when r0 is guessed right
        if (a == 0) continue;
        for (std::size_t j = 1; j < pk_x.size(); ++j) {
            for (Int rj = -rj_hi; rj <= rj_hi; ++rj) {
                Int g = gcd(a, pk_x[j] - 2 * rj);
                g = abs(g);
                if (parity(g) == 0) continue;
                if (g < lo || g >= hi) continue;
                if (agcd_verify(pk_x, g, params.rho)) return g;
            }
        }
    }
    throw NotFoundError("brute_force_agcd: search exhausted without a valid divisor");
}

} // namespace aglat
