#include "aglat/matshe.hpp"

#include <cmath>
#include <stdexcept>

#include "aglat/dghv.hpp" // centered_mod, parity
#include "aglat/errors.hpp"

namespace aglat {

Mat2 Mat2::identity() { return {1, 0, 0, 1}; }
Mat2 Mat2::zero() { return {0, 0, 0, 0}; }

Mat2 Mat2::operator+(const Mat2& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }

Mat2 Mat2::operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d,
            c * o.a + d * o.c, c * o.b + d * o.d};
}

Mat2 Mat2::scaled(const Int& s) const { return {a * s, b * s, c * s, d * s}; }

Mat2 Mat2::centered(const Int& modulus) const {
    return {centered_mod(a, modulus), centered_mod(b, modulus),
            centered_mod(c, modulus), centered_mod(d, modulus)};
}

Int Mat2::det() const { return a * d - b * c; }

Mat2 Mat2::adjugate() const { return {d, Int(-b), Int(-c), a}; }

long mat_tau_prime(long lambda) {
    return static_cast<long>(std::ceil(static_cast<double>(lambda) *
                                       std::log2(static_cast<double>(lambda))));
}

Int mat_fresh_noise_bound(long lambda) {
    // |2 (sum k_i r_i + r) + m| with |k_i|,|r_i|,|r| <= 2^lambda
    Int k = 1;
    mpz_mul_2exp(k.get_mpz_t(), k.get_mpz_t(), lambda);
    return 2 * (mat_tau_prime(lambda) * k * k + k) + 1;
}

namespace {

Int pow2(long e) {
    Int v = 1;
    mpz_mul_2exp(v.get_mpz_t(), v.get_mpz_t(), e);
    return v;
}

Int rand_prime(Rng& rng, long bits, int mod4, const Int& avoid) {
    // random prime in [2^(bits-1), 2^bits), optionally ≡ mod4 (mod 4)
    Int lo = pow2(bits - 1);
    while (true) {
        Int cand = lo + rng.below(lo);
        cand |= 1;
        if (mod4 > 0 && cand % 4 != mod4) continue;
        if (cand == avoid) continue;
        if (mpz_probab_prime_p(cand.get_mpz_t(), 32) > 0) return cand;
    }
}

void make_public_b(MatSheKeyPair& kp, Rng& rng) {
    Int noise_hi = pow2(kp.lambda);
    kp.B.resize(kp.tau_prime);
    if (kp.instrumented) kp.r.resize(kp.tau_prime);
    for (long i = 0; i < kp.tau_prime; ++i) {
        Mat2 R{rng.below(kp.modulus), rng.below(kp.modulus),
               rng.below(kp.modulus), rng.below(kp.modulus)};
        Int ri = rng.range(-noise_hi, noise_hi);
        Mat2 Bi = (R * kp.A + Mat2::identity().scaled(2 * ri)).centered(kp.modulus);
        kp.B[i] = Bi;
        if (kp.instrumented) kp.r[i] = ri;
    }
}

} // namespace

std::pair<Int, Int> sum_of_two_squares(const Int& p) {
    if (p <= 1 || mpz_probab_prime_p(p.get_mpz_t(), 32) == 0)
        throw std::domain_error("sum_of_two_squares: p must be prime");
    if (p % 4 != 1) throw std::domain_error("sum_of_two_squares: p must be 1 mod 4");

    // z with z^2 ≡ -1 (mod p): z = g^((p-1)/4) for a quadratic non-residue g
    Int z;
    for (Int g = 2;; ++g) {
        if (mpz_legendre(g.get_mpz_t(), p.get_mpz_t()) == -1) {
            Int e = (p - 1) / 4;
            mpz_powm(z.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
            break;
        }
    }
    // Cornacchia: Euclid on (p, z); first remainder below sqrt(p) is a
    Int sqrt_p;
    mpz_sqrt(sqrt_p.get_mpz_t(), p.get_mpz_t());
    Int a = p, b = z;
    while (b > sqrt_p) {
        Int t = a % b;
        a = b;
        b = t;
    }
    Int b2 = p - b * b;
    Int other;
    mpz_sqrt(other.get_mpz_t(), b2.get_mpz_t());
    if (other * other != b2)
        throw std::domain_error("sum_of_two_squares: decomposition failed");
    Int first = b, second = other;
    if (parity(first) == 0) std::swap(first, second); // exactly one is odd
    return {abs(first), abs(second)};
}

MatSheKeyPair mat_keygen(long lambda, MatVariant variant, Rng& rng, bool instrumented) {
    if (lambda < 2) throw std::domain_error("mat_keygen: lambda must be >= 2");
    MatSheKeyPair kp;
    kp.lambda = lambda;
    kp.variant = variant;
    kp.instrumented = instrumented;
    kp.tau_prime = mat_tau_prime(lambda);
    long l2 = lambda * lambda;

    if (variant == MatVariant::RandomT) {
        // Entries b,c,d sit in [2^(l2-1), 2^l2); b even, d odd so det = ad+bc
        // is odd. T[0][0] = a is a small odd value with a * worst_noise <
        // 2^(2*l2-3) <= det/2, making fresh decryptions exact by construction.
        Int worst = mat_fresh_noise_bound(lambda);
        Int a_hi = (pow2(2 * l2 - 3) - 1) / worst;
        if (a_hi > pow2(l2 - 2)) a_hi = pow2(l2 - 2);
        if (a_hi < 1) a_hi = 1;
        Int a_lo = a_hi / 2;
        if (a_lo < 1) a_lo = 1;
        Int lo = pow2(l2 - 1), hi = pow2(l2);

        Int a = rng.range(a_lo, a_hi);
        if (parity(a) == 0) a = (a + 1 <= a_hi) ? Int(a + 1) : Int(a - 1);
        Int b = rng.range(lo, hi - 1);
        b &= ~Int(1); // force even
        Int c = rng.range(lo, hi - 1);
        Int d = rng.range(lo, hi - 1);
        d |= 1; // force odd

        if (rng.coin())
            kp.T = {a, Int(-b), c, d};
        else
            kp.T = {a, b, Int(-c), d};
        kp.A = kp.T.adjugate();
        kp.modulus = kp.T.det(); // = a*d + b*c > 0, odd
    } else {
        long bits = std::max<long>(4, l2);
        Int p = rand_prime(rng, bits, 1, 0);
        Int q = rand_prime(rng, bits, 0, p);
        auto [sa, sb] = sum_of_two_squares(p);
        kp.T = {sa, sb, Int(-sb), sa};
        // scale the base adjugate by q so A*T = p*q*I = modulus*I
        kp.A = Mat2{sa, Int(-sb), sb, sa}.scaled(q);
        kp.modulus = p * q;
        if (instrumented) {
            kp.gauss_p = p;
            kp.gauss_q = q;
        }
    }

    make_public_b(kp, rng);
    return kp;
}

Mat2 mat_encrypt_with(const MatSheKeyPair& kp, int m, const std::vector<Int>& ks,
                      const Int& r) {
    if (m != 0 && m != 1) throw std::domain_error("mat_encrypt: message must be a bit");
    if (ks.size() != static_cast<std::size_t>(kp.tau_prime))
        throw std::domain_error("mat_encrypt: need tau_prime subset coefficients");
    Mat2 acc = Mat2::identity().scaled(m + 2 * r);
    for (std::size_t i = 0; i < ks.size(); ++i)
        if (ks[i] != 0) acc = acc + kp.B[i].scaled(ks[i]);
    return acc.centered(kp.modulus);
}

Mat2 mat_encrypt(const MatSheKeyPair& kp, int m, Rng& rng) {
    Int hi = pow2(kp.lambda);
    std::vector<Int> ks(kp.tau_prime);
    for (auto& k : ks) k = rng.range(-hi, hi);
    Int r = rng.range(-hi, hi);
    return mat_encrypt_with(kp, m, ks, r);
}

Mat2 mat_add(const Mat2& c1, const Mat2& c2, const Int& modulus) {
    return (c1 + c2).centered(modulus);
}

Mat2 mat_mul(const Mat2& c1, const Mat2& c2, const Int& modulus) {
    return (c1 * c2).centered(modulus);
}

int mat_decrypt(const MatSheKeyPair& kp, const Mat2& C) {
    Mat2 M = (C * kp.T).centered(kp.modulus);
    return parity(M.a);
}

Int mat_noise_of(const MatSheKeyPair& kp, const Mat2& C) {
    Mat2 M = (C * kp.T).centered(kp.modulus);
    // M must equal s*T exactly for the scalar to be well-defined
    if (kp.T.a == 0 || M.a % kp.T.a != 0)
        throw NoiseBudgetError("mat_noise_of: residue is not a multiple of T");
    Int s = M.a / kp.T.a;
    if (kp.T.scaled(s) != M)
        throw NoiseBudgetError("mat_noise_of: residue is not a multiple of T");
    return s;
}

} // namespace aglat
