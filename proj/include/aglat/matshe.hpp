#pragma once

#include <utility>
#include <vector>

#include "aglat/rng.hpp"

namespace aglat {

// 2x2 integer matrix, row-major.
struct Mat2 {
    Int a, b, c, d; // [[a, b], [c, d]]

    static Mat2 identity();
    static Mat2 zero();
    Mat2 operator+(const Mat2& o) const;
    Mat2 operator*(const Mat2& o) const;
    Mat2 scaled(const Int& s) const;
    Mat2 centered(const Int& modulus) const; // entrywise centered residues
    Int det() const;
    Mat2 adjugate() const;
    bool operator==(const Mat2& o) const = default;
};

enum class MatVariant { RandomT, Gaussian };

struct MatSheKeyPair {
    long lambda = 0;
    MatVariant variant = MatVariant::RandomT;
    Mat2 T;      // secret
    Mat2 A;      // A*T = T*A = modulus*I exactly
    Int modulus; // det(T) for RandomT, p*q for Gaussian
    long tau_prime = 0;
    std::vector<Mat2> B; // public encryptions of zero
    bool instrumented = false;
    std::vector<Int> r; // noises of the B_i (instrumented only)
    Int gauss_p, gauss_q; // Gaussian variant factors (instrumented only)
};

// RandomT: T = [[a, -b], [c, d]] (or the sign-mirrored twin), b even, d odd,
// b,c,d ~ 2^(lambda^2); a is a small odd value sized so a * worst fresh noise
// stays inside det/2, making fresh round-trips exact. det = ad + bc is odd,
// positive, ~2^(2 lambda^2); A = adjugate(T).
// Gaussian: primes p ≡ 1 (mod 4) and q of ~lambda^2 bits, p = a^2 + b^2 with
// a odd, T = [[a, b], [-b, a]], A = q*[[a, -b], [b, a]], modulus = p*q.
// Requires lambda >= 2.
MatSheKeyPair mat_keygen(long lambda, MatVariant variant, Rng& rng,
                         bool instrumented = false);

// Cornacchia decomposition of a prime p ≡ 1 (mod 4); returns (a, b) with
// a^2 + b^2 = p, a odd, both positive. Throws std::domain_error otherwise.
std::pair<Int, Int> sum_of_two_squares(const Int& p);

Mat2 mat_encrypt(const MatSheKeyPair& kp, int m, Rng& rng);
// Forced randomness: ks must have tau_prime entries.
Mat2 mat_encrypt_with(const MatSheKeyPair& kp, int m,
                      const std::vector<Int>& ks, const Int& r);

Mat2 mat_add(const Mat2& c1, const Mat2& c2, const Int& modulus);
Mat2 mat_mul(const Mat2& c1, const Mat2& c2, const Int& modulus);

// parity of centered(C*T mod modulus)[1,1]
int mat_decrypt(const MatSheKeyPair& kp, const Mat2& C);

// Test oracle: the scalar s with centered(C*T mod modulus) = s*T exactly;
// throws NoiseBudgetError when the residue is not a multiple of T.
Int mat_noise_of(const MatSheKeyPair& kp, const Mat2& C);

// Worst-case |2 rho' + m| of a fresh encryption at this lambda.
Int mat_fresh_noise_bound(long lambda);

long mat_tau_prime(long lambda); // ceil(lambda * log2(lambda))

} // namespace aglat
