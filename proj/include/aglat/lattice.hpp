#pragma once

#include <cstddef>
#include <vector>

#include "aglat/rng.hpp"

namespace aglat {

using IntMat = std::vector<std::vector<Int>>;

// Integer row basis: n rows of m entries, rows linearly independent.
struct LatticeBasis {
    IntMat rows;

    std::size_t n() const { return rows.size(); }
    std::size_t m() const { return rows.empty() ? 0 : rows[0].size(); }
    void validate() const; // consistent widths, nonempty
};

// Exact rational Gram-Schmidt data (independent of the reducer's bookkeeping).
struct GsoResult {
    std::vector<Rat> norms_sq;        // ||b*_i||^2, all > 0
    std::vector<std::vector<Rat>> mu; // mu[i][j] for j < i
};

GsoResult gram_schmidt(const LatticeBasis& basis);

// LLL reduction outcome. transform * input = basis, |det transform| = 1.
struct ReductionOutcome {
    LatticeBasis basis;
    IntMat transform;
    long swaps = 0;
    long size_reductions = 0;
    Rat delta;
};

// Exact all-integer LLL over rows, tracking the unimodular transform.
// delta must lie in (1/4, 1); throws DegenerateBasisError on dependent rows.
ReductionOutcome lll_reduce(const LatticeBasis& basis, const Rat& delta = Rat(3, 4));

// Verifier on the exact rational route.
bool is_lll_reduced(const LatticeBasis& basis, const Rat& delta = Rat(3, 4));

// Exhaustive shortest-vector oracle over the coefficient box |z_i| <= bound.
// Guarded: n <= 8 and bound^n <= 1e8.
struct EnumResult {
    std::vector<Int> vec;
    std::vector<long> coeffs;
    Int norm_sq;
};
EnumResult enumerate_shortest(const LatticeBasis& basis, long coeff_bound);

// Exact Gram determinant det(B*B^T); root is set when it is a perfect square.
struct VolumeResult {
    Int gram_det;
    bool is_square = false;
    Int root; // meaningful iff is_square
};
VolumeResult volume(const LatticeBasis& basis);

// Exact integer determinant (fraction-free Bareiss elimination).
Int bareiss_det(const IntMat& a);

// Helpers shared by the attack layer and tests.
Int norm_inf(const std::vector<Int>& v);
Int norm_sq(const std::vector<Int>& v);
Int dot(const std::vector<Int>& a, const std::vector<Int>& b);
IntMat mat_mul_int(const IntMat& a, const IntMat& b);
LatticeBasis random_basis(std::size_t n, std::size_t m, long entry_bits, Rng& rng);

} // namespace aglat
