#include "aglat/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace aglat {

namespace {

double beta_log2(long k) {
    if (k <= 100) return 1.1 * std::log2(static_cast<double>(k));
    return (2.0 * std::log(2.0) + 1.0 / static_cast<double>(k)) *
           std::log2(1.0 + static_cast<double>(k) / 2.0);
}

} // namespace

double bound_lll_worstcase_log2(long n) {
    if (n < 1) throw std::domain_error("bound_lll_worstcase: n must be >= 1");
    return static_cast<double>(n - 1) / 2.0;
}

double bound_lll_average_log2(long n) {
    if (n < 1) throw std::domain_error("bound_lll_average: n must be >= 1");
    return static_cast<double>(n) * std::log2(1.02);
}

double bound_lll_worstcase(long n) { return std::exp2(bound_lll_worstcase_log2(n)); }
double bound_lll_average(long n) { return std::exp2(bound_lll_average_log2(n)); }

BlockBound bound_block_reduction_log2(long k, long n, BlockVariant variant) {
    if (k < 2) throw std::domain_error("bound_block_reduction: k must be >= 2");
    if (k > n) throw std::domain_error("bound_block_reduction: k must not exceed n");
    BlockBound b;
    b.k = k;
    b.n = n;
    b.variant = variant;
    b.beta_log2 = beta_log2(k);
    b.sqrt_gamma_log2 = 0.5 * std::log2(static_cast<double>(k)); // gamma_k <= k proxy
    double kd = static_cast<double>(k), nd = static_cast<double>(n);
    if (variant == BlockVariant::Schnorr) {
        b.beta_term_log2 = ((nd / kd) - 1.0) / 2.0 * b.beta_log2;
        b.ratio_term_log2 = 0.0;
    } else {
        b.beta_term_log2 = (nd / (2.0 * kd) - 1.0) * b.beta_log2;
        b.ratio_term_log2 = (3.0 * kd - 1.0) / 4.0 * std::log2(4.0 / 3.0);
    }
    b.total_log2 = b.sqrt_gamma_log2 + b.ratio_term_log2 + b.beta_term_log2;
    return b;
}

double bound_block_reduction(long k, long n, BlockVariant variant) {
    return std::exp2(bound_block_reduction_log2(k, n, variant).total_log2);
}

} // namespace aglat
