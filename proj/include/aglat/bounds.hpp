#pragma once

namespace aglat {

// Reduction-quality predictors. The plain forms overflow double for large
// n, so every formula also comes in a log2 flavor; estimators work in logs.

double bound_lll_worstcase(long n);      // 2^((n-1)/2)
double bound_lll_average(long n);        // 1.02^n (empirical average ratio)
double bound_lll_worstcase_log2(long n);
double bound_lll_average_log2(long n);

enum class BlockVariant { Schnorr, Ghkn };

struct BlockBound {
    long k = 0;
    long n = 0;
    BlockVariant variant = BlockVariant::Schnorr;
    double beta_log2 = 0;       // log2 of beta_k
    double beta_term_log2 = 0;  // exponent * log2(beta_k)
    double ratio_term_log2 = 0; // (4/3)^((3k-1)/4), ghkn only
    double sqrt_gamma_log2 = 0; // sqrt of the Hermite-constant proxy
    double total_log2 = 0;
    const char* gamma_proxy = "gamma_k <= k";
};

// schnorr: sqrt(gamma_k) * beta_k^((n/k - 1)/2)
// ghkn:    sqrt(gamma_k) * (4/3)^((3k-1)/4) * beta_k^(n/(2k) - 1)
// beta_k = k^1.1 for k <= 100, else (1 + k/2)^(2 ln 2 + 1/k).
// Requires 2 <= k <= n.
BlockBound bound_block_reduction_log2(long k, long n, BlockVariant variant);
double bound_block_reduction(long k, long n, BlockVariant variant);

} // namespace aglat
