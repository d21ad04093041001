#pragma once

#include <optional>
#include <vector>

#include "aglat/bounds.hpp"
#include "aglat/dghv.hpp"
#include "aglat/lattice.hpp"
#include "aglat/params.hpp"

namespace aglat {

enum class ThresholdMode { KnownP, EtaFloor };
enum class LatticeVariant { Square, YTracking }; // t+2 square vs extra y column

struct AttackConfig {
    long subset_size = 0;        // 0 -> params.subset_size
    long max_subset_retries = 5; // total subsets attempted
    long scan_depth = 5;         // reduced rows inspected for candidates
    ThresholdMode mode = ThresholdMode::EtaFloor;
    LatticeVariant variant = LatticeVariant::YTracking;
    Rat delta = Rat(3, 4);
    std::uint64_t seed = 0;
};

// Rows: (c, [1 if tracking], 0...), then (-x_i, e_i) per subset index, then
// (-x_0, e_last). subset holds distinct indices in [1, tau].
LatticeBasis build_attack_lattice(const std::vector<Int>& pk_x, const Int& c,
                                  const std::vector<long>& subset,
                                  LatticeVariant variant);

// KnownP: floor(p / (8 t 2^rho)); EtaFloor: floor(2^(eta-1) / (8 t 2^rho)).
// Throws ParamsTooSmallError when the result drops below 2.
Int acceptance_threshold(const Params& params, ThresholdMode mode,
                         const std::optional<Int>& p = std::nullopt);

struct Candidate {
    std::size_t row_index = 0;
    Int b0; // combination value
    Int y;  // coefficient of the ciphertext row
    std::vector<Int> row;
};

// Rows (up to depth) with full infinity-norm < threshold and odd y; for the
// square variant y comes from column 0 of the transform and must itself pass
// the threshold.
std::vector<Candidate> scan_candidates(const ReductionOutcome& outcome,
                                       LatticeVariant variant,
                                       const Int& threshold, long depth);

// Parity of the combination value of an accepted candidate.
int decide_first_vector(const Candidate& cand);

enum class Decision { Zero = 0, One = 1, Inconclusive = 2 };

// Appendix method: over rows whose reduced row AND transform row both have
// infinity-norm < threshold, with at least one odd y among them:
// unanimous parity(b0) == parity(y)  -> 1
// unanimous even b0                  -> 0
// anything else                      -> inconclusive.
Decision decide_column_parity(const ReductionOutcome& outcome,
                              const LatticeBasis& original,
                              const Int& threshold);

struct AttackVerdict {
    Decision decision = Decision::Inconclusive;
    enum class Method { FirstVector, ColumnParity, None } method = Method::None;
    std::vector<Int> witness; // accepted row (first-vector method only)
    std::vector<long> subset_used;
    long rows_scanned = 0;
    Int threshold;
    long retries = 0;                 // subsets actually attempted
    std::vector<double> reduction_ms; // wall clock per reduction
    double total_ms = 0;
};

// Full loop: sample subset, build, reduce, scan, first-vector decision,
// column-parity fallback, retry on fresh subsets up to the budget.
AttackVerdict attack(const std::vector<Int>& pk_x, const Params& params,
                     const Int& c, const AttackConfig& config, Rng& rng,
                     const std::optional<Int>& known_p = std::nullopt);

// Small-combination instance over a list of noisy multiples of p.
struct DieInstance {
    std::vector<Int> xs;
    ThresholdMode mode = ThresholdMode::KnownP;
    Int p;          // meaningful in KnownP mode
    long eta = 0;   // meaningful in EtaFloor mode
    Int bound_y;    // per-coefficient bound
};

// true iff ys (same length as xs) has a nonzero entry, every |y_i| < bound_y,
// and |sum y_i x_i| < p/8 (resp. 2^(eta-1)/8).
bool check_die_solution(const DieInstance& inst, const std::vector<Int>& ys);

struct PigeonholeReport {
    double coeff_log2 = 0; // lambda^2
    double count_log2 = 0; // lambda^2 * (t+2)
    long gamma_bits = 0;
    bool holds = false;
};
PigeonholeReport pigeonhole_log_bound(const Params& params);

struct PredictorReport {
    double norm_log2 = 0;   // predicted first-vector norm, log2
    double margin_log2 = 0; // threshold_log2 - norm_log2
    bool feasible = false;
};

struct FeasibilityReport {
    Params params;
    PigeonholeReport pigeonhole;
    double lambda1_log2 = 0;     // chosen shortest-vector estimate
    bool lambda1_from_volume = false; // fallback gamma/(t+2) used
    double threshold_log2 = 0;   // eta-floor acceptance threshold
    PredictorReport lll_average;
    PredictorReport block_ghkn;
    BlockBound block_detail;
};
FeasibilityReport feasibility_estimate(const Params& params);

} // namespace aglat
