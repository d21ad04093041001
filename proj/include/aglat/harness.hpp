#pragma once

#include <string>
#include <vector>

#include "aglat/attack.hpp"
#include "aglat/io.hpp"
#include "aglat/params.hpp"

namespace aglat {

enum class ExperimentMode { AttackCampaign, GammaSweep, ToyRepro, Estimate, SchemeSelftest };

struct ExperimentSpec {
    ExperimentMode mode = ExperimentMode::AttackCampaign;
    Params params;
    long instances = 20;
    long ciphertexts_per_instance = 5;
    AttackConfig attack;
    std::uint64_t seed = 1;
    std::vector<long> gammas; // sweep only; empty -> {lambda^5, lambda^6}
    std::string out_path;
    long jobs = 0; // worker threads, 0 -> hardware concurrency

    void validate() const; // counts >= 1 etc.
};

// One (instance, ciphertext) trial, attacked in both threshold modes.
struct TrialOutcome {
    Decision decision = Decision::Inconclusive;
    AttackVerdict::Method method = AttackVerdict::Method::None;
    long retries = 0;
    long rows_scanned = 0;
    bool correct = false; // conclusive and equal to the true bit
    double wall_ms = 0;
};

struct TrialRecord {
    long instance_index = 0;
    long ciphertext_index = 0;
    std::uint64_t instance_seed = 0;
    std::uint64_t trial_seed = 0;
    int true_bit = 0;
    TrialOutcome known_p;
    TrialOutcome eta_floor;
};

struct ModeAggregate {
    long trials = 0;
    long successes = 0;      // conclusive and correct
    long failures = 0;       // conclusive and wrong
    long inconclusives = 0;
    long soundness_failures = 0; // known-p conclusive verdicts that were wrong
    double success_rate = 0;
    double conclusive_rate = 0;
    double inconclusive_rate = 0;
};

struct CampaignReport {
    Params params;
    std::uint64_t seed = 0;
    long instances = 0;
    long ciphertexts_per_instance = 0;
    AttackConfig attack;
    std::vector<TrialRecord> trials;
    ModeAggregate agg_known_p;
    ModeAggregate agg_eta_floor;
};

struct SweepEntry {
    long gamma = 0;
    FeasibilityReport estimate;
    CampaignReport campaign;
};

struct SweepReport {
    std::vector<SweepEntry> entries;
};

struct SelftestReport {
    std::string scheme;
    long lambda = 0;
    long checks = 0;
    long failures = 0;
    std::vector<std::string> lines;
};

CampaignReport run_attack_campaign(const ExperimentSpec& spec);
SweepReport run_gamma_sweep(const ExperimentSpec& spec);

// Appendix-style single-instance walkthrough; deterministic text, no wall
// clock inside. Default seed fixed; CLI may override.
inline constexpr std::uint64_t kToyDefaultSeed = 7;
std::string run_toy_repro(std::uint64_t seed = kToyDefaultSeed);

FeasibilityReport run_estimate(const Params& params);
SelftestReport run_scheme_selftest(long lambda, const std::string& scheme,
                                   long trials = 200, std::uint64_t seed = 1);

Json campaign_to_json(const CampaignReport& r, bool include_timings = true);
Json sweep_to_json(const SweepReport& r, bool include_timings = true);
std::string campaign_to_csv(const CampaignReport& r);
std::string sweep_to_csv(const SweepReport& r);

} // namespace aglat
