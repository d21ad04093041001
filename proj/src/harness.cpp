#include "aglat/harness.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <iomanip>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "aglat/matshe.hpp"
#include "aglat/version.hpp"

namespace aglat {

namespace {

long ipow_checked(long base, int exp) {
    long r = 1;
    for (int i = 0; i < exp; ++i) {
        if (base != 0 && r > std::numeric_limits<long>::max() / base)
            throw std::overflow_error("gamma sweep: lambda^k exceeds 64 bits");
        r *= base;
    }
    return r;
}

TrialRecord run_one_trial(const DghvKeyPair& kp, long instance_index,
                          long ciphertext_index, const ExperimentSpec& spec) {
    TrialRecord rec;
    rec.instance_index = instance_index;
    rec.ciphertext_index = ciphertext_index;
    rec.instance_seed = kp.seed;
    rec.trial_seed = Rng::derive(spec.seed, static_cast<std::uint64_t>(instance_index),
                                 static_cast<std::uint64_t>(ciphertext_index) + 1);
    Rng trng(rec.trial_seed);
    rec.true_bit = trng.coin() ? 1 : 0;
    const Int c = encrypt(kp, rec.true_bit, trng);

    // Both threshold modes see the same subset stream so the comparison is
    // paired per ciphertext.
    const std::uint64_t attack_seed = Rng::derive(rec.trial_seed, 17);
    for (int mode_index = 0; mode_index < 2; ++mode_index) {
        AttackConfig cfg = spec.attack;
        cfg.mode = mode_index == 0 ? ThresholdMode::KnownP : ThresholdMode::EtaFloor;
        Rng arng(attack_seed);
        const AttackVerdict v =
            attack(kp.x, kp.params, c, cfg, arng,
                   mode_index == 0 ? std::optional<Int>(kp.p) : std::nullopt);
        TrialOutcome& out = mode_index == 0 ? rec.known_p : rec.eta_floor;
        out.decision = v.decision;
        out.method = v.method;
        out.retries = v.retries;
        out.rows_scanned = v.rows_scanned;
        out.correct = v.decision != Decision::Inconclusive &&
                      static_cast<int>(v.decision) == rec.true_bit;
        out.wall_ms = v.total_ms;
    }
    return rec;
}

void accumulate(ModeAggregate& a, const TrialOutcome& o) {
    ++a.trials;
    if (o.decision == Decision::Inconclusive) {
        ++a.inconclusives;
    } else if (o.correct) {
        ++a.successes;
    } else {
        ++a.failures;
        ++a.soundness_failures; // a conclusive wrong answer is a soundness breach
    }
}

void finalize(ModeAggregate& a) {
    if (a.trials == 0) return;
    const double n = static_cast<double>(a.trials);
    a.success_rate = static_cast<double>(a.successes) / n;
    a.conclusive_rate = static_cast<double>(a.successes + a.failures) / n;
    a.inconclusive_rate = static_cast<double>(a.inconclusives) / n;
}

Json outcome_to_json(const TrialOutcome& o, bool include_timings) {
    Json j;
    j["decision"] = decision_name(o.decision);
    j["method"] = method_name(o.method);
    j["retries"] = o.retries;
    j["rows_scanned"] = o.rows_scanned;
    j["correct"] = o.correct;
    if (include_timings) j["wall_ms"] = o.wall_ms;
    return j;
}

Json aggregate_to_json(const ModeAggregate& a) {
    return Json{{"trials", a.trials},
                {"successes", a.successes},
                {"failures", a.failures},
                {"inconclusives", a.inconclusives},
                {"soundness_failures", a.soundness_failures},
                {"success_rate", a.success_rate},
                {"conclusive_rate", a.conclusive_rate},
                {"inconclusive_rate", a.inconclusive_rate}};
}

std::string format_rate(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(6) << v;
    return os.str();
}

} // namespace

void ExperimentSpec::validate() const {
    if (instances < 1) throw std::domain_error("experiment: instances must be >= 1");
    if (ciphertexts_per_instance < 1)
        throw std::domain_error("experiment: ciphertexts per instance must be >= 1");
    if (jobs < 0) throw std::domain_error("experiment: jobs must be >= 0");
    if (attack.max_subset_retries < 0)
        throw std::domain_error("experiment: retry budget must be >= 0");
    if (attack.scan_depth < 1) throw std::domain_error("experiment: scan depth must be >= 1");
    params.validate();
}

CampaignReport run_attack_campaign(const ExperimentSpec& spec) {
    spec.validate();
    CampaignReport rep;
    rep.params = spec.params;
    rep.seed = spec.seed;
    rep.instances = spec.instances;
    rep.ciphertexts_per_instance = spec.ciphertexts_per_instance;
    rep.attack = spec.attack;

    // Instances are generated up front (cheap next to the reductions) so the
    // parallel phase touches them read-only.
    std::vector<DghvKeyPair> kps;
    kps.reserve(static_cast<std::size_t>(spec.instances));
    for (long i = 0; i < spec.instances; ++i) {
        const std::uint64_t iseed = Rng::derive(spec.seed, static_cast<std::uint64_t>(i), 0);
        Rng krng(iseed);
        DghvKeyPair kp = keygen(spec.params, krng, true);
        kp.seed = iseed;
        kps.push_back(std::move(kp));
    }

    const long total = spec.instances * spec.ciphertexts_per_instance;
    rep.trials.resize(static_cast<std::size_t>(total));

    long jobs = spec.jobs > 0 ? spec.jobs
                              : static_cast<long>(std::thread::hardware_concurrency());
    if (jobs < 1) jobs = 1;
    jobs = std::min(jobs, total);

    std::atomic<long> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;

    auto worker = [&]() {
        for (;;) {
            const long idx = next.fetch_add(1);
            if (idx >= total) return;
            const long i = idx / spec.ciphertexts_per_instance;
            const long j = idx % spec.ciphertexts_per_instance;
            try {
                rep.trials[static_cast<std::size_t>(idx)] =
                    run_one_trial(kps[static_cast<std::size_t>(i)], i, j, spec);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                next.store(total); // drain remaining work
                return;
            }
        }
    };

    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(jobs));
        for (long w = 0; w < jobs; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    for (const auto& t : rep.trials) {
        accumulate(rep.agg_known_p, t.known_p);
        accumulate(rep.agg_eta_floor, t.eta_floor);
    }
    finalize(rep.agg_known_p);
    finalize(rep.agg_eta_floor);
    return rep;
}

SweepReport run_gamma_sweep(const ExperimentSpec& spec) {
    spec.validate();
    std::vector<long> gammas = spec.gammas;
    if (gammas.empty()) {
        gammas = {ipow_checked(spec.params.lambda, 5), ipow_checked(spec.params.lambda, 6)};
    }
    SweepReport rep;
    for (long g : gammas) {
        ExperimentSpec sub = spec;
        sub.gammas.clear();
        sub.params.gamma = g;
        sub.params.tau = g + spec.params.lambda; // public-element count tracks gamma
        SweepEntry entry;
        entry.gamma = g;
        entry.estimate = feasibility_estimate(sub.params);
        entry.campaign = run_attack_campaign(sub);
        rep.entries.push_back(std::move(entry));
    }
    return rep;
}

std::string run_toy_repro(std::uint64_t seed) {
    const Params params{3, 3, 27, 243, 246, 27};
    std::ostringstream os;
    os << "single-instance lattice walkthrough (seed " << seed << ")\n";
    os << "params: " << params.describe() << "\n";

    Rng krng(Rng::derive(seed, 0));
    DghvKeyPair kp = keygen(params, krng, true);
    kp.seed = Rng::derive(seed, 0);
    os << "secret p  = " << kp.p.get_str() << "\n";
    os << "public x0 = " << kp.x[0].get_str() << "\n";

    Rng trng(Rng::derive(seed, 1));
    const int m = trng.coin() ? 1 : 0;
    const EncryptResult enc = encrypt_detail(kp, m, trng);
    os << "true bit m = " << m << "\n";
    os << "ciphertext c = " << enc.c.get_str() << "\n";

    std::set<long> pick;
    Rng srng(Rng::derive(seed, 2));
    while (static_cast<long>(pick.size()) < params.subset_size)
        pick.insert(srng.range_long(1, params.tau));
    const std::vector<long> subset(pick.begin(), pick.end());
    os << "subset (" << subset.size() << " indices):";
    for (long idx : subset) os << ' ' << idx;
    os << "\n";

    const LatticeBasis lat = build_attack_lattice(kp.x, enc.c, subset,
                                                  LatticeVariant::YTracking);
    const ReductionOutcome out = lll_reduce(lat);
    const Int thr_p = acceptance_threshold(params, ThresholdMode::KnownP, kp.p);
    const Int thr_eta = acceptance_threshold(params, ThresholdMode::EtaFloor);
    os << "acceptance threshold (secret modulus): " << thr_p.get_str() << "\n";
    os << "acceptance threshold (public floor):   " << thr_eta.get_str() << "\n";

    if (mat_mul_int(out.transform, lat.rows) != out.basis.rows)
        throw std::logic_error("walkthrough: transform * input != reduced basis");
    os << "transform check: U * L == B holds\n";
    os << "swaps=" << out.swaps << " size_reductions=" << out.size_reductions << "\n";

    os << "reduced basis B (" << out.basis.n() << " x " << out.basis.m() << "):\n";
    os << basis_to_text(out.basis, false);
    os << "transform U (" << out.transform.size() << " x "
       << out.transform.front().size() << "):\n";
    os << basis_to_text(LatticeBasis{out.transform}, false);

    os << "row analysis at the public-floor threshold:\n";
    std::vector<int> b0_parities;
    std::vector<int> y_parities;
    for (std::size_t i = 0; i < out.basis.n(); ++i) {
        const Int bn = norm_inf(out.basis.rows[i]);
        const Int un = norm_inf(out.transform[i]);
        const Int& b0 = out.basis.rows[i][0];
        const Int& y = out.basis.rows[i][1];
        const bool qualifies = bn < thr_eta && un < thr_eta;
        os << "  row " << std::setw(2) << i << ": |B|inf=" << bn.get_str()
           << " |U|inf=" << un.get_str() << " b0=" << b0.get_str()
           << " y=" << y.get_str();
        if (qualifies) {
            os << "  [qualifies]";
            b0_parities.push_back(parity(b0));
            y_parities.push_back(parity(y));
        } else {
            os << "  [excluded: " << (bn >= thr_eta ? "basis row too long" : "transform row too long")
               << "]";
        }
        os << "\n";
    }
    os << "b0 parities over qualifying rows:";
    for (int b : b0_parities) os << ' ' << b;
    os << "\n";
    os << "y parities over qualifying rows: ";
    for (int b : y_parities) os << ' ' << b;
    os << "\n";

    const auto cands = scan_candidates(out, LatticeVariant::YTracking, thr_eta,
                                       static_cast<long>(out.basis.n()));
    Decision first = Decision::Inconclusive;
    if (!cands.empty()) {
        first = decide_first_vector(cands.front()) == 1 ? Decision::One : Decision::Zero;
        os << "accepted row " << cands.front().row_index << ": b0="
           << cands.front().b0.get_str() << " y=" << cands.front().y.get_str() << "\n";
        os << "first-vector decision: " << decision_name(first) << "\n";
    } else {
        os << "first-vector decision: " << decision_name(first) << "\n";
    }
    const Decision column = decide_column_parity(out, lat, thr_eta);
    os << "column-parity decision: " << decision_name(column) << "\n";
    os << "ground truth: " << m << "\n";

    if (first != Decision::Inconclusive && static_cast<int>(first) != m)
        throw std::logic_error("walkthrough: first-vector decision contradicts the true bit");
    if (column != Decision::Inconclusive && static_cast<int>(column) != m)
        throw std::logic_error("walkthrough: column-parity decision contradicts the true bit");

    const Decision final_decision = first != Decision::Inconclusive ? first : column;
    if (final_decision == Decision::Inconclusive)
        os << "result: inconclusive on this subset\n";
    else
        os << "result: recovered bit " << decision_name(final_decision)
           << " matches the plaintext\n";
    return os.str();
}

FeasibilityReport run_estimate(const Params& params) { return feasibility_estimate(params); }

SelftestReport run_scheme_selftest(long lambda, const std::string& scheme,
                                   long trials, std::uint64_t seed) {
    if (trials < 1) throw std::domain_error("selftest: trials must be >= 1");
    SelftestReport rep;
    rep.scheme = scheme;
    rep.lambda = lambda;
    auto note = [&rep](bool ok, const std::string& line) {
        ++rep.checks;
        if (!ok) ++rep.failures;
        rep.lines.push_back(std::string(ok ? "[ok]   " : "[FAIL] ") + line);
    };
    Rng rng(seed);

    if (scheme == "dghv") {
        const Params params = Params::from_lambda(lambda);
        DghvKeyPair kp = keygen(params, rng, true);
        kp.seed = seed;
        long bad = 0;
        for (long i = 0; i < trials; ++i) {
            const int m = rng.coin() ? 1 : 0;
            if (decrypt(kp.p, encrypt(kp, m, rng)) != m) ++bad;
        }
        note(bad == 0, "fresh round-trips " + std::to_string(trials - bad) + "/" +
                           std::to_string(trials));

        const Int fresh_bound = (Int(1) << (params.rho + 2)) * (params.tau + 2);
        for (int m1 : {0, 1}) {
            for (int m2 : {0, 1}) {
                const Int c1 = encrypt(kp, m1, rng);
                const Int c2 = encrypt(kp, m2, rng);
                const Int ca = eval_add(c1, c2, kp.x[0]);
                note(decrypt(kp.p, ca) == ((m1 + m2) % 2),
                     "add " + std::to_string(m1) + "+" + std::to_string(m2));
                // Multiplication folds out multiples of x0; the fold drags in
                // k * (x0 noise), so parity survives only when the combined
                // noise stays inside the modulus window. Check that margin
                // with the retained ground truth before asserting.
                const Int cm = eval_mul(c1, c2, kp.x[0]);
                const Int fold = (c1 * c2 - cm) / kp.x[0];
                const Int expected =
                    noise_of(kp.p, c1) * noise_of(kp.p, c2) - 2 * fold * kp.r[0];
                const std::string label =
                    "mul " + std::to_string(m1) + "*" + std::to_string(m2);
                if (2 * abs(expected) < kp.p) {
                    note(decrypt(kp.p, cm) == m1 * m2, label);
                    note(noise_of(kp.p, cm) == expected, label + " noise identity");
                } else {
                    rep.lines.push_back("[skip] " + label +
                                        " noise margin exceeded by the modulus fold");
                }
            }
        }

        bool noise_ok = true;
        const long noise_trials = std::min<long>(trials, 50);
        for (long i = 0; i < noise_trials; ++i) {
            const Int c = encrypt(kp, rng.coin() ? 1 : 0, rng);
            if (abs(noise_of(kp.p, c)) > fresh_bound) noise_ok = false;
        }
        note(noise_ok, "fresh noise stays within the worst-case bound");
    } else if (scheme == "matshe") {
        const Int w = mat_fresh_noise_bound(lambda);
        for (MatVariant variant : {MatVariant::RandomT, MatVariant::Gaussian}) {
            const std::string vn = variant == MatVariant::RandomT ? "random-t" : "gaussian";
            MatSheKeyPair kp = mat_keygen(lambda, variant, rng, true);
            const Int a = abs(kp.T.a);
            const bool fresh_ok = 2 * a * w < kp.modulus;
            long bad = 0;
            for (long i = 0; i < trials; ++i) {
                const int m = rng.coin() ? 1 : 0;
                if (mat_decrypt(kp, mat_encrypt(kp, m, rng)) != m) ++bad;
            }
            if (fresh_ok) {
                note(bad == 0, vn + " fresh round-trips " + std::to_string(trials - bad) +
                                   "/" + std::to_string(trials));
            } else {
                rep.lines.push_back("[skip] " + vn +
                                    " fresh margin not guaranteed at this lambda; observed " +
                                    std::to_string(trials - bad) + "/" + std::to_string(trials));
            }
            const int m1 = rng.coin() ? 1 : 0;
            const int m2 = rng.coin() ? 1 : 0;
            const Mat2 c1 = mat_encrypt(kp, m1, rng);
            const Mat2 c2 = mat_encrypt(kp, m2, rng);
            if (4 * a * w < kp.modulus) {
                const Mat2 cs = mat_add(c1, c2, kp.modulus);
                note(mat_decrypt(kp, cs) == ((m1 + m2) % 2),
                     vn + " add " + std::to_string(m1) + "+" + std::to_string(m2));
            }
            if (2 * a * w * w < kp.modulus) {
                const Mat2 cm = mat_mul(c1, c2, kp.modulus);
                note(mat_decrypt(kp, cm) == m1 * m2,
                     vn + " mul " + std::to_string(m1) + "*" + std::to_string(m2));
            }
        }
    } else {
        throw std::domain_error("selftest: unknown scheme '" + scheme +
                                "' (expected dghv or matshe)");
    }
    return rep;
}

Json campaign_to_json(const CampaignReport& r, bool include_timings) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "attack_campaign";
    j["params"] = params_to_json(r.params);
    j["seed"] = r.seed;
    j["instances"] = r.instances;
    j["ciphertexts_per_instance"] = r.ciphertexts_per_instance;
    j["attack"] = Json{
        {"subset_size", r.attack.subset_size},
        {"max_subset_retries", r.attack.max_subset_retries},
        {"scan_depth", r.attack.scan_depth},
        {"variant", r.attack.variant == LatticeVariant::Square ? "square" : "y-tracking"},
        {"delta", r.attack.delta.get_str()}};
    Json trials = Json::array();
    for (const auto& t : r.trials) {
        Json tj;
        tj["instance"] = t.instance_index;
        tj["ciphertext"] = t.ciphertext_index;
        tj["instance_seed"] = t.instance_seed;
        tj["trial_seed"] = t.trial_seed;
        tj["true_bit"] = t.true_bit;
        tj["known_p"] = outcome_to_json(t.known_p, include_timings);
        tj["eta_floor"] = outcome_to_json(t.eta_floor, include_timings);
        trials.push_back(std::move(tj));
    }
    j["trials"] = std::move(trials);
    j["aggregate"] = Json{{"known_p", aggregate_to_json(r.agg_known_p)},
                          {"eta_floor", aggregate_to_json(r.agg_eta_floor)}};
    return j;
}

Json sweep_to_json(const SweepReport& r, bool include_timings) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "gamma_sweep";
    Json entries = Json::array();
    for (const auto& e : r.entries) {
        Json ej;
        ej["gamma"] = e.gamma;
        ej["estimate"] = feasibility_to_json(e.estimate);
        ej["campaign"] = campaign_to_json(e.campaign, include_timings);
        entries.push_back(std::move(ej));
    }
    j["entries"] = std::move(entries);
    return j;
}

std::string campaign_to_csv(const CampaignReport& r) {
    std::ostringstream os;
    os << "instance,ciphertext,true_bit,"
          "knownp_decision,knownp_method,knownp_retries,knownp_rows,knownp_correct,"
          "eta_decision,eta_method,eta_retries,eta_rows,eta_correct\n";
    auto outcome_cols = [&os](const TrialOutcome& o) {
        os << decision_name(o.decision) << ',' << method_name(o.method) << ','
           << o.retries << ',' << o.rows_scanned << ',' << (o.correct ? 1 : 0);
    };
    for (const auto& t : r.trials) {
        os << t.instance_index << ',' << t.ciphertext_index << ',' << t.true_bit << ',';
        outcome_cols(t.known_p);
        os << ',';
        outcome_cols(t.eta_floor);
        os << '\n';
    }
    return os.str();
}

std::string sweep_to_csv(const SweepReport& r) {
    std::ostringstream os;
    os << "gamma,trials,knownp_success_rate,knownp_inconclusive_rate,"
          "eta_success_rate,eta_inconclusive_rate,"
          "lll_margin_log2,lll_feasible,ghkn_margin_log2,ghkn_feasible\n";
    for (const auto& e : r.entries) {
        os << e.gamma << ',' << e.campaign.agg_known_p.trials << ','
           << format_rate(e.campaign.agg_known_p.success_rate) << ','
           << format_rate(e.campaign.agg_known_p.inconclusive_rate) << ','
           << format_rate(e.campaign.agg_eta_floor.success_rate) << ','
           << format_rate(e.campaign.agg_eta_floor.inconclusive_rate) << ','
           << format_rate(e.estimate.lll_average.margin_log2) << ','
           << (e.estimate.lll_average.feasible ? 1 : 0) << ','
           << format_rate(e.estimate.block_ghkn.margin_log2) << ','
           << (e.estimate.block_ghkn.feasible ? 1 : 0) << '\n';
    }
    return os.str();
}

} // namespace aglat
