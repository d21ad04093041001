// Command-line driver for the lattice cryptanalysis workbench.
//
// Exit codes: 0 success, 1 usage or runtime error, 2 soundness failure
// (a conclusive known-modulus attack verdict contradicted the true bit).

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "aglat/harness.hpp"
#include "aglat/matshe.hpp"
#include "aglat/version.hpp"

using namespace aglat;

namespace {

struct ParamArgs {
    long lambda = 3;
    long rho = 0;
    long eta = 0;
    long gamma = 0;
    long tau = 0;
    long subset = 0;
};

void add_param_flags(CLI::App* cmd, ParamArgs& a) {
    cmd->add_option("--lambda", a.lambda, "security parameter; unset sizes derive from it")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--rho", a.rho, "noise bit-length override");
    cmd->add_option("--eta", a.eta, "secret modulus bit-length override");
    cmd->add_option("--gamma", a.gamma, "public element bit-length override");
    cmd->add_option("--tau", a.tau, "public element count override");
    cmd->add_option("--subset-size", a.subset, "attack subset size t override");
}

Params resolve_params(const ParamArgs& a) {
    Params p = Params::from_lambda(a.lambda);
    if (a.rho > 0) p.rho = a.rho;
    if (a.eta > 0) p.eta = a.eta;
    if (a.gamma > 0) {
        p.gamma = a.gamma;
        if (a.tau <= 0) p.tau = a.gamma + p.lambda; // count tracks width by default
    }
    if (a.tau > 0) p.tau = a.tau;
    if (a.subset > 0) p.subset_size = a.subset;
    p.validate();
    return p;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json load_json(const std::string& path) { return Json::parse(read_file(path)); }

Rat parse_delta(const std::string& s) {
    mpq_class q;
    if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
        throw std::domain_error("bad delta '" + s + "' (use a fraction like 3/4)");
    if (q.get_den() == 0) throw std::domain_error("bad delta: zero denominator");
    q.canonicalize();
    return q;
}

Int load_cipher(const std::string& literal, const std::string& file) {
    if (!literal.empty() && !file.empty())
        throw std::domain_error("give either --cipher or --cipher-file, not both");
    if (!literal.empty()) return parse_int(literal);
    if (!file.empty()) return parse_int(load_json(file).at("c").get<std::string>());
    throw std::domain_error("a ciphertext is required (--cipher or --cipher-file)");
}

ThresholdMode parse_mode(const std::string& s) {
    return s == "knownp" ? ThresholdMode::KnownP : ThresholdMode::EtaFloor;
}

MatVariant parse_variant(const std::string& s) {
    return s == "gaussian" ? MatVariant::Gaussian : MatVariant::RandomT;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"integer-FHE lattice cryptanalysis workbench"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    int exit_code = 0;

    // ---- keygen ----------------------------------------------------------
    auto* keygen_cmd = app.add_subcommand("keygen", "generate an instance (public x, secret p)");
    ParamArgs kg_params;
    add_param_flags(keygen_cmd, kg_params);
    std::uint64_t kg_seed = 1;
    bool kg_instrumented = false;
    std::string kg_out;
    keygen_cmd->add_option("--seed", kg_seed, "deterministic seed");
    keygen_cmd->add_flag("--instrumented", kg_instrumented,
                         "include the secret modulus in the output (experiments only)");
    keygen_cmd->add_option("--out", kg_out, "write JSON here instead of stdout");
    keygen_cmd->callback([&]() {
        const Params params = resolve_params(kg_params);
        Rng rng(kg_seed);
        DghvKeyPair kp = keygen(params, rng, kg_instrumented);
        kp.seed = kg_seed;
        emit(dump(keypair_to_json(kp)), kg_out);
    });

    // ---- encrypt ---------------------------------------------------------
    auto* enc_cmd = app.add_subcommand("encrypt", "encrypt one bit under an instance file");
    std::string enc_key, enc_out;
    int enc_bit = 0;
    std::uint64_t enc_seed = 1;
    enc_cmd->add_option("--key", enc_key, "instance JSON from keygen")->required();
    enc_cmd->add_option("--bit", enc_bit, "plaintext bit")->check(CLI::Range(0, 1))->required();
    enc_cmd->add_option("--seed", enc_seed, "deterministic seed");
    enc_cmd->add_option("--out", enc_out, "write JSON here instead of stdout");
    enc_cmd->callback([&]() {
        const DghvKeyPair kp = keypair_from_json(load_json(enc_key));
        Rng rng(enc_seed);
        Json j;
        j["schema_version"] = kSchemaVersion;
        j["kind"] = "dghv_ciphertext";
        j["c"] = int_str(encrypt(kp, enc_bit, rng));
        emit(dump(j), enc_out);
    });

    // ---- decrypt ---------------------------------------------------------
    auto* dec_cmd = app.add_subcommand("decrypt", "decrypt with the secret modulus");
    std::string dec_key, dec_cipher, dec_cipher_file;
    dec_cmd->add_option("--key", dec_key, "instrumented instance JSON (contains p)")->required();
    dec_cmd->add_option("--cipher", dec_cipher, "ciphertext as a decimal integer");
    dec_cmd->add_option("--cipher-file", dec_cipher_file, "ciphertext JSON file");
    dec_cmd->callback([&]() {
        const DghvKeyPair kp = keypair_from_json(load_json(dec_key));
        if (!kp.instrumented)
            throw std::domain_error("decrypt needs an instrumented instance file (secret p)");
        std::cout << decrypt(kp.p, load_cipher(dec_cipher, dec_cipher_file)) << "\n";
    });

    // ---- attack ----------------------------------------------------------
    auto* atk_cmd = app.add_subcommand("attack", "recover a plaintext bit by lattice reduction");
    std::string atk_key, atk_cipher, atk_cipher_file, atk_mode = "eta", atk_delta = "3/4", atk_out;
    AttackConfig atk_cfg;
    std::uint64_t atk_seed = 1;
    atk_cmd->add_option("--key", atk_key, "instance JSON (public part is enough in eta mode)")
        ->required();
    atk_cmd->add_option("--cipher", atk_cipher, "ciphertext as a decimal integer");
    atk_cmd->add_option("--cipher-file", atk_cipher_file, "ciphertext JSON file");
    atk_cmd->add_option("--subset-size", atk_cfg.subset_size, "indices per lattice (default t)");
    atk_cmd->add_option("--retries", atk_cfg.max_subset_retries, "total subsets attempted");
    atk_cmd->add_option("--depth", atk_cfg.scan_depth, "reduced rows scanned for candidates");
    atk_cmd->add_option("--threshold-mode", atk_mode, "knownp (needs secret) or eta")
        ->check(CLI::IsMember({"knownp", "eta"}));
    atk_cmd->add_option("--delta", atk_delta, "reduction quality parameter, fraction in (1/4,1)");
    atk_cmd->add_option("--seed", atk_seed, "subset sampling seed");
    atk_cmd->add_option("--out", atk_out, "write verdict JSON here instead of stdout");
    atk_cmd->callback([&]() {
        const DghvKeyPair kp = keypair_from_json(load_json(atk_key));
        const Int c = load_cipher(atk_cipher, atk_cipher_file);
        atk_cfg.mode = parse_mode(atk_mode);
        atk_cfg.delta = parse_delta(atk_delta);
        if (atk_cfg.mode == ThresholdMode::KnownP && !kp.instrumented)
            throw std::domain_error("knownp threshold mode needs an instrumented instance file");
        Rng rng(atk_seed);
        const std::optional<Int> known_p =
            atk_cfg.mode == ThresholdMode::KnownP ? std::optional<Int>(kp.p) : std::nullopt;
        const AttackVerdict v = attack(kp.x, kp.params, c, atk_cfg, rng, known_p);
        emit(dump(verdict_to_json(v)), atk_out);
    });

    // ---- campaign --------------------------------------------------------
    auto* camp_cmd = app.add_subcommand("campaign", "many instances, attacks in both threshold modes");
    ParamArgs camp_params;
    add_param_flags(camp_cmd, camp_params);
    ExperimentSpec camp_spec;
    std::string camp_out, camp_format = "json", camp_delta = "3/4";
    camp_cmd->add_option("--trials,--instances", camp_spec.instances, "instance count");
    camp_cmd->add_option("--ciphertexts", camp_spec.ciphertexts_per_instance,
                         "ciphertexts per instance");
    camp_cmd->add_option("--retries", camp_spec.attack.max_subset_retries,
                         "subsets attempted per attack");
    camp_cmd->add_option("--depth", camp_spec.attack.scan_depth, "reduced rows scanned");
    camp_cmd->add_option("--delta", camp_delta, "reduction quality parameter");
    camp_cmd->add_option("--seed", camp_spec.seed, "campaign seed");
    camp_cmd->add_option("--jobs", camp_spec.jobs, "worker threads (0 = all cores)");
    camp_cmd->add_option("--format", camp_format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    camp_cmd->add_option("--out", camp_out, "write the report here instead of stdout");
    camp_cmd->callback([&]() {
        camp_spec.params = resolve_params(camp_params);
        camp_spec.attack.delta = parse_delta(camp_delta);
        const CampaignReport rep = run_attack_campaign(camp_spec);
        emit(camp_format == "csv" ? campaign_to_csv(rep) : dump(campaign_to_json(rep)), camp_out);
        if (rep.agg_known_p.soundness_failures > 0) {
            std::cerr << "soundness failure: a conclusive known-modulus verdict was wrong\n";
            exit_code = 2;
        }
    });

    // ---- sweep -----------------------------------------------------------
    auto* sweep_cmd = app.add_subcommand(
        "sweep", "repeat a small campaign across public-element widths (gamma values)");
    ParamArgs sweep_params{3, 3, 27, 243, 246, 27}; // toy regime; gamma/tau vary per entry
    add_param_flags(sweep_cmd, sweep_params);
    ExperimentSpec sweep_spec;
    sweep_spec.instances = 3;
    sweep_spec.ciphertexts_per_instance = 2;
    std::string sweep_out, sweep_format = "json", sweep_delta = "3/4";
    sweep_cmd->add_option("--gammas", sweep_spec.gammas,
                          "comma-separated gamma list (default lambda^5,lambda^6)")
        ->delimiter(',');
    sweep_cmd->add_option("--trials,--instances", sweep_spec.instances, "instances per gamma");
    sweep_cmd->add_option("--ciphertexts", sweep_spec.ciphertexts_per_instance,
                          "ciphertexts per instance");
    sweep_cmd->add_option("--retries", sweep_spec.attack.max_subset_retries,
                          "subsets attempted per attack");
    sweep_cmd->add_option("--depth", sweep_spec.attack.scan_depth, "reduced rows scanned");
    sweep_cmd->add_option("--delta", sweep_delta, "reduction quality parameter");
    sweep_cmd->add_option("--seed", sweep_spec.seed, "sweep seed");
    sweep_cmd->add_option("--jobs", sweep_spec.jobs, "worker threads (0 = all cores)");
    sweep_cmd->add_option("--format", sweep_format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sweep_cmd->add_option("--out", sweep_out, "write the report here instead of stdout");
    sweep_cmd->callback([&]() {
        sweep_spec.params = resolve_params(sweep_params);
        sweep_spec.attack.delta = parse_delta(sweep_delta);
        const SweepReport rep = run_gamma_sweep(sweep_spec);
        emit(sweep_format == "csv" ? sweep_to_csv(rep) : dump(sweep_to_json(rep)), sweep_out);
        for (const auto& e : rep.entries) {
            if (e.campaign.agg_known_p.soundness_failures > 0) {
                std::cerr << "soundness failure at gamma=" << e.gamma << "\n";
                exit_code = 2;
            }
        }
    });

    // ---- toy -------------------------------------------------------------
    auto* toy_cmd = app.add_subcommand(
        "toy", "deterministic single-instance walkthrough at the toy parameter set");
    std::uint64_t toy_seed = kToyDefaultSeed;
    std::string toy_out;
    toy_cmd->add_option("--seed", toy_seed, "instance seed");
    toy_cmd->add_option("--out", toy_out, "write the transcript here instead of stdout");
    toy_cmd->callback([&]() { emit(run_toy_repro(toy_seed), toy_out); });

    // ---- estimate --------------------------------------------------------
    auto* est_cmd = app.add_subcommand("estimate", "feasibility report without running lattices");
    ParamArgs est_params;
    add_param_flags(est_cmd, est_params);
    std::string est_out;
    est_cmd->add_option("--out", est_out, "write JSON here instead of stdout");
    est_cmd->callback([&]() {
        emit(dump(feasibility_to_json(run_estimate(resolve_params(est_params)))), est_out);
    });

    // ---- selftest --------------------------------------------------------
    auto* self_cmd = app.add_subcommand("selftest", "encrypt/decrypt/evaluate sanity checks");
    std::string self_scheme = "all";
    long self_lambda = 3;
    long self_trials = 200;
    std::uint64_t self_seed = 1;
    self_cmd->add_option("--scheme", self_scheme, "dghv, matshe, or all")
        ->check(CLI::IsMember({"dghv", "matshe", "all"}));
    self_cmd->add_option("--lambda", self_lambda, "security parameter")->check(CLI::PositiveNumber);
    self_cmd->add_option("--trials", self_trials, "round-trips per scheme");
    self_cmd->add_option("--seed", self_seed, "deterministic seed");
    self_cmd->callback([&]() {
        std::vector<std::string> schemes;
        if (self_scheme == "all")
            schemes = {"dghv", "matshe"};
        else
            schemes = {self_scheme};
        long failures = 0;
        for (const auto& s : schemes) {
            const SelftestReport rep = run_scheme_selftest(self_lambda, s, self_trials, self_seed);
            std::cout << "== " << rep.scheme << " (lambda=" << rep.lambda << ") ==\n";
            for (const auto& line : rep.lines) std::cout << line << "\n";
            std::cout << rep.checks - rep.failures << "/" << rep.checks << " checks passed\n";
            failures += rep.failures;
        }
        if (failures > 0) exit_code = 1;
    });

    // ---- matshe ----------------------------------------------------------
    auto* ms_cmd = app.add_subcommand("matshe", "matrix-ciphertext scheme operations");
    ms_cmd->require_subcommand(1);

    auto* ms_keygen = ms_cmd->add_subcommand("keygen", "generate a matrix-scheme keypair");
    long ms_lambda = 3;
    std::string ms_variant = "random-t", ms_kg_out;
    std::uint64_t ms_seed = 1;
    bool ms_instrumented = false;
    ms_keygen->add_option("--lambda", ms_lambda, "security parameter")->check(CLI::PositiveNumber);
    ms_keygen->add_option("--variant", ms_variant, "random-t or gaussian")
        ->check(CLI::IsMember({"random-t", "gaussian"}));
    ms_keygen->add_option("--seed", ms_seed, "deterministic seed");
    ms_keygen->add_flag("--instrumented", ms_instrumented, "retain noise ground truth");
    ms_keygen->add_option("--out", ms_kg_out, "write JSON here instead of stdout");
    ms_keygen->callback([&]() {
        Rng rng(ms_seed);
        const MatSheKeyPair kp = mat_keygen(ms_lambda, parse_variant(ms_variant), rng,
                                            ms_instrumented);
        emit(dump(matshe_key_to_json(kp)), ms_kg_out);
    });

    auto* ms_enc = ms_cmd->add_subcommand("enc", "encrypt one bit as a matrix ciphertext");
    std::string ms_enc_key, ms_enc_out;
    int ms_enc_bit = 0;
    std::uint64_t ms_enc_seed = 1;
    ms_enc->add_option("--key", ms_enc_key, "keypair JSON")->required();
    ms_enc->add_option("--bit", ms_enc_bit, "plaintext bit")->check(CLI::Range(0, 1))->required();
    ms_enc->add_option("--seed", ms_enc_seed, "deterministic seed");
    ms_enc->add_option("--out", ms_enc_out, "write JSON here instead of stdout");
    ms_enc->callback([&]() {
        const MatSheKeyPair kp = matshe_key_from_json(load_json(ms_enc_key));
        Rng rng(ms_enc_seed);
        emit(dump(matshe_ct_to_json(mat_encrypt(kp, ms_enc_bit, rng), kp.modulus)), ms_enc_out);
    });

    auto combine = [&](CLI::App* cmd, bool multiply) {
        auto a_path = std::make_shared<std::string>();
        auto b_path = std::make_shared<std::string>();
        auto out_path = std::make_shared<std::string>();
        cmd->add_option("--a", *a_path, "first ciphertext JSON")->required();
        cmd->add_option("--b", *b_path, "second ciphertext JSON")->required();
        cmd->add_option("--out", *out_path, "write JSON here instead of stdout");
        cmd->callback([&, a_path, b_path, out_path, multiply]() {
            const Json ja = load_json(*a_path);
            const Json jb = load_json(*b_path);
            const Int mod_a = parse_int(ja.at("modulus").get<std::string>());
            const Int mod_b = parse_int(jb.at("modulus").get<std::string>());
            if (mod_a != mod_b)
                throw std::domain_error("ciphertexts belong to different keys (moduli differ)");
            const Mat2 ca = matshe_ct_from_json(ja);
            const Mat2 cb = matshe_ct_from_json(jb);
            const Mat2 out = multiply ? mat_mul(ca, cb, mod_a) : mat_add(ca, cb, mod_a);
            emit(dump(matshe_ct_to_json(out, mod_a)), *out_path);
        });
    };
    combine(ms_cmd->add_subcommand("add", "homomorphic addition"), false);
    combine(ms_cmd->add_subcommand("mul", "homomorphic multiplication"), true);

    auto* ms_dec = ms_cmd->add_subcommand("dec", "decrypt a matrix ciphertext");
    std::string ms_dec_key, ms_dec_ct;
    ms_dec->add_option("--key", ms_dec_key, "keypair JSON")->required();
    ms_dec->add_option("--ct", ms_dec_ct, "ciphertext JSON")->required();
    ms_dec->callback([&]() {
        const MatSheKeyPair kp = matshe_key_from_json(load_json(ms_dec_key));
        std::cout << mat_decrypt(kp, matshe_ct_from_json(load_json(ms_dec_ct))) << "\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
