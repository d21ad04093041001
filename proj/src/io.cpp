#include "aglat/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "aglat/version.hpp"

namespace aglat {

std::string int_str(const Int& v) { return v.get_str(); }

Int parse_int(const std::string& s) {
    if (s.empty()) throw std::domain_error("parse_int: empty string");
    // decimal, or lowercase hex with 0x prefix
    if (s.rfind("0x", 0) == 0 || s.rfind("-0x", 0) == 0) {
        bool neg = s[0] == '-';
        Int v;
        if (mpz_set_str(v.get_mpz_t(), s.c_str() + (neg ? 3 : 2), 16) != 0)
            throw std::domain_error("parse_int: bad hex integer '" + s + "'");
        return neg ? Int(-v) : v;
    }
    Int v;
    if (mpz_set_str(v.get_mpz_t(), s.c_str(), 10) != 0)
        throw std::domain_error("parse_int: bad integer '" + s + "'");
    return v;
}

std::string basis_to_text(const LatticeBasis& basis, bool header) {
    std::ostringstream os;
    if (header) os << basis.n() << ' ' << basis.m() << '\n';
    for (const auto& row : basis.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) os << ' ';
            os << row[j].get_str();
        }
        os << '\n';
    }
    return os.str();
}

LatticeBasis basis_from_text(const std::string& text) {
    std::vector<std::vector<Int>> rows;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::vector<Int> row;
        std::string tok;
        while (ls >> tok) row.push_back(parse_int(tok));
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::domain_error("basis_from_text: no rows");
    // optional "n m" header: two small values matching the remaining shape
    if (rows[0].size() == 2 && rows.size() >= 2) {
        const Int& n = rows[0][0];
        const Int& m = rows[0][1];
        if (n == static_cast<long>(rows.size() - 1) &&
            m == static_cast<long>(rows[1].size()))
            rows.erase(rows.begin());
    }
    LatticeBasis basis{std::move(rows)};
    basis.validate();
    return basis;
}

Json params_to_json(const Params& p) {
    return Json{{"lambda", p.lambda}, {"rho", p.rho},       {"eta", p.eta},
                {"gamma", p.gamma},   {"tau", p.tau},       {"subset_size", p.subset_size}};
}

Params params_from_json(const Json& j) {
    Params p;
    p.lambda = j.at("lambda").get<long>();
    p.rho = j.at("rho").get<long>();
    p.eta = j.at("eta").get<long>();
    p.gamma = j.at("gamma").get<long>();
    p.tau = j.at("tau").get<long>();
    p.subset_size = j.at("subset_size").get<long>();
    return p;
}

Json keypair_to_json(const DghvKeyPair& kp) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "dghv_instance";
    j["params"] = params_to_json(kp.params);
    j["seed"] = kp.seed;
    Json xs = Json::array();
    for (const auto& x : kp.x) xs.push_back(int_str(x));
    j["x"] = xs;
    if (kp.instrumented) j["p"] = int_str(kp.p); // q, r never leave the process
    return j;
}

DghvKeyPair keypair_from_json(const Json& j) {
    DghvKeyPair kp;
    kp.params = params_from_json(j.at("params"));
    kp.seed = j.value("seed", std::uint64_t{0});
    for (const auto& s : j.at("x")) kp.x.push_back(parse_int(s.get<std::string>()));
    if (j.contains("p")) {
        kp.p = parse_int(j.at("p").get<std::string>());
        kp.instrumented = true;
    }
    return kp;
}

const char* decision_name(Decision d) {
    switch (d) {
        case Decision::Zero: return "0";
        case Decision::One: return "1";
        default: return "inconclusive";
    }
}

const char* method_name(AttackVerdict::Method m) {
    switch (m) {
        case AttackVerdict::Method::FirstVector: return "first-vector-parity";
        case AttackVerdict::Method::ColumnParity: return "column-parity";
        default: return "none";
    }
}

Json verdict_to_json(const AttackVerdict& v, bool include_timings) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "attack_verdict";
    j["decision"] = decision_name(v.decision);
    j["method"] = method_name(v.method);
    j["threshold"] = int_str(v.threshold);
    j["subset"] = v.subset_used;
    Json w = Json::array();
    for (const auto& e : v.witness) w.push_back(int_str(e));
    j["witness"] = w;
    j["rows_scanned"] = v.rows_scanned;
    j["retries"] = v.retries;
    if (include_timings) {
        j["timings_ms"] = v.reduction_ms;
        j["total_ms"] = v.total_ms;
    }
    return j;
}

namespace {

Json mat2_to_json(const Mat2& m) {
    return Json::array({int_str(m.a), int_str(m.b), int_str(m.c), int_str(m.d)});
}

Mat2 mat2_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 4)
        throw std::domain_error("matshe: matrix must be a 4-entry row-major array");
    return {parse_int(j[0].get<std::string>()), parse_int(j[1].get<std::string>()),
            parse_int(j[2].get<std::string>()), parse_int(j[3].get<std::string>())};
}

} // namespace

Json matshe_key_to_json(const MatSheKeyPair& kp) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "matshe_keypair";
    j["variant"] = kp.variant == MatVariant::RandomT ? "random-t" : "gaussian";
    j["lambda"] = kp.lambda;
    j["tau_prime"] = kp.tau_prime;
    j["modulus"] = int_str(kp.modulus);
    j["T"] = mat2_to_json(kp.T);
    j["A"] = mat2_to_json(kp.A);
    Json bs = Json::array();
    for (const auto& b : kp.B) bs.push_back(mat2_to_json(b));
    j["B"] = bs;
    if (kp.instrumented) {
        Json rs = Json::array();
        for (const auto& r : kp.r) rs.push_back(int_str(r));
        j["r"] = rs;
        if (kp.variant == MatVariant::Gaussian) {
            j["p"] = int_str(kp.gauss_p);
            j["q"] = int_str(kp.gauss_q);
        }
    }
    return j;
}

MatSheKeyPair matshe_key_from_json(const Json& j) {
    MatSheKeyPair kp;
    kp.variant = j.at("variant").get<std::string>() == "gaussian" ? MatVariant::Gaussian
                                                                  : MatVariant::RandomT;
    kp.lambda = j.at("lambda").get<long>();
    kp.tau_prime = j.at("tau_prime").get<long>();
    kp.modulus = parse_int(j.at("modulus").get<std::string>());
    kp.T = mat2_from_json(j.at("T"));
    kp.A = mat2_from_json(j.at("A"));
    for (const auto& b : j.at("B")) kp.B.push_back(mat2_from_json(b));
    if (j.contains("r")) {
        kp.instrumented = true;
        for (const auto& r : j.at("r")) kp.r.push_back(parse_int(r.get<std::string>()));
        if (j.contains("p")) kp.gauss_p = parse_int(j.at("p").get<std::string>());
        if (j.contains("q")) kp.gauss_q = parse_int(j.at("q").get<std::string>());
    }
    return kp;
}

Json matshe_ct_to_json(const Mat2& c, const Int& modulus) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "matshe_ciphertext";
    j["modulus"] = int_str(modulus);
    j["C"] = mat2_to_json(c);
    return j;
}

Mat2 matshe_ct_from_json(const Json& j) { return mat2_from_json(j.at("C")); }

Json feasibility_to_json(const FeasibilityReport& r) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "feasibility_report";
    j["params"] = params_to_json(r.params);
    j["pigeonhole"] = Json{{"coeff_log2", r.pigeonhole.coeff_log2},
                           {"count_log2", r.pigeonhole.count_log2},
                           {"gamma_bits", r.pigeonhole.gamma_bits},
                           {"holds", r.pigeonhole.holds}};
    j["lambda1_log2"] = r.lambda1_log2;
    j["lambda1_model"] = r.lambda1_from_volume ? "volume gamma/(t+2)" : "pigeonhole lambda^2";
    j["threshold_log2"] = r.threshold_log2;
    auto pred = [](const PredictorReport& p) {
        return Json{{"norm_log2", p.norm_log2},
                    {"margin_log2", p.margin_log2},
                    {"feasible", p.feasible}};
    };
    j["lll_average"] = pred(r.lll_average);
    j["block_ghkn"] = pred(r.block_ghkn);
    j["block_detail"] = Json{{"k", r.block_detail.k},
                             {"n", r.block_detail.n},
                             {"beta_log2", r.block_detail.beta_log2},
                             {"beta_term_log2", r.block_detail.beta_term_log2},
                             {"ratio_term_log2", r.block_detail.ratio_term_log2},
                             {"sqrt_gamma_log2", r.block_detail.sqrt_gamma_log2},
                             {"total_log2", r.block_detail.total_log2},
                             {"gamma_proxy", r.block_detail.gamma_proxy}};
    return j;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

} // namespace aglat
