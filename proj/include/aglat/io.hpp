#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "aglat/attack.hpp"
#include "aglat/dghv.hpp"
#include "aglat/lattice.hpp"
#include "aglat/matshe.hpp"

namespace aglat {

using Json = nlohmann::ordered_json;

// Big integers travel as decimal strings inside JSON.
std::string int_str(const Int& v);
Int parse_int(const std::string& s);

// --- basis text format: optional "n m" header, then decimal rows ---
std::string basis_to_text(const LatticeBasis& basis, bool header = true);
LatticeBasis basis_from_text(const std::string& text);

Json params_to_json(const Params& p);
Params params_from_json(const Json& j);

// Instance files: {schema_version, kind, params, seed, x[], p?}. q/r are
// never serialized; p only when the keypair is instrumented.
Json keypair_to_json(const DghvKeyPair& kp);
DghvKeyPair keypair_from_json(const Json& j);

Json verdict_to_json(const AttackVerdict& v, bool include_timings = true);

Json matshe_key_to_json(const MatSheKeyPair& kp);
MatSheKeyPair matshe_key_from_json(const Json& j);
Json matshe_ct_to_json(const Mat2& c, const Int& modulus);
Mat2 matshe_ct_from_json(const Json& j);

Json feasibility_to_json(const FeasibilityReport& r);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

const char* decision_name(Decision d);
const char* method_name(AttackVerdict::Method m);

} // namespace aglat
