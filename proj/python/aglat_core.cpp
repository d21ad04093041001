// Python bindings for the core library. Arbitrary-precision integers cross
// the boundary losslessly: GMP values become Python ints (and back) through
// their decimal representation. Structured experiment reports reuse the JSON
// serialization layer and arrive as plain dicts, where big integers are
// decimal strings by design.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "aglat/attack.hpp"
#include "aglat/bounds.hpp"
#include "aglat/dghv.hpp"
#include "aglat/errors.hpp"
#include "aglat/harness.hpp"
#include "aglat/io.hpp"
#include "aglat/lattice.hpp"
#include "aglat/matshe.hpp"
#include "aglat/params.hpp"
#include "aglat/rng.hpp"

namespace py = pybind11;
using namespace aglat;

namespace {

py::object to_py_int(const Int& v) {
    PyObject* o = PyLong_FromString(v.get_str().c_str(), nullptr, 10);
    if (o == nullptr) throw py::error_already_set();
    return py::reinterpret_steal<py::object>(o);
}

Int to_int(py::handle h) {
    if (!PyLong_Check(h.ptr()))
        throw py::type_error("expected an int for an arbitrary-precision value");
    return parse_int(py::str(h).cast<std::string>());
}

std::vector<Int> to_int_vec(py::handle seq) {
    std::vector<Int> out;
    for (py::handle item : py::reinterpret_borrow<py::iterable>(seq))
        out.push_back(to_int(item));
    return out;
}

py::list from_int_vec(const std::vector<Int>& v) {
    py::list out;
    for (const Int& e : v) out.append(to_py_int(e));
    return out;
}

IntMat to_int_mat(py::handle rows) {
    IntMat out;
    for (py::handle row : py::reinterpret_borrow<py::iterable>(rows))
        out.push_back(to_int_vec(row));
    return out;
}

py::list from_int_mat(const IntMat& m) {
    py::list out;
    for (const auto& row : m) out.append(from_int_vec(row));
    return out;
}

LatticeBasis to_basis(py::handle rows) {
    LatticeBasis b{to_int_mat(rows)};
    b.validate();
    return b;
}

Rat to_delta(long num, long den) {
    if (den == 0) throw py::value_error("delta denominator must be nonzero");
    Rat d(num, den);
    d.canonicalize();
    return d;
}

py::object json_to_py(const Json& j) {
    switch (j.type()) {
        case Json::value_t::null: return py::none();
        case Json::value_t::boolean: return py::bool_(j.get<bool>());
        case Json::value_t::number_integer: return py::int_(j.get<long long>());
        case Json::value_t::number_unsigned:
            return py::int_(j.get<unsigned long long>());
        case Json::value_t::number_float: return py::float_(j.get<double>());
        case Json::value_t::string: return py::str(j.get<std::string>());
        case Json::value_t::array: {
            py::list out;
            for (const auto& e : j) out.append(json_to_py(e));
            return out;
        }
        case Json::value_t::object: {
            py::dict out;
            for (const auto& [k, v] : j.items()) out[py::str(k)] = json_to_py(v);
            return out;
        }
        default: return py::none();
    }
}

Json py_to_json(py::handle h) {
    if (h.is_none()) return nullptr;
    if (py::isinstance<py::bool_>(h)) return h.cast<bool>();
    if (py::isinstance<py::int_>(h)) return h.cast<long long>();
    if (py::isinstance<py::float_>(h)) return h.cast<double>();
    if (py::isinstance<py::str>(h)) return h.cast<std::string>();
    if (py::isinstance<py::dict>(h)) {
        Json out = Json::object();
        for (auto item : h.cast<py::dict>())
            out[item.first.cast<std::string>()] = py_to_json(item.second);
        return out;
    }
    if (py::isinstance<py::list>(h) || py::isinstance<py::tuple>(h)) {
        Json out = Json::array();
        for (py::handle e : h.cast<py::iterable>()) out.push_back(py_to_json(e));
        return out;
    }
    throw py::type_error("unsupported value in report structure");
}

ThresholdMode parse_mode(const std::string& s) {
    if (s == "known-p") return ThresholdMode::KnownP;
    if (s == "eta-floor") return ThresholdMode::EtaFloor;
    throw py::value_error("mode must be 'known-p' or 'eta-floor'");
}

LatticeVariant parse_variant(const std::string& s) {
    if (s == "square") return LatticeVariant::Square;
    if (s == "y-tracking") return LatticeVariant::YTracking;
    throw py::value_error("variant must be 'square' or 'y-tracking'");
}

MatVariant parse_mat_variant(const std::string& s) {
    if (s == "random-t") return MatVariant::RandomT;
    if (s == "gaussian") return MatVariant::Gaussian;
    throw py::value_error("variant must be 'random-t' or 'gaussian'");
}

} // namespace

PYBIND11_MODULE(aglat_core, m) {
    m.doc() = "approximate-gcd lattice workbench: schemes, exact reduction, "
              "attacks, estimators";

    py::register_exception<GuardError>(m, "GuardError", PyExc_ValueError);
    py::register_exception<NotFoundError>(m, "NotFoundError", PyExc_LookupError);
    py::register_exception<ParamsTooSmallError>(m, "ParamsTooSmallError",
                                                PyExc_ValueError);
    py::register_exception<NoiseBudgetError>(m, "NoiseBudgetError",
                                             PyExc_ArithmeticError);
    py::register_exception<DegenerateBasisError>(m, "DegenerateBasisError",
                                                 PyExc_ValueError);

    py::class_<Params>(m, "Params")
        .def(py::init([](long lambda, long rho, long eta, long gamma, long tau,
                         long subset_size) {
                 return Params{lambda, rho, eta, gamma, tau, subset_size};
             }),
             py::arg("lambda_"), py::arg("rho"), py::arg("eta"), py::arg("gamma"),
             py::arg("tau"), py::arg("subset_size"))
        .def_static("from_lambda", &Params::from_lambda, py::arg("lambda_"))
        .def_readwrite("lambda_", &Params::lambda)
        .def_readwrite("rho", &Params::rho)
        .def_readwrite("eta", &Params::eta)
        .def_readwrite("gamma", &Params::gamma)
        .def_readwrite("tau", &Params::tau)
        .def_readwrite("subset_size", &Params::subset_size)
        .def("valid", &Params::valid)
        .def("validate", &Params::validate)
        .def("describe", &Params::describe)
        .def("__repr__", [](const Params& p) { return "Params(" + p.describe() + ")"; });

    py::class_<DghvKeyPair>(m, "KeyPair")
        .def_readonly("params", &DghvKeyPair::params)
        .def_readonly("seed", &DghvKeyPair::seed)
        .def_readonly("instrumented", &DghvKeyPair::instrumented)
        .def_property_readonly("p",
                               [](const DghvKeyPair& kp) -> py::object {
                                   if (!kp.instrumented) return py::none();
                                   return to_py_int(kp.p);
                               })
        .def_property_readonly(
            "x", [](const DghvKeyPair& kp) { return from_int_vec(kp.x); })
        .def_property_readonly("noises",
                               [](const DghvKeyPair& kp) -> py::object {
                                   if (!kp.instrumented) return py::none();
                                   return from_int_vec(kp.r);
                               })
        .def("__repr__", [](const DghvKeyPair& kp) {
            return "KeyPair(" + kp.params.describe() +
                   (kp.instrumented ? ", instrumented)" : ")");
        });

    m.def(
        "keygen",
        [](const Params& params, std::uint64_t seed, bool instrumented) {
            Rng rng(seed);
            DghvKeyPair kp = keygen(params, rng, instrumented);
            kp.seed = seed;
            return kp;
        },
        py::arg("params"), py::arg("seed"), py::arg("instrumented") = false);

    m.def(
        "encrypt",
        [](const DghvKeyPair& kp, int msg, std::uint64_t seed) {
            Rng rng(seed);
            return to_py_int(encrypt(kp, msg, rng));
        },
        py::arg("keypair"), py::arg("m"), py::arg("seed"));

    m.def(
        "encrypt_detail",
        [](const DghvKeyPair& kp, int msg, std::uint64_t seed) {
            Rng rng(seed);
            const EncryptResult res = encrypt_detail(kp, msg, rng);
            py::dict out;
            out["c"] = to_py_int(res.c);
            out["r"] = to_py_int(res.r);
            out["subset"] = py::cast(res.subset);
            out["fold"] = to_py_int(res.fold);
            return out;
        },
        py::arg("keypair"), py::arg("m"), py::arg("seed"));

    m.def(
        "decrypt",
        [](py::handle p, py::handle c) { return decrypt(to_int(p), to_int(c)); },
        py::arg("p"), py::arg("c"));

    m.def(
        "noise_of",
        [](py::handle p, py::handle c) { return to_py_int(noise_of(to_int(p), to_int(c))); },
        py::arg("p"), py::arg("c"));

    m.def(
        "centered_mod",
        [](py::handle c, py::handle modulus) {
            return to_py_int(centered_mod(to_int(c), to_int(modulus)));
        },
        py::arg("c"), py::arg("modulus"));

    m.def(
        "parity", [](py::handle z) { return parity(to_int(z)); }, py::arg("z"));

    m.def(
        "eval_add",
        [](py::handle c1, py::handle c2, py::handle x0) {
            return to_py_int(eval_add(to_int(c1), to_int(c2), to_int(x0)));
        },
        py::arg("c1"), py::arg("c2"), py::arg("x0"));

    m.def(
        "eval_mul",
        [](py::handle c1, py::handle c2, py::handle x0) {
            return to_py_int(eval_mul(to_int(c1), to_int(c2), to_int(x0)));
        },
        py::arg("c1"), py::arg("c2"), py::arg("x0"));

    m.def(
        "brute_force_agcd",
        [](py::handle xs, const Params& params) {
            return to_py_int(brute_force_agcd(to_int_vec(xs), params));
        },
        py::arg("xs"), py::arg("params"));

    // ---- exact lattice reduction ----

    m.def(
        "lll_reduce",
        [](py::handle rows, long delta_num, long delta_den) {
            const auto out = lll_reduce(to_basis(rows), to_delta(delta_num, delta_den));
            py::dict d;
            d["basis"] = from_int_mat(out.basis.rows);
            d["transform"] = from_int_mat(out.transform);
            d["swaps"] = out.swaps;
            d["size_reductions"] = out.size_reductions;
            return d;
        },
        py::arg("rows"), py::arg("delta_num") = 3, py::arg("delta_den") = 4);

    m.def(
        "is_lll_reduced",
        [](py::handle rows, long delta_num, long delta_den) {
            return is_lll_reduced(to_basis(rows), to_delta(delta_num, delta_den));
        },
        py::arg("rows"), py::arg("delta_num") = 3, py::arg("delta_den") = 4);

    m.def(
        "enumerate_shortest",
        [](py::handle rows, long coeff_bound) {
            const auto res = enumerate_shortest(to_basis(rows), coeff_bound);
            py::dict d;
            d["vec"] = from_int_vec(res.vec);
            d["coeffs"] = py::cast(res.coeffs);
            d["norm_sq"] = to_py_int(res.norm_sq);
            return d;
        },
        py::arg("rows"), py::arg("coeff_bound"));

    m.def(
        "volume",
        [](py::handle rows) {
            const auto res = volume(to_basis(rows));
            py::dict d;
            d["gram_det"] = to_py_int(res.gram_det);
            d["is_square"] = res.is_square;
            d["root"] = res.is_square ? to_py_int(res.root) : py::object(py::none());
            return d;
        },
        py::arg("rows"));

    m.def(
        "random_basis",
        [](std::size_t n, std::size_t mm, long entry_bits, std::uint64_t seed) {
            Rng rng(seed);
            return from_int_mat(random_basis(n, mm, entry_bits, rng).rows);
        },
        py::arg("n"), py::arg("m"), py::arg("entry_bits"), py::arg("seed"));

    // ---- estimators ----

    m.def("bound_lll_worstcase", &bound_lll_worstcase, py::arg("n"));
    m.def("bound_lll_average", &bound_lll_average, py::arg("n"));
    m.def("bound_lll_worstcase_log2", &bound_lll_worstcase_log2, py::arg("n"));
    m.def("bound_lll_average_log2", &bound_lll_average_log2, py::arg("n"));

    m.def(
        "bound_block_reduction_log2",
        [](long k, long n, const std::string& variant) {
            const auto b = bound_block_reduction_log2(
                k, n, variant == "schnorr" ? BlockVariant::Schnorr : BlockVariant::Ghkn);
            py::dict d;
            d["k"] = b.k;
            d["n"] = b.n;
            d["variant"] = variant;
            d["beta_log2"] = b.beta_log2;
            d["beta_term_log2"] = b.beta_term_log2;
            d["ratio_term_log2"] = b.ratio_term_log2;
            d["sqrt_gamma_log2"] = b.sqrt_gamma_log2;
            d["total_log2"] = b.total_log2;
            return d;
        },
        py::arg("k"), py::arg("n"), py::arg("variant") = "ghkn");

    m.def(
        "feasibility_estimate",
        [](const Params& params) { return json_to_py(feasibility_to_json(feasibility_estimate(params))); },
        py::arg("params"));

    // ---- the attack ----

    m.def(
        "build_attack_lattice",
        [](py::handle xs, py::handle c, const std::vector<long>& subset,
           const std::string& variant) {
            return from_int_mat(
                build_attack_lattice(to_int_vec(xs), to_int(c), subset,
                                     parse_variant(variant))
                    .rows);
        },
        py::arg("xs"), py::arg("c"), py::arg("subset"),
        py::arg("variant") = "y-tracking");

    m.def(
        "acceptance_threshold",
        [](const Params& params, const std::string& mode, py::handle p) {
            std::optional<Int> known;
            if (!p.is_none()) known = to_int(p);
            return to_py_int(acceptance_threshold(params, parse_mode(mode), known));
        },
        py::arg("params"), py::arg("mode") = "eta-floor", py::arg("p") = py::none());

    m.def(
        "attack",
        [](py::handle xs, const Params& params, py::handle c, std::uint64_t seed,
           const std::string& mode, const std::string& variant, long retries,
           long scan_depth, long subset_size, py::handle known_p,
           bool include_timings) {
            AttackConfig cfg;
            cfg.mode = parse_mode(mode);
            cfg.variant = parse_variant(variant);
            cfg.max_subset_retries = retries;
            cfg.scan_depth = scan_depth;
            cfg.subset_size = subset_size;
            cfg.seed = seed;
            std::optional<Int> p;
            if (!known_p.is_none()) p = to_int(known_p);
            Rng rng(Rng::derive(seed, 1));
            const AttackVerdict v = attack(to_int_vec(xs), params, to_int(c), cfg, rng, p);
            return json_to_py(verdict_to_json(v, include_timings));
        },
        py::arg("xs"), py::arg("params"), py::arg("c"), py::arg("seed"),
        py::arg("mode") = "eta-floor", py::arg("variant") = "y-tracking",
        py::arg("retries") = 5, py::arg("scan_depth") = 5,
        py::arg("subset_size") = 0, py::arg("known_p") = py::none(),
        py::arg("include_timings") = false);

    // ---- matrix scheme ----

    m.def(
        "mat_keygen",
        [](long lambda, const std::string& variant, std::uint64_t seed,
           bool instrumented) {
            Rng rng(seed);
            return json_to_py(matshe_key_to_json(
                mat_keygen(lambda, parse_mat_variant(variant), rng, instrumented)));
        },
        py::arg("lambda_"), py::arg("variant") = "random-t", py::arg("seed") = 1,
        py::arg("instrumented") = false);

    m.def(
        "mat_encrypt",
        [](py::handle key, int msg, std::uint64_t seed) {
            const auto kp = matshe_key_from_json(py_to_json(key));
            Rng rng(seed);
            return json_to_py(matshe_ct_to_json(mat_encrypt(kp, msg, rng), kp.modulus));
        },
        py::arg("key"), py::arg("m"), py::arg("seed"));

    m.def(
        "mat_decrypt",
        [](py::handle key, py::handle ct) {
            const auto kp = matshe_key_from_json(py_to_json(key));
            return mat_decrypt(kp, matshe_ct_from_json(py_to_json(ct)));
        },
        py::arg("key"), py::arg("ct"));

    m.def(
        "mat_add",
        [](py::handle key, py::handle c1, py::handle c2) {
            const auto kp = matshe_key_from_json(py_to_json(key));
            const Mat2 sum = mat_add(matshe_ct_from_json(py_to_json(c1)),
                                     matshe_ct_from_json(py_to_json(c2)), kp.modulus);
            return json_to_py(matshe_ct_to_json(sum, kp.modulus));
        },
        py::arg("key"), py::arg("c1"), py::arg("c2"));

    m.def(
        "mat_mul",
        [](py::handle key, py::handle c1, py::handle c2) {
            const auto kp = matshe_key_from_json(py_to_json(key));
            const Mat2 prod = mat_mul(matshe_ct_from_json(py_to_json(c1)),
                                      matshe_ct_from_json(py_to_json(c2)), kp.modulus);
            return json_to_py(matshe_ct_to_json(prod, kp.modulus));
        },
        py::arg("key"), py::arg("c1"), py::arg("c2"));

    // ---- experiment harness ----

    m.def("run_toy_repro", &run_toy_repro, py::arg("seed") = kToyDefaultSeed);

    m.def(
        "run_campaign",
        [](const Params& params, long instances, long ciphertexts,
           std::uint64_t seed, long retries, long jobs, bool include_timings) {
            ExperimentSpec spec;
            spec.params = params;
            spec.instances = instances;
            spec.ciphertexts_per_instance = ciphertexts;
            spec.seed = seed;
            spec.attack.max_subset_retries = retries;
            spec.jobs = jobs;
            return json_to_py(campaign_to_json(run_attack_campaign(spec), include_timings));
        },
        py::arg("params"), py::arg("instances") = 20, py::arg("ciphertexts") = 5,
        py::arg("seed") = 1, py::arg("retries") = 5, py::arg("jobs") = 0,
        py::arg("include_timings") = false);

    m.def(
        "run_sweep",
        [](const Params& params, const std::vector<long>& gammas, long instances,
           long ciphertexts, std::uint64_t seed, long jobs, bool include_timings) {
            ExperimentSpec spec;
            spec.mode = ExperimentMode::GammaSweep;
            spec.params = params;
            spec.gammas = gammas;
            spec.instances = instances;
            spec.ciphertexts_per_instance = ciphertexts;
            spec.seed = seed;
            spec.jobs = jobs;
            return json_to_py(sweep_to_json(run_gamma_sweep(spec), include_timings));
        },
        py::arg("params"), py::arg("gammas") = std::vector<long>{},
        py::arg("instances") = 3, py::arg("ciphertexts") = 2, py::arg("seed") = 1,
        py::arg("jobs") = 0, py::arg("include_timings") = false);

    m.def(
        "run_scheme_selftest",
        [](long lambda, const std::string& scheme, long trials, std::uint64_t seed) {
            const auto rep = run_scheme_selftest(lambda, scheme, trials, seed);
            py::dict d;
            d["scheme"] = rep.scheme;
            d["lambda"] = rep.lambda;
            d["checks"] = rep.checks;
            d["failures"] = rep.failures;
            d["lines"] = py::cast(rep.lines);
            return d;
        },
        py::arg("lambda_"), py::arg("scheme") = "dghv", py::arg("trials") = 200,
        py::arg("seed") = 1);
}
