"""End-to-end smoke tests for the Python bindings.

These exercise the main operations through the wrapper package: parameter
derivation, the integer scheme, exact lattice reduction with transform
verification done independently in Python, the attack, the estimators, the
matrix scheme, and the experiment harness.
"""

import pytest

import aglat

TOY = aglat.Params(lambda_=3, rho=3, eta=27, gamma=243, tau=246, subset_size=27)


def test_params_from_lambda():
    p = aglat.Params.from_lambda(3)
    assert (p.lambda_, p.rho, p.eta, p.gamma, p.tau, p.subset_size) == (
        3, 3, 36, 243, 246, 27)
    assert p.valid()
    assert not aglat.Params.from_lambda(1).valid()
    assert "lambda=3" in p.describe()


def test_roundtrip_and_bigint_fidelity():
    kp = aglat.keygen(TOY, seed=5, instrumented=True)
    assert kp.instrumented and kp.p is not None
    assert kp.p % 2 == 1
    assert 2 ** 26 <= kp.p < 2 ** 27
    assert len(kp.x) == TOY.tau + 1
    assert kp.x[0] % 2 == 1
    assert kp.x[0].bit_length() >= 200  # gamma-scale values survive the boundary

    for i in range(20):
        m = i & 1
        c = aglat.encrypt(kp, m, seed=100 + i)
        assert aglat.decrypt(kp.p, c) == m
        assert abs(aglat.noise_of(kp.p, c)) <= 2 ** (TOY.rho + 2) * (TOY.tau + 2)


def test_reference_ciphertext_parity():
    p = 134217729
    c = -196848789281973859727465844151315553725055119450697291705147663567242373
    assert aglat.decrypt(p, c) == 1
    assert aglat.decrypt(p, c - 1) == 0
    assert aglat.noise_of(p, c) == -47


def test_centered_mod_and_parity():
    assert aglat.centered_mod(7, 10) == -3
    assert aglat.centered_mod(5, 10) == 5
    assert aglat.parity(-3) == 1
    with pytest.raises(ValueError):
        # eta must exceed rho + 3 + ceil(log2 tau), the decryption margin
        aglat.Params(3, 3, 10, 243, 246, 27).validate()
    aglat.Params(3, 3, 27, 243, 246, 27).validate()  # toy regime is fine


def test_eval_add_preserves_plaintext():
    kp = aglat.keygen(TOY, seed=8, instrumented=True)
    c1 = aglat.encrypt(kp, 1, seed=1)
    c2 = aglat.encrypt(kp, 0, seed=2)
    csum = aglat.eval_add(c1, c2, kp.x[0])
    n1, n2 = aglat.noise_of(kp.p, c1), aglat.noise_of(kp.p, c2)
    if 2 * abs(n1 + n2) < kp.p:  # additions stay decryptable inside the margin
        assert aglat.decrypt(kp.p, csum) == 1


def test_lll_reduction_verified_in_python():
    rows = [[201, 37], [1648, 297]]
    out = aglat.lll_reduce(rows)
    basis, transform = out["basis"], out["transform"]
    # Python-side re-check: U * C == B and |det U| == 1.
    for i in range(2):
        for j in range(2):
            assert basis[i][j] == sum(transform[i][k] * rows[k][j] for k in range(2))
    det = transform[0][0] * transform[1][1] - transform[0][1] * transform[1][0]
    assert abs(det) == 1
    assert aglat.is_lll_reduced(basis)
    assert basis[0][0] ** 2 + basis[0][1] ** 2 == 1025
    assert aglat.enumerate_shortest(rows, 50)["norm_sq"] == 1025

    vol = aglat.volume(rows)
    assert vol["is_square"] and vol["root"] == abs(201 * 297 - 37 * 1648)

    with pytest.raises(ValueError):
        aglat.lll_reduce([[1, 2], [2, 4]])  # dependent rows
    with pytest.raises(ValueError):
        aglat.lll_reduce(rows, delta_num=1, delta_den=1)  # delta out of range


def test_attack_recovers_bit():
    kp = aglat.keygen(TOY, seed=11, instrumented=True)
    c = aglat.encrypt(kp, 1, seed=3)
    verdict = aglat.attack(kp.x, TOY, c, seed=4, mode="known-p", known_p=kp.p)
    assert verdict["decision"] in ("0", "1", "inconclusive")
    if verdict["decision"] != "inconclusive":
        assert verdict["decision"] == "1"
        assert verdict["method"] in ("first-vector-parity", "column-parity")
    thr = aglat.acceptance_threshold(TOY, mode="eta-floor")
    assert thr == 38836

    lat = aglat.build_attack_lattice([9, 5], 7, [1], variant="y-tracking")
    assert lat == [[7, 1, 0, 0], [-5, 0, 1, 0], [-9, 0, 0, 1]]


def test_estimators_and_feasibility():
    assert aglat.bound_lll_average(100) == pytest.approx(7.2446, abs=1e-3)
    block = aglat.bound_block_reduction_log2(100, 100 ** 3 + 2, "ghkn")
    assert block["beta_term_log2"] == pytest.approx(36533.97, abs=0.1)

    feas = aglat.feasibility_estimate(TOY)
    assert feas["threshold_log2"] == pytest.approx(15.2451, abs=1e-3)
    assert feas["lll_average"]["feasible"] is True
    assert feas["block_ghkn"]["feasible"] is False


def test_matrix_scheme_roundtrip():
    key = aglat.mat_keygen(3, variant="random-t", seed=6, instrumented=True)
    assert key["variant"] == "random-t"
    for i in range(25):
        m = i & 1
        ct = aglat.mat_encrypt(key, m, seed=50 + i)
        assert aglat.mat_decrypt(key, ct) == m
    c1 = aglat.mat_encrypt(key, 1, seed=501)
    c2 = aglat.mat_encrypt(key, 1, seed=502)
    assert aglat.mat_decrypt(key, aglat.mat_add(key, c1, c2)) == 0

    gauss = aglat.mat_keygen(3, variant="gaussian", seed=7, instrumented=True)
    p = int(gauss["p"])
    t = [int(v) for v in gauss["T"]]
    assert t[0] ** 2 + t[1] ** 2 == p


def test_harness_reports():
    transcript = aglat.run_toy_repro()
    assert "transform check: U * L == B holds" in transcript
    assert transcript == aglat.run_toy_repro()  # deterministic

    rep = aglat.run_campaign(TOY, instances=2, ciphertexts=1, seed=9)
    agg = rep["aggregate"]["known_p"]
    assert agg["trials"] == 2
    assert agg["successes"] + agg["failures"] + agg["inconclusives"] == 2
    assert agg["soundness_failures"] == 0
    rep2 = aglat.run_campaign(TOY, instances=2, ciphertexts=1, seed=9)
    assert rep == rep2  # bit-for-bit reproducible

    selftest = aglat.run_scheme_selftest(3, scheme="dghv", trials=30, seed=2)
    assert selftest["failures"] == 0
    assert selftest["checks"] > 0

    with pytest.raises(ValueError):
        aglat.run_scheme_selftest(3, scheme="nope")
