"""Smoke tests for the umebh Python bindings."""

import json

import numpy as np
import pytest

import umebh


def test_fourier_is_hadamard():
    f = umebh.fourier(5)
    assert f.shape == (5, 5)
    np.testing.assert_allclose(f @ f.conj().T, 5 * np.eye(5), atol=1e-12)
    check = umebh.verify_partial(f)
    assert check.modulus_ok and check.gram_ok


def test_verify_partial_rejects_bad_rows():
    f = umebh.fourier(4)
    f[1, 2] *= 1.01
    assert not umebh.verify_partial(f).modulus_ok


def test_umeb5_conditions():
    s = umebh.umeb5()
    assert s["d"] == 5
    assert len(s["members"]) == 23
    assert len(s["labels"]) == 23
    r = umebh.verify_meb_conditions(s["d"], s["members"])
    assert r["passed"]
    assert r["worst_gram_deviation"] < 1e-9


def test_umeb7_has_45_members():
    s = umebh.umeb7()
    assert len(s["members"]) == 45
    assert umebh.verify_meb_conditions(7, s["members"])["passed"]


def test_state_vector_overlap_is_normalised_trace():
    a = umebh.weyl(1, 0, 3)
    b = a @ np.diag(np.exp(1j * np.array([0.3, 1.1, 2.0])))
    overlap = np.vdot(umebh.state_vector(a), umebh.state_vector(b))
    assert overlap == pytest.approx(np.trace(a.conj().T @ b) / 3, abs=1e-12)


def test_complete_last_row():
    h = umebh.complete_last_row(umebh.fourier(4)[:3])
    assert h.shape == (4, 4)
    np.testing.assert_allclose(h @ h.conj().T, 4 * np.eye(4), atol=1e-9)


def test_find_unimodular_in_span():
    out = umebh.find_unimodular_in_span(umebh.fourier(5)[:4], starts=20)
    assert out["found"]
    np.testing.assert_allclose(np.abs(out["vector"]), 1.0, atol=1e-7)


def test_example5_is_certified():
    r = umebh.verify_unextendible_special(umebh.example5_b(), starts=100)
    assert r["verdict"] == "UMEB-certified"


def test_classify_dimension():
    assert umebh.classify_dimension(12).status == "Exists"
    assert umebh.classify_dimension(12).route == "divisible-by-4"
    assert umebh.classify_dimension(22).status == "Unknown"


def test_lift_deficiency():
    assert umebh.lift_count(5, 23, 21, "lemma")[1] == 2
    assert umebh.lift_count(5, 23, 21, "discussion")[1] == 42


def test_run_cli_generate_and_classify():
    code, out, _ = umebh.run_cli(["generate", "umeb", "--d", "5"])
    assert code == 0
    assert json.loads(out)["kind"] == "unitary_set"
    code, out, _ = umebh.run_cli(["classify", "105"])
    assert code == 0
    assert json.loads(out)["pass"]


def test_run_cli_usage_error():
    code, _, _ = umebh.run_cli(["generate", "no-such-family"])
    assert code == 2
