"""End-to-end smoke tests for the python bindings."""

import json
import math

import pytest

import gbvlab


def test_family_registry():
    names = gbvlab.family_names()
    assert "power_cosine" in names
    fam = gbvlab.parse_family("power_cosine(2)")
    assert fam.label == "power_cosine(2)"
    assert fam.series.coeff(3) == pytest.approx(1.0 / 18.0)
    assert fam.series.coeff(-3) == pytest.approx(1.0 / 18.0)
    with pytest.raises(gbvlab.InputError):
        gbvlab.parse_family("no_such_family(1)")


def test_class_membership():
    fam = gbvlab.parse_family("power_cosine(2)")
    rep = gbvlab.gbv_check(fam.classify, 1, gbvlab.IndexRange(1, 512))
    assert rep.holds()
    assert rep.constant is not None and rep.constant < 1.0

    lac = gbvlab.parse_family("lacunary_sine(2)")
    n0, rep = gbvlab.find_min_N0(lac.classify, 8, gbvlab.IndexRange(1, 4096))
    assert n0 is None
    assert rep.verdict == gbvlab.Verdict.fails
    assert rep.witness is not None


def test_python_defined_sequence():
    decay = gbvlab.TailDecay.power(3.0, 1.0)
    seq = gbvlab.make_real_seq(
        lambda n: n**-3.0 if n >= 1 else 0.0, "k^-3", decay
    )
    assert gbvlab.belov_sine_proxy(seq, 2) == pytest.approx(1.0 / 27.0)
    assert gbvlab.q_proxy(
        gbvlab.parse_family("power_cosine(2)").series, 4
    ).q == pytest.approx(0.180012, rel=1.5e-3)


def test_eval_and_minimax():
    fam = gbvlab.parse_family("power_cosine(2)")
    h = gbvlab.SeriesHandle(fam.series, tail_tolerance=1e-6)
    assert gbvlab.eval(h, 0.0).real == pytest.approx(
        math.pi**2 / 6.0, abs=3e-6
    )
    r = gbvlab.minimax_en(h, 4)
    assert r.cert.real_path and r.cert.converged
    assert r.cert.alternations >= 10
    assert gbvlab.best_lower_bound(fam.series, 4, 16) <= r.value + 1e-7


def test_certificate_refusal():
    bare = gbvlab.make_real_seq(lambda n: 1.0 / n if n >= 1 else 0.0, "1/n")
    h = gbvlab.SeriesHandle(bare)
    with pytest.raises(gbvlab.CertificateError):
        gbvlab.eval(h, 0.5)


def test_experiment_json_roundtrip():
    cfg = {
        "family": "power_sine(2)",
        "degrees": [4, 8],
        "checks": ["classes", "q_proxy", "minimax", "dual_bound"],
    }
    rep = json.loads(gbvlab.run_experiment_json(json.dumps(cfg)))
    assert rep["ok"] is True
    assert [row["n"] for row in rep["rows"]] == [4, 8]

    csv = gbvlab.run_experiment_csv(json.dumps(cfg))
    header = csv.splitlines()[0]
    assert header.startswith("family,n,class_verdict,gbv_M,gbv_N0")

    with pytest.raises(gbvlab.InputError):
        gbvlab.run_experiment_json(json.dumps({"family": "power_sine(2)"}))


def test_suite_json():
    rep = json.loads(
        gbvlab.run_suite_json(["power_cosine(2)", "lacunary_sine(2)"], [4])
    )
    assert rep["ok"] is True
    assert "lacunary_sine(2)" in rep["skipped"]
    assert len(rep["rows"]) == 1
