"""File formats: tagged point CSV, bare matrix CSV, JSON reports."""

import json

import numpy as np
import pytest

import kernel_forge as kf
from kernel_forge import fileio


def test_points_roundtrip_real(tmp_path):
    p = tmp_path / "pts.csv"
    sample = kf.SampleSet(points=[0.5, 1.25, 3.0], domain="real-line")
    fileio.write_points(str(p), sample)
    back = fileio.read_points(str(p))
    assert back.domain == "real-line"
    assert back.points == [0.5, 1.25, 3.0]


def test_points_roundtrip_disk(tmp_path):
    p = tmp_path / "pts.csv"
    sample = kf.SampleSet(points=[0.1 + 0.2j, -0.3j], domain="complex-disk")
    fileio.write_points(str(p), sample)
    back = fileio.read_points(str(p))
    assert back.points == [0.1 + 0.2j, -0.3j]


def test_points_roundtrip_interval_set(tmp_path):
    p = tmp_path / "sets.csv"
    a = kf.IntervalSet(((0.0, 0.25), (0.5, 0.75)))
    fileio.write_points(str(p), kf.SampleSet(points=[a], domain="interval-set"))
    back = fileio.read_points(str(p))
    assert back.points[0].intervals == a.intervals


def test_points_roundtrip_complex_vectors(tmp_path):
    p = tmp_path / "vecs.csv"
    pts = [np.array([0.1 + 0.2j, 0.3]), np.array([0.0, -0.25j])]
    fileio.write_points(str(p), kf.SampleSet(points=pts, domain="complex-vector(2)"))
    back = fileio.read_points(str(p))
    np.testing.assert_array_equal(back.points[0], pts[0])
    np.testing.assert_array_equal(back.points[1], pts[1])


def test_points_unknown_tag(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("klein-bottle\n1.0\n")
    with pytest.raises(ValueError):
        fileio.read_points(str(p))


def test_matrix_roundtrip_real(tmp_path):
    p = tmp_path / "m.csv"
    m = np.array([[1.0, 0.5], [0.5, 2.0]])
    fileio.write_matrix(str(p), m)
    np.testing.assert_array_equal(fileio.read_matrix(str(p)), m)


def test_matrix_roundtrip_complex(tmp_path):
    p = tmp_path / "m.csv"
    m = np.array([[1.0 + 0j, 0.5 - 0.25j], [0.5 + 0.25j, 2.0 + 0j]])
    fileio.write_matrix(str(p), m)
    np.testing.assert_array_equal(fileio.read_matrix(str(p)), m)


def test_matrix_text_is_headerless():
    text = fileio.format_matrix(np.eye(2))
    assert text == "1.0,0.0\n0.0,1.0\n"


def test_values_roundtrip(tmp_path):
    p = tmp_path / "v.csv"
    p.write_text("1.5\n-0.25\n")
    np.testing.assert_array_equal(fileio.read_values(str(p)), [1.5, -0.25])
    p.write_text("1.0,2.0\n0.0,-1.0\n")
    np.testing.assert_array_equal(fileio.read_values(str(p)), [1 + 2j, -1j])


def test_chain_file(tmp_path):
    p = tmp_path / "c.csv"
    p.write_text("# comment\n1.0\n1.0,2.0\n1.0,2.0,3.0\n")
    assert fileio.read_chain(str(p)) == [[1.0], [1.0, 2.0], [1.0, 2.0, 3.0]]


def test_render_report_shape():
    text = fileio.render_report("demo", {"alpha": 1}, {"value": 0.5 + 0.25j}, seed=3)
    doc = json.loads(text)
    assert doc["schema"] == "kernel-forge/1"
    assert doc["command"] == "demo"
    assert doc["seed"] == 3
    assert doc["value"] == [0.5, 0.25]
    # keys are sorted so reruns are byte-identical
    assert text == fileio.render_report("demo", {"alpha": 1}, {"value": 0.5 + 0.25j}, seed=3)


def test_json_value_handles_numpy():
    out = fileio.json_value({"a": np.float64(1.5), "b": np.arange(3), "c": np.int64(2)})
    assert out == {"a": 1.5, "b": [0, 1, 2], "c": 2}
