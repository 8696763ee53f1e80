# -*- coding: utf-8 -*-
import json

import numpy as np
import pandas as pd
import pytest

from cpyx.cpoly import CPolynomial
from cpyx.inout import (basis_frame, basis_summary, node_set_dict, points_frame, read_json, read_point_cloud,
                        read_polynomial, sanitize, write_frame, write_json, write_point_cloud, write_polynomial)
from cpyx.lattice import MultiIndex, TriangleBody, enumerate_basis
from cpyx.nodes import leja_sequence


def test_sanitize():
    obj = {"x": np.inf, "y": [-np.inf, np.nan, 1.5], "z": 1 + 2j, 3: np.int64(4), "flag": np.bool_(True)}
    out = sanitize(obj)
    assert out == {"x": "inf", "y": ["-inf", "nan", 1.5], "z": [1.0, 2.0], "3": 4, "flag": True}
    assert sanitize(MultiIndex(2, 5)) == [2, 5]
    assert sanitize(np.array([[1.0, 2.0]])) == [[1.0, 2.0]]
    assert sanitize(pd.DataFrame({"a": [1, 2]})) == {"a": [1, 2]}
    json.dumps(sanitize(TriangleBody(2, 3)))


def test_write_json_sorted(tmp_path):
    path = write_json(tmp_path / "sub" / "out.json", {"b": 1, "a": np.float64(-np.inf)})
    text = path.read_text()
    assert text.index('"a"') < text.index('"b"')
    assert read_json(path) == {"a": "-inf", "b": 1}


def test_write_frame_precision(tmp_path):
    x = 0.1 + 0.2
    path = write_frame(tmp_path / "f.csv", pd.DataFrame({"x": [x]}))
    assert pd.read_csv(path, float_precision="round_trip")["x"].iloc[0] == x


@pytest.mark.parametrize("suffix", [".csv", ".json"])
def test_point_cloud_files(tmp_path, suffix):
    points = np.array([[1 + 0.5j, -2j], [0.25, 3 - 1j], [1j, 1]])
    weights = np.array([0.2, 0.3, 0.5])
    path = tmp_path / f"cloud{suffix}"
    write_point_cloud(path, points, weights)
    read, w = read_point_cloud(path)
    assert np.array_equal(read, points)
    assert np.array_equal(w, weights)

    write_point_cloud(path, points)
    read, w = read_point_cloud(path)
    assert np.array_equal(read, points) and w is None


def test_point_cloud_errors(tmp_path):
    with pytest.raises(FileNotFoundError):
        read_point_cloud(tmp_path / "missing.csv")
    bad = tmp_path / "bad.csv"
    pd.DataFrame({"re1": [1.0], "im1": [0.0]}).to_csv(bad, index=False)
    with pytest.raises(ValueError):
        read_point_cloud(bad)
    bad = tmp_path / "bad.json"
    bad.write_text('{"pts": []}')
    with pytest.raises(ValueError):
        read_point_cloud(bad)
    bad.write_text('{"points": [[1, 0, 1]]}')
    with pytest.raises(ValueError):
        read_point_cloud(bad)


def test_points_frame():
    df = points_frame(np.array([[1 + 2j, 3 + 4j]]), [0.5])
    assert list(df.columns) == ["re1", "im1", "re2", "im2", "weight"]
    assert df.iloc[0].tolist() == [1.0, 2.0, 3.0, 4.0, 0.5]


def test_polynomial_file(tmp_path):
    body = TriangleBody(2, 3)
    p = CPolynomial(body, {(3, 0): 1, (0, 2): -2.5j, (1, 1): 0.75})
    path = write_polynomial(tmp_path / "p.json", p)
    assert read_polynomial(path) == p
    d = read_json(path)
    assert (d["a"], d["b"]) == (2, 3) and len(d["terms"]) == 3


def test_basis_frame():
    basis = enumerate_basis(TriangleBody(1, 1), 2)
    df = basis_frame(basis)
    assert len(df) == 6
    assert list(df.columns) == ["index", "j", "k", "deg_c"]
    assert df["deg_c"].tolist() == [0, 1, 1, 2, 2, 2]
    assert df["index"].tolist() == list(range(6))
    assert basis_summary(basis) == {"a": 1, "b": 1, "n": 2, "N_n": 6, "l_n": basis.l_n}


def test_node_set_dict(body11, unit_torus):
    nodes = leja_sequence(body11, unit_torus, 3)
    d = node_set_dict(nodes)
    assert d["kind"] == "leja" and d["count"] == 3
    assert d["monomials"] == [[0, 0], [1, 0], [0, 1]]
    assert len(d["nodes"]) == 3 and d["nodes"][0]["order"] == 0
    assert np.isclose(d["log_vdm"], nodes.recompute_log_vdm())
    json.dumps(sanitize(d))
