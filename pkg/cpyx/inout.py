# -*- coding: utf-8 -*-
"""
Input/output utilities: point clouds, polynomials, node sets, scalar fields
and basis tables as CSV (pandas) or JSON.

JSON results are written with sorted keys; non-finite floats are written as
the strings "inf", "-inf" and "nan", complex numbers as [re, im].
"""

import json
from dataclasses import asdict, is_dataclass
from pathlib import Path

import numpy as np
import pandas as pd

from cpyx.cpoly import CPolynomial
from cpyx.lattice import MultiIndex

POINT_COLUMNS = ["re1", "im1", "re2", "im2"]
CSV_FLOAT_FORMAT = "%.17g"

#%% JSON


def sanitize(obj):
    """
    Recursively converts obj into plain JSON types.
    Objects exposing to_dict() are converted through it.
    """
    if hasattr(obj, "to_dict") and not isinstance(obj, (pd.DataFrame, pd.Series)):
        return sanitize(obj.to_dict())
    if isinstance(obj, MultiIndex):
        return [obj.j, obj.k]
    if is_dataclass(obj) and not isinstance(obj, type):
        return sanitize(asdict(obj))
    if isinstance(obj, pd.DataFrame):
        return sanitize(obj.to_dict(orient="list"))
    if isinstance(obj, dict):
        return {str(k): sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [sanitize(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [sanitize(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [sanitize(float(obj.real)), sanitize(float(obj.imag))]
    if isinstance(obj, (float, np.floating)):
        obj = float(obj)
        if np.isnan(obj):
            return "nan"
        if np.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return obj
    if isinstance(obj, Path):
        return str(obj)
    return obj


def write_json(path, obj):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        json.dump(sanitize(obj), f, sort_keys=True, indent=2, ensure_ascii=False)
        f.write("\n")
    return path


def read_json(path):
    with open(path) as f:
        return json.load(f)


def write_frame(path, df):
    "CSV export with round-trip float precision."
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT)
    return path


#%% Point clouds


def points_frame(points, weights=None):
    points = np.asarray(points, dtype=np.complex128)
    df = pd.DataFrame({"re1": points[:, 0].real, "im1": points[:, 0].imag,
                       "re2": points[:, 1].real, "im2": points[:, 1].imag})
    if weights is not None:
        df["weight"] = np.asarray(weights, dtype=np.float64)
    return df


def write_point_cloud(path, points, weights=None):
    """
    Writes points (and optional weights) as CSV (re1,im1,re2,im2[,weight])
    or JSON ({"points": [[re1,im1,re2,im2],...], "weights": [...]}), by file suffix.
    """
    path = Path(path)
    if path.suffix == ".json":
        df = points_frame(points)
        obj = {"points": df[POINT_COLUMNS].values.tolist()}
        if weights is not None:
            obj["weights"] = np.asarray(weights, dtype=np.float64).tolist()
        return write_json(path, obj)
    return write_frame(path, points_frame(points, weights))


def read_point_cloud(path):
    """
    Reads a point cloud written by write_point_cloud.

    Returns:
    - points: (M, 2) complex array
    - weights: (M,) float array or None
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Point cloud file {path} does not exist.")
    if path.suffix == ".json":
        obj = read_json(path)
        if "points" not in obj:
            raise ValueError(f"{path} has no 'points' entry.")
        arr = np.asarray(obj["points"], dtype=np.float64)
        weights = obj.get("weights")
    else:
        df = pd.read_csv(path, float_precision="round_trip")
        missing = [c for c in POINT_COLUMNS if c not in df.columns]
        if missing:
            raise ValueError(f"{path} lacks the column(s) {missing}.")
        arr = df[POINT_COLUMNS].values.astype(np.float64)
        weights = df["weight"].values if "weight" in df.columns else None
    if arr.ndim != 2 or arr.shape[1] != 4:
        raise ValueError(f"{path}: points must have 4 real coordinates each.")
    points = np.stack([arr[:, 0] + 1j * arr[:, 1], arr[:, 2] + 1j * arr[:, 3]], axis=1)
    weights = None if weights is None else np.asarray(weights, dtype=np.float64)
    return points, weights


#%% Polynomials, bases and node sets


def write_polynomial(path, p):
    return write_json(path, p.to_dict())


def read_polynomial(path):
    return CPolynomial.from_dict(read_json(path))


def basis_frame(basis):
    "index, j, k, deg_c of a MultiIndexBasis."
    return pd.DataFrame({"index": np.arange(basis.N_n), "j": basis.J, "k": basis.K, "deg_c": basis.degrees})


def basis_summary(basis):
    return {"a": basis.body.a, "b": basis.body.b, "n": basis.n, "N_n": basis.N_n, "l_n": basis.l_n}


def node_set_dict(nodes):
    df = nodes.to_frame()
    return {"kind": nodes.kind, "count": len(nodes), "log_vdm": nodes.log_vdm,
            "monomials": [[al.j, al.k] for al in nodes.monomials],
            "nodes": df.to_dict(orient="records")}
