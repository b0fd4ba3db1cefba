"""JSON serialization of point records.

Datasets are a single JSON document: {"version": "1", "records": [...]}.
Every tensor is stored as {"shape": [...], "data": <nested arrays>} with
each number written as a decimal string of 17 significant digits, which
round-trips binary64 values bit-exactly.
"""
from __future__ import annotations

import json

import numpy as np

from .compat import PointRecord
from .linalg import BilinearForm, CurvatureTensor, Metric, OperatorBlock
from .modelspaces import ComplexSpaceFormParams, ProductSpaceParams
from .structures import ComplexMetallicParams, MetallicParams
from .submanifold import DerivativeData, InducedOperators

DATASET_VERSION = "1"

TARGET_PRODUCT = "product_space"
TARGET_CSF = "complex_space_form"


class DatasetFormatError(ValueError):
    """Raised when a document does not follow the dataset schema."""


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _encode_nested(arr: np.ndarray):
    if arr.ndim == 0:
        return _fmt(float(arr))
    return [_encode_nested(sub) for sub in arr]


def tensor_to_json(arr) -> dict:
    arr = np.asarray(arr, dtype=float)
    return {"shape": list(arr.shape), "data": _encode_nested(arr)}


def _decode_nested(data, shape, path):
    if len(shape) == 0:
        try:
            return float(data)
        except (TypeError, ValueError):
            raise DatasetFormatError(f"{path}: expected a number, got {data!r}") from None
    if not isinstance(data, list) or len(data) != shape[0]:
        raise DatasetFormatError(
            f"{path}: expected a list of length {shape[0]}, got "
            f"{len(data) if isinstance(data, list) else type(data).__name__}"
        )
    return [_decode_nested(sub, shape[1:], f"{path}[{i}]") for i, sub in enumerate(data)]


def tensor_from_json(obj, path: str = "tensor") -> np.ndarray:
    if not isinstance(obj, dict) or "shape" not in obj or "data" not in obj:
        raise DatasetFormatError(f"{path}: expected an object with 'shape' and 'data'")
    shape = obj["shape"]
    if not isinstance(shape, list) or not all(isinstance(s, int) and s >= 0 for s in shape):
        raise DatasetFormatError(f"{path}.shape: expected a list of nonnegative integers")
    values = _decode_nested(obj["data"], shape, f"{path}.data")
    return np.array(values, dtype=float).reshape(shape)


def _target_to_json(target) -> dict:
    if isinstance(target, ProductSpaceParams):
        return {
            "kind": TARGET_PRODUCT,
            "params": {
                "n1": target.n1,
                "n2": target.n2,
                "c1": _fmt(target.c1),
                "c2": _fmt(target.c2),
            },
        }
    if isinstance(target, ComplexSpaceFormParams):
        return {
            "kind": TARGET_CSF,
            "params": {"complex_dim": target.complex_dim, "c": _fmt(target.c)},
        }
    raise DatasetFormatError(f"unsupported target type {type(target).__name__}")


def _target_from_json(obj, path: str):
    if not isinstance(obj, dict) or "kind" not in obj or "params" not in obj:
        raise DatasetFormatError(f"{path}: expected an object with 'kind' and 'params'")
    kind, params = obj["kind"], obj["params"]
    try:
        if kind == TARGET_PRODUCT:
            return ProductSpaceParams(
                int(params["n1"]), int(params["n2"]), float(params["c1"]), float(params["c2"])
            )
        if kind == TARGET_CSF:
            return ComplexSpaceFormParams(int(params["complex_dim"]), float(params["c"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise DatasetFormatError(f"{path}.params: {exc}") from None
    raise DatasetFormatError(f"{path}.kind: unknown target kind {kind!r}")


def record_to_json(record: PointRecord) -> dict:
    ops, der = record.ops, record.der
    n, m = ops.dim_tangent, ops.dim_normal
    doc = {
        "target": _target_to_json(record.target),
        "frames": {"tangent_dim": n, "normal_dim": m},
        "g": tensor_to_json(ops.g.gram),
        "gE": tensor_to_json(ops.gE.gram),
        "P": tensor_to_json(ops.P.mat),
        "Q": tensor_to_json(ops.Q.mat),
        "R": tensor_to_json(ops.R.mat),
        "S": tensor_to_json(ops.S.mat),
        "B": tensor_to_json(der.B.coeffs),
        "nablaP": tensor_to_json(der.nablaP),
        "nablaQ": tensor_to_json(der.nablaQ),
        "nablaR": tensor_to_json(der.nablaR),
        "nablaS": tensor_to_json(der.nablaS),
        "nablaB": tensor_to_json(der.nablaB),
        "A": tensor_to_json(np.stack([a.mat for a in der.A]) if m else np.zeros((0, n, n))),
        "Rperp": tensor_to_json(der.RE),
        "R_tm": tensor_to_json(record.R_tm.as_standard().coeffs),
    }
    if ops.is_metallic:
        doc["metallic"] = {"p": _fmt(ops.params.p), "q": _fmt(ops.params.q)}
    else:
        doc["complex_metallic"] = {"a": _fmt(ops.params.a), "b": _fmt(ops.params.b)}
    return doc


def record_from_json(obj, path: str = "record") -> PointRecord:
    if not isinstance(obj, dict):
        raise DatasetFormatError(f"{path}: expected an object")
    frames = obj.get("frames")
    if not isinstance(frames, dict):
        raise DatasetFormatError(f"{path}.frames: missing frame dimensions")
    try:
        n = int(frames["tangent_dim"])
        m = int(frames["normal_dim"])
    except (KeyError, TypeError, ValueError):
        raise DatasetFormatError(f"{path}.frames: need integer tangent_dim/normal_dim") from None

    def tensor(name, shape):
        if name not in obj:
            raise DatasetFormatError(f"{path}.{name}: missing")
        arr = tensor_from_json(obj[name], f"{path}.{name}")
        if arr.shape != shape:
            raise DatasetFormatError(f"{path}.{name}: shape {list(arr.shape)} != {list(shape)}")
        return arr

    if "metallic" in obj:
        scal = obj["metallic"]
        try:
            params = MetallicParams(float(scal["p"]), float(scal["q"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise DatasetFormatError(f"{path}.metallic: {exc}") from None
    elif "complex_metallic" in obj:
        scal = obj["complex_metallic"]
        try:
            params = ComplexMetallicParams(float(scal["a"]), float(scal["b"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise DatasetFormatError(f"{path}.complex_metallic: {exc}") from None
    else:
        raise DatasetFormatError(f"{path}: need 'metallic' or 'complex_metallic' scalars")

    try:
        g = Metric(tensor("g", (n, n)))
        gE = Metric(tensor("gE", (m, m)))
        ops = InducedOperators(
            P=OperatorBlock.square(tensor("P", (n, n)), g),
            Q=OperatorBlock(tensor("Q", (m, n)), g, gE),
            R=OperatorBlock(tensor("R", (n, m)), gE, g),
            S=OperatorBlock.square(tensor("S", (m, m)), gE),
            params=params,
        )
        A = tensor("A", (m, n, n))
        der = DerivativeData(
            nablaP=tensor("nablaP", (n, n, n)),
            nablaQ=tensor("nablaQ", (n, n, m)),
            nablaR=tensor("nablaR", (n, m, n)),
            nablaS=tensor("nablaS", (n, m, m)),
            B=BilinearForm(tensor("B", (n, n, m))),
            nablaB=tensor("nablaB", (n, n, n, m)),
            A=tuple(OperatorBlock.square(A[a], g) for a in range(m)),
            RE=tensor("Rperp", (n, n, m, m)),
        )
        R_tm = CurvatureTensor(tensor("R_tm", (n, n, n, n)))
        target = _target_from_json(obj.get("target"), f"{path}.target")
        return PointRecord(ops=ops, der=der, R_tm=R_tm, target=target)
    except DatasetFormatError:
        raise
    except ValueError as exc:
        raise DatasetFormatError(f"{path}: {exc}") from None


def dataset_dumps(records) -> str:
    doc = {"version": DATASET_VERSION, "records": [record_to_json(r) for r in records]}
    return json.dumps(doc, indent=2)


def dataset_loads(text: str) -> list:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DatasetFormatError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise DatasetFormatError("top level: expected an object")
    if doc.get("version") != DATASET_VERSION:
        raise DatasetFormatError(
            f"version: expected {DATASET_VERSION!r}, got {doc.get('version')!r}"
        )
    records = doc.get("records")
    if not isinstance(records, list):
        raise DatasetFormatError("records: expected a list")
    return [record_from_json(r, f"records[{i}]") for i, r in enumerate(records)]


def save_dataset(path, records) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dataset_dumps(records))
        fh.write("\n")


def load_dataset(path) -> list:
    with open(path, encoding="utf-8") as fh:
        return dataset_loads(fh.read())
