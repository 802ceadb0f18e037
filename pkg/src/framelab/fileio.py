"""Frame files and reports: canonical JSON in, canonical JSON out.

A frame file records the field, the dimension, one atom record per frame
vector (weight, coordinates, optional label) and an optional provenance
block.  Complex coordinates are stored as ``[re, im]`` pairs.  Serialization
uses two-space indentation and shortest round-trip decimals, so parsing a
file and writing it back is byte-identical; reports built from fixed seeds
come out byte-identical the same way.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any

import numpy as np

from .frames import Frame
from .measure import make_atomic
from .retrieval import Certificate

__all__ = [
    "frame_to_doc",
    "doc_to_frame",
    "save_frame",
    "load_frame",
    "load_provenance",
    "dumps_canonical",
    "file_digest",
    "vector_to_json",
    "certificate_to_dict",
    "build_report",
]


def vector_to_json(v: np.ndarray) -> list:
    """Real vectors as float lists, complex vectors as [re, im] pair lists."""
    if np.iscomplexobj(v):
        return [[float(z.real), float(z.imag)] for z in v]
    return [float(x) for x in v]


def _vector_from_json(entry: list, field: str, dim: int, where: str) -> np.ndarray:
    if len(entry) != dim:
        raise ValueError(f"{where}: expected {dim} coordinates, got {len(entry)}")
    if field == "complex":
        try:
            return np.array([complex(re, im) for re, im in entry], dtype=complex)
        except (TypeError, ValueError) as exc:
            raise ValueError(f"{where}: complex coordinates must be [re, im] pairs") from exc
    try:
        return np.array([float(x) for x in entry], dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"{where}: real coordinates must be numbers") from exc


def frame_to_doc(frame: Frame, provenance: dict | None = None) -> dict:
    atoms = []
    for atom, row in zip(frame.space.atoms, frame.vectors):
        entry: dict[str, Any] = {"weight": atom.weight, "vector": vector_to_json(row)}
        if atom.label is not None:
            entry["label"] = atom.label
        atoms.append(entry)
    doc: dict[str, Any] = {"field": frame.field, "dim": frame.dim, "atoms": atoms}
    if provenance is not None:
        doc["provenance"] = provenance
    return doc


def doc_to_frame(doc: dict) -> Frame:
    if not isinstance(doc, dict):
        raise ValueError("frame document must be a JSON object")
    field = doc.get("field")
    if field not in ("real", "complex"):
        raise ValueError(f"field must be 'real' or 'complex', got {field!r}")
    dim = doc.get("dim")
    if not isinstance(dim, int) or dim < 1:
        raise ValueError(f"dim must be a positive integer, got {dim!r}")
    atoms = doc.get("atoms")
    if not isinstance(atoms, list) or not atoms:
        raise ValueError("atoms must be a non-empty list")
    weights: list[float] = []
    labels: list[str | None] = []
    rows: list[np.ndarray] = []
    for k, entry in enumerate(atoms):
        if not isinstance(entry, dict) or "weight" not in entry or "vector" not in entry:
            raise ValueError(f"atom {k}: each atom needs 'weight' and 'vector'")
        weights.append(float(entry["weight"]))
        labels.append(entry.get("label"))
        rows.append(_vector_from_json(entry["vector"], field, dim, f"atom {k}"))
    space = make_atomic(weights, labels)
    vectors = np.vstack(rows)
    if field == "complex":
        vectors = vectors.astype(complex)
    return Frame(space, vectors)


def dumps_canonical(obj: Any) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def save_frame(path: str | Path, frame: Frame, provenance: dict | None = None) -> None:
    Path(path).write_text(dumps_canonical(frame_to_doc(frame, provenance)), encoding="utf-8")


def load_frame(path: str | Path) -> Frame:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: not valid JSON: {exc}") from exc
    return doc_to_frame(doc)


def load_provenance(path: str | Path) -> dict | None:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    if isinstance(doc, dict):
        return doc.get("provenance")
    return None


def file_digest(path: str | Path) -> str:
    return "sha256:" + hashlib.sha256(Path(path).read_bytes()).hexdigest()


def certificate_to_dict(cert: Certificate) -> dict:
    wv = None
    if cert.witness_vectors is not None:
        wv = [vector_to_json(np.asarray(v)) for v in cert.witness_vectors]
    return {
        "verdict": cert.verdict,
        "method": cert.method,
        "field": cert.field,
        "witness_subset": None if cert.witness_subset is None else list(cert.witness_subset),
        "witness_vectors": wv,
        "alpha_estimate": cert.alpha_estimate,
    }


def build_report(
    command: str,
    input_digests: dict[str, str],
    tolerances: dict[str, float],
    data: dict,
    certificates: list[dict],
    timings_ms: dict[str, float] | None = None,
) -> dict:
    """Assemble the report emitted on stdout by every CLI command.

    Timings are attached only when measured; they are the one
    non-deterministic field, so default runs leave them out and fixed-seed
    pipelines reproduce byte-identical reports.
    """
    report: dict[str, Any] = {
        "command": command,
        "input_digests": input_digests,
        "tolerances": tolerances,
        "data": data,
        "certificates": certificates,
    }
    if timings_ms is not None:
        report["timings_ms"] = {k: round(v, 3) for k, v in timings_ms.items()}
    return report
