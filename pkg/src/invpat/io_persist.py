"""Data ingestion and model persistence.

CSV loading handles comma- or whitespace-separated numeric tables with an
optional header row. Feature normalization min-max scales each feature
column to a common integer range [0, X), recording the training bounds in
the schema so test-time rows reuse (and clamp to) them.

Model files are a small binary envelope around a canonical JSON payload:
magic, little-endian version and payload length, payload, CRC32 trailer.
Saving the same object twice yields identical bytes; truncation, bit
corruption and unknown future versions are all detected before any model
state is built.
"""

from __future__ import annotations

import json
import struct
import warnings
import zlib
from collections import Counter
from dataclasses import dataclass, field

from .errors import DataError, FormatError
from .index import CategoricalModel, Model
from .levels import Level, LabelTable, LevelStack
from .predictor import ParamIndex

ROLE_FEATURE = "feature"
ROLE_PARAMETER = "parameter-t"
ROLE_ID = "id"
ROLE_IGNORE = "ignore"
_ROLES = (ROLE_FEATURE, ROLE_PARAMETER, ROLE_ID, ROLE_IGNORE)


# -- schema -------------------------------------------------------------------


@dataclass
class ColumnSpec:
    name: str
    role: str
    min: float | None = None
    max: float | None = None

    def __post_init__(self):
        if self.role not in _ROLES:
            raise DataError(f"unknown column role {self.role!r}")


@dataclass
class ColumnSchema:
    columns: list[ColumnSpec] = field(default_factory=list)

    def __post_init__(self):
        if not self.feature_indices():
            raise DataError("schema needs at least one feature column")
        if len([c for c in self.columns if c.role == ROLE_PARAMETER]) > 1:
            raise DataError("at most one parameter-t column")

    def feature_indices(self) -> list[int]:
        return [i for i, c in enumerate(self.columns) if c.role == ROLE_FEATURE]

    def parameter_index(self) -> int | None:
        for i, c in enumerate(self.columns):
            if c.role == ROLE_PARAMETER:
                return i
        return None

    def id_index(self) -> int | None:
        for i, c in enumerate(self.columns):
            if c.role == ROLE_ID:
                return i
        return None

    def to_dict(self) -> dict:
        return {"columns": [{"name": c.name, "role": c.role, "min": c.min, "max": c.max}
                            for c in self.columns]}

    @classmethod
    def from_dict(cls, d: dict) -> "ColumnSchema":
        return cls([ColumnSpec(c["name"], c["role"], c.get("min"), c.get("max"))
                    for c in d["columns"]])


def load_schema(path) -> ColumnSchema:
    with open(path) as fh:
        return ColumnSchema.from_dict(json.load(fh))


def save_schema(schema: ColumnSchema, path) -> None:
    with open(path, "w") as fh:
        json.dump(schema.to_dict(), fh, indent=2, sort_keys=True)


def uniform_schema(n_columns: int) -> ColumnSchema:
    """All-feature schema for plain feature tables."""
    return ColumnSchema([ColumnSpec(f"f{i}", ROLE_FEATURE) for i in range(n_columns)])


# -- CSV / whitespace tables ----------------------------------------------------


def load_csv(path) -> list[tuple[float, ...]]:
    """Numeric rows from a comma- or whitespace-separated file.

    The delimiter is sniffed from the first data line; a first row with
    any non-numeric token is treated as a header and skipped.
    """
    rows: list[tuple[float, ...]] = []
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    for lineno, line in enumerate(lines, start=1):
        parts = line.split(",") if "," in line else line.split()
        try:
            rows.append(tuple(float(p) for p in parts))
        except ValueError as exc:
            if lineno == 1:
                continue  # header row
            raise DataError(f"{path}: non-numeric cell on line {lineno}: {exc}") from exc
    if not rows:
        raise DataError(f"{path}: no data rows")
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise DataError(f"{path}: ragged rows (widths {sorted(widths)})")
    return rows


# -- normalization ----------------------------------------------------------------


def normalize_columns(rows, schema: ColumnSchema, X: int) -> list[tuple[int, ...]]:
    """Feature vectors scaled to integers in [0, X).

    v = floor((raw - min) / (max - min) * X), clamped to [0, X - 1].
    Bounds absent from the schema are computed from ``rows`` and recorded
    there for test-time reuse; a constant column maps to 0 with a warning.
    """
    rows = list(rows)
    if not rows:
        return []
    feat = schema.feature_indices()
    for i in feat:
        col = schema.columns[i]
        if col.min is None or col.max is None:
            values = [r[i] for r in rows]
            col.min, col.max = min(values), max(values)
        if col.min == col.max:
            warnings.warn(f"column {col.name!r} is constant; emitting 0")
    out = []
    for r in rows:
        vec = []
        for i in feat:
            col = schema.columns[i]
            if col.min == col.max:
                vec.append(0)
                continue
            v = int((r[i] - col.min) / (col.max - col.min) * X)
            vec.append(min(max(v, 0), X - 1))
        out.append(tuple(vec))
    return out


def extract_parameter(rows, schema: ColumnSchema) -> list[int]:
    """The parameter-t column as integers."""
    i = schema.parameter_index()
    if i is None:
        raise DataError("schema has no parameter-t column")
    return [int(r[i]) for r in rows]


# -- histogram export --------------------------------------------------------------


def save_histogram(counts: dict[int, int], path) -> None:
    """Two-column text (id/t, count), sorted by id."""
    with open(path, "w") as fh:
        for key in sorted(counts):
            fh.write(f"{key} {counts[key]}\n")


# -- model files -----------------------------------------------------------------


MAGIC = b"IPAT"
FORMAT_VERSION = 1
_HEADER = struct.Struct("<4sHQ")
_TRAILER = struct.Struct("<I")


def _payload(obj, schema: ColumnSchema | None) -> dict:
    if isinstance(obj, Model):
        body = {"kind": "numeric", "K": obj.K, "X": obj.X, "R": obj.R,
                "prototypes": [list(p) for p in obj.prototypes]}
        labels = getattr(obj, "labels", None)
        if labels is not None:
            body["labels"] = {str(k): v for k, v in labels.labels().items()}
    elif isinstance(obj, CategoricalModel):
        body = {"kind": "categorical", "K": obj.K,
                "threshold": obj.recognition_threshold, "grow": obj.grow,
                "stored": [sorted(s) for s in obj.stored]}
    elif isinstance(obj, ParamIndex):
        body = {"kind": "param_index", "K": obj.K, "X": obj.X, "rows": obj.rows,
                "tables": [sorted((v, sorted(t.items())) for v, t in table.items())
                           for table in obj.tables()]}
    elif isinstance(obj, LevelStack):
        body = {"kind": "stack",
                "levels": [{"model": _payload(lvl.model, None),
                            "threshold": lvl.threshold,
                            "labels": None if lvl.labels is None
                            else {str(k): v for k, v in lvl.labels.labels().items()}}
                           for lvl in obj.levels]}
    else:
        raise FormatError(f"cannot serialize object of type {type(obj).__name__}")
    if schema is not None:
        body["schema"] = schema.to_dict()
    return body


def _restore(body: dict):
    kind = body.get("kind")
    if kind == "numeric":
        m = Model(body["K"], body["X"], body["R"])
        for proto in body["prototypes"]:
            m.insert_class(proto)
        if "labels" in body:
            m.labels = LabelTable({int(k): v for k, v in body["labels"].items()})
        obj = m
    elif kind == "categorical":
        m = CategoricalModel(body["K"], body["threshold"], grow=body["grow"])
        for stored in body["stored"]:
            m.N += 1
            pattern = frozenset(stored)
            for k in sorted(pattern):
                m.postings.setdefault(k, []).append(m.N)
            m.stored.append(pattern)
        obj = m
    elif kind == "param_index":
        idx = ParamIndex(body["K"], body["X"])
        for k, table in enumerate(body["tables"]):
            for v, pairs in table:
                counter = idx._tables[k].setdefault(int(v), Counter())
                for t, c in pairs:
                    counter[int(t)] += int(c)
                    idx.t_min = t if idx.t_min is None else min(idx.t_min, t)
                    idx.t_max = t if idx.t_max is None else max(idx.t_max, t)
        idx.rows = body["rows"]
        idx.freeze()
        obj = idx
    elif kind == "stack":
        levels = []
        for lvl in body["levels"]:
            labels = None if lvl["labels"] is None else LabelTable(
                {int(k): v for k, v in lvl["labels"].items()})
            levels.append(Level(_restore(lvl["model"]), lvl["threshold"], labels))
        obj = LevelStack(levels)
    else:
        raise FormatError(f"unknown payload kind {kind!r}")
    if "schema" in body:
        obj.schema = ColumnSchema.from_dict(body["schema"])
    return obj


def save_model(obj, path, schema: ColumnSchema | None = None) -> None:
    payload = json.dumps(_payload(obj, schema), sort_keys=True,
                         separators=(",", ":")).encode()
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, FORMAT_VERSION, len(payload)))
        fh.write(payload)
        fh.write(_TRAILER.pack(zlib.crc32(payload)))


def load_model(path):
    with open(path, "rb") as fh:
        data = fh.read()
    if len(data) < _HEADER.size + _TRAILER.size:
        raise FormatError(f"{path}: file too short ({len(data)} bytes)")
    magic, version, length = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise FormatError(f"{path}: bad magic {magic!r}")
    if version > FORMAT_VERSION:
        raise FormatError(f"{path}: format version {version} is newer than "
                          f"supported {FORMAT_VERSION}")
    payload = data[_HEADER.size:_HEADER.size + length]
    if len(payload) < length:
        raise FormatError(f"{path}: truncated payload "
                          f"({len(payload)} of {length} bytes)")
    (crc,) = _TRAILER.unpack_from(data, _HEADER.size + length)
    if zlib.crc32(payload) != crc:
        raise FormatError(f"{path}: checksum mismatch, file is corrupted")
    try:
        body = json.loads(payload)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: undecodable payload: {exc}") from exc
    return _restore(body)
