"""Record ingestion and serialisation for the command-line surface.

CSV is the primary interchange; JSON mirrors the same field names.  Two cell
schemas are accepted, detected from the CSV header (or the keys of each JSON
object):

    id,a,b,c,alpha,beta,gamma          unit-cell parameters (degrees)
    id,b11,b12,b13,b21,b22,b23,b31,b32,b33   explicit basis, row-major

Root forms travel as ``id,r23,r13,r12,r01,r02,r03,sign,oriented``.
"""

import csv
import io
import json
from dataclasses import dataclass

import numpy as np

from .errors import LatticeError, RecordError
from .forms import RootForm
from .geometry import Basis, UnitCell, unit_cell_to_basis

CELL_FIELDS = ("a", "b", "c", "alpha", "beta", "gamma")
BASIS_FIELDS = tuple(f"b{r}{c}" for r in (1, 2, 3) for c in (1, 2, 3))
ROOT_FIELDS = ("r23", "r13", "r12", "r01", "r02", "r03")


@dataclass(frozen=True)
class LatticeRecord:
    """One named lattice, sourced from a unit cell or an explicit basis."""

    id: str
    cell: UnitCell = None
    basis: Basis = None

    def __post_init__(self):
        if (self.cell is None) == (self.basis is None):
            raise RecordError(
                f"record {self.id!r}: exactly one of cell/basis must be set"
            )

    def to_basis(self):
        return self.basis if self.basis is not None else unit_cell_to_basis(self.cell)


def _floats(raw, names, where):
    out = []
    for name in names:
        try:
            out.append(float(raw[name]))
        except (KeyError, TypeError, ValueError):
            raise RecordError(f"{where}: field {name!r} is not a number") from None
    return out


def _record_from_mapping(raw, where):
    rec_id = str(raw.get("id", "")).strip()
    if not rec_id:
        raise RecordError(f"{where}: missing id")
    keys = set(raw)
    try:
        if set(CELL_FIELDS) <= keys:
            vals = _floats(raw, CELL_FIELDS, where)
            return LatticeRecord(id=rec_id, cell=UnitCell(*vals))
        if set(BASIS_FIELDS) <= keys:
            vals = _floats(raw, BASIS_FIELDS, where)
            return LatticeRecord(id=rec_id, basis=Basis(np.array(vals).reshape(3, 3)))
    except LatticeError as exc:
        raise RecordError(f"record {rec_id!r}: {exc}") from exc
    raise RecordError(
        f"{where}: fields match neither the cell nor the basis schema"
    )


def parse_records(stream, fmt="csv"):
    """Parse lattice records from a text stream; duplicates are rejected."""
    if isinstance(stream, (str, bytes)):
        if isinstance(stream, bytes):
            stream = stream.decode("utf-8")
        stream = io.StringIO(stream)
    records = []
    seen = set()
    if fmt == "csv":
        reader = csv.DictReader(stream)
        if reader.fieldnames is None:
            raise RecordError("line 1: empty input, header row expected")
        for row in reader:
            where = f"line {reader.line_num}"
            if None in row or any(v is None for v in row.values()):
                raise RecordError(f"{where}: wrong number of fields")
            records.append(_record_from_mapping(row, where))
    elif fmt == "json":
        try:
            data = json.load(stream)
        except json.JSONDecodeError as exc:
            raise RecordError(f"invalid JSON: {exc}") from exc
        if not isinstance(data, list):
            raise RecordError("JSON input must be an array of record objects")
        for pos, raw in enumerate(data):
            if not isinstance(raw, dict):
                raise RecordError(f"element {pos}: not an object")
            records.append(_record_from_mapping(raw, f"element {pos}"))
    else:
        raise RecordError(f"unknown input format {fmt!r}")
    for rec in records:
        if rec.id in seen:
            raise RecordError(f"duplicate record id {rec.id!r}")
        seen.add(rec.id)
    return records


def parse_root_forms(stream, fmt="csv"):
    """Parse the root-form schema into (id, RootForm) pairs."""
    if isinstance(stream, (str, bytes)):
        if isinstance(stream, bytes):
            stream = stream.decode("utf-8")
        stream = io.StringIO(stream)
    if fmt == "json":
        rows = json.load(stream)
        iterator = ((f"element {k}", row) for k, row in enumerate(rows))
    else:
        reader = csv.DictReader(stream)
        iterator = ((f"line {reader.line_num}", row) for row in reader)
    out = []
    seen = set()
    for where, row in iterator:
        rec_id = str(row.get("id", "")).strip()
        if not rec_id:
            raise RecordError(f"{where}: missing id")
        if rec_id in seen:
            raise RecordError(f"duplicate record id {rec_id!r}")
        seen.add(rec_id)
        vals = _floats(row, ROOT_FIELDS, f"record {rec_id!r}")
        oriented = str(row.get("oriented", "false")).strip().lower() in (
            "1",
            "true",
            "yes",
        )
        try:
            out.append((rec_id, RootForm(tuple(vals), oriented=oriented)))
        except LatticeError as exc:
            raise RecordError(f"record {rec_id!r}: {exc}") from exc
    return out


def fmt_float(x):
    """Fixed 12-significant-digit rendering used for byte-stable output."""
    return format(float(x), ".12g")
