"""File formats: protocol records (JSON), attack reports (JSON/CSV) and
sweep tables (CSV).

Matrices are stored row-major as nested lists; floats use Python's shortest
round-trip repr, so write -> read -> write is byte-identical.
"""

import csv
import io as _io
import json
import math
import os
import tempfile

import numpy as np

from .attack import SWEEP_COLUMNS, Protocol
from .errors import GaussianError
from .purification import BipartiteGaussianState
from .state import CONVENTION, GaussianState


class FormatError(GaussianError):
    """Malformed or unphysical input file; the message names the field."""


def atomic_write(path, text):
    """Write ``text`` to ``path`` through a temporary file and a rename."""
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dumps(obj):
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def protocol_to_dict(protocol, metadata=None):
    return {
        "convention": CONVENTION,
        "n": protocol.n,
        "psi0": protocol.psi0.state.to_dict(),
        "psi1": protocol.psi1.state.to_dict(),
        "metadata": dict(metadata or {}),
    }


def write_protocol(path, protocol, metadata=None):
    atomic_write(path, dumps(protocol_to_dict(protocol, metadata)))


def _number_list(value, field, length):
    if not isinstance(value, list):
        raise FormatError(f"{field}: expected a list, got {type(value).__name__}")
    if len(value) != length:
        raise FormatError(f"{field}: expected {length} entries, got {len(value)}")
    for i, v in enumerate(value):
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise FormatError(f"{field}[{i}]: expected a number, got {v!r}")
        if not math.isfinite(v):
            raise FormatError(f"{field}[{i}]: non-finite value")
    return np.array(value, dtype=float)


def _state_record(record, field, n_modes):
    if not isinstance(record, dict):
        raise FormatError(f"{field}: expected an object with 'mu' and 'gamma'")
    for key in ("mu", "gamma"):
        if key not in record:
            raise FormatError(f"{field}.{key}: missing")
    dim = 2 * n_modes
    mu = _number_list(record["mu"], f"{field}.mu", dim)
    rows = record["gamma"]
    if not isinstance(rows, list) or len(rows) != dim:
        raise FormatError(f"{field}.gamma: expected {dim} rows")
    gamma = np.stack([_number_list(r, f"{field}.gamma[{i}]", dim) for i, r in enumerate(rows)])
    return mu, gamma


def parse_protocol_raw(text):
    """Structural parse: returns ``(n, {name: (mu, gamma)}, metadata)``."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise FormatError("top level: expected a JSON object")
    if obj.get("convention") != CONVENTION:
        raise FormatError(f"convention: expected {CONVENTION!r}, got {obj.get('convention')!r}")
    n = obj.get("n")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise FormatError(f"n: expected a positive integer, got {n!r}")
    states = {}
    for name in ("psi0", "psi1"):
        if name not in obj:
            raise FormatError(f"{name}: missing")
        states[name] = _state_record(obj[name], name, 2 * n)
    metadata = obj.get("metadata", {})
    if not isinstance(metadata, dict):
        raise FormatError("metadata: expected an object")
    return n, states, metadata


def _bipartite(mu, gamma, field):
    try:
        return BipartiteGaussianState(GaussianState(mu, gamma))
    except GaussianError as exc:
        raise FormatError(f"{field}.gamma: {exc}") from None


def parse_protocol(text):
    """Parse a protocol record into ``(Protocol, metadata)``."""
    _, states, metadata = parse_protocol_raw(text)
    psi = {name: _bipartite(mu, gamma, name) for name, (mu, gamma) in states.items()}
    return Protocol(psi["psi0"], psi["psi1"]), metadata


def read_protocol(path):
    with open(path, encoding="utf-8") as fh:
        return parse_protocol(fh.read())


def _csv_value(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def rows_to_csv(rows):
    """Sweep rows as CSV: the fixed columns, then a trailing ``error`` column."""
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(SWEEP_COLUMNS) + ["error"])
    for row in rows:
        d = row.to_dict()
        writer.writerow([_csv_value(d[c]) for c in SWEEP_COLUMNS] + [d["error"]])
    return buf.getvalue()


def report_to_json(report, metadata=None):
    return dumps({"convention": CONVENTION, **report.to_dict(),
                  "metadata": dict(metadata or {})})
