"""
File formats and report emission.

Matrix files are JSON {"n": int, "rows": [[...], ...]} or whitespace text
(first token n, then n^2 values row-major). Minor tables and targets use
{"n": int, "minors": {"<mask>": value}}, polynomials {"coeffs": [...]}.

:return : I/O functions.
:return: load_matrix, load_targets, load_minor_table, load_polynomial, minor_table_to_json, minor_table_from_json, emit_report, write_output, write_frame_csv.
"""

from typing import Any, Dict, List, Literal, Optional, Tuple
import json
import logging
import math
import sys

import numpy as np
import pandas as pd

from gkk_tau.errors import DimensionError, InputError, MatrixParseError
from gkk_tau.models.manifest import SCHEMA_VERSION, OutputFormat, RunManifest
from gkk_tau.models.matrix import Matrix, encode_real
from gkk_tau.models.minors import MinorTable, TargetMinorTable
from gkk_tau.models.polynomial import RealPolynomial

logger = logging.getLogger(__name__)

MatrixFormat = Literal["auto", "json", "text"]


def _read_text(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        raise InputError(f"Cannot read {path}: {e}") from e


def _parse_json(text: str, source: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise MatrixParseError(f"{source}: invalid JSON ({e.msg})", line=e.lineno, position=e.colno) from e


def _tokens(text: str) -> List[Tuple[str, int, int]]:
    """Whitespace tokens with 1-based line and file-wide token position."""
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        for token in line.split():
            out.append((token, lineno, len(out) + 1))
    return out


def parse_matrix_text(text: str, source: str = "<text>") -> Matrix:
    """
    Parse the whitespace matrix format.

    :param text: File contents.
    :param source: Name used in error messages.
    :return : Matrix.
    :return: Parsed matrix.
    """
    tokens = _tokens(text)
    if not tokens:
        raise MatrixParseError(f"{source}: empty matrix file")
    head, line, pos = tokens[0]
    try:
        n = int(head)
    except ValueError:
        raise MatrixParseError(f"{source}: order must be an integer, got {head!r}", line, pos) from None
    if n < 1:
        raise DimensionError(f"{source}: order must be >= 1, got {n}")
    values = []
    for token, line, pos in tokens[1:]:
        try:
            values.append(float(token))
        except ValueError:
            raise MatrixParseError(f"{source}: not a number: {token!r}", line, pos) from None
    if len(values) != n * n:
        raise DimensionError(f"{source}: order {n} needs {n * n} values, got {len(values)}")
    return Matrix(np.array(values).reshape(n, n))


def load_matrix(path: str, fmt: MatrixFormat = "auto") -> Matrix:
    """
    Read a matrix file.

    :param path: File path.
    :param fmt: auto (JSON if the file starts with "{"), json or text.
    :return : Matrix.
    :return: Validated square finite matrix.
    """
    text = _read_text(path)
    if fmt == "auto":
        fmt = "json" if text.lstrip().startswith("{") else "text"
    if fmt == "json":
        data = _parse_json(text, path)
        if not isinstance(data, dict):
            raise MatrixParseError(f"{path}: expected a JSON object")
        A = Matrix.from_dict(data)
    elif fmt == "text":
        A = parse_matrix_text(text, path)
    else:
        raise InputError(f"Unknown matrix format '{fmt}'")
    logger.info(f"Loaded matrix of order {A.n} from {path}")
    return A


def load_targets(path: str) -> TargetMinorTable:
    """
    Read a target minor table (key "0" optional).

    :param path: File path.
    :return : TargetMinorTable.
    :return: Complete target table.
    """
    return TargetMinorTable.from_dict(_parse_json(_read_text(path), path))


def minor_table_to_json(table: MinorTable) -> str:
    """MinorTable in its file format."""
    return json.dumps(table.to_dict(), allow_nan=False)


def minor_table_from_json(text: str) -> MinorTable:
    """Inverse of minor_table_to_json."""
    return MinorTable.from_dict(_parse_json(text, "<minor table>"))


def load_minor_table(path: str) -> MinorTable:
    """Read a MinorTable file."""
    return MinorTable.from_dict(_parse_json(_read_text(path), path))


def load_polynomial(path: str) -> RealPolynomial:
    """
    Read a polynomial file {"coeffs": [highest..lowest]}.

    :param path: File path.
    :return : RealPolynomial.
    :return: Monic polynomial; the zero polynomial raises DegeneracyError.
    """
    data = _parse_json(_read_text(path), path)
    if not isinstance(data, dict):
        raise MatrixParseError(f"{path}: expected a JSON object")
    return RealPolynomial.from_dict(data)


def to_jsonable(obj: Any) -> Any:
    """
    Strict-JSON view of nested reports.

    numpy scalars and arrays become Python values, infinities become
    "+inf"/"-inf" and NaN becomes null.

    :param obj: Nested dicts, lists and scalars.
    :return : JSON-compatible object.
    :return: Converted copy.
    """
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, np.generic):
        return to_jsonable(obj.item())
    if isinstance(obj, float):
        if math.isnan(obj):
            return None
        return encode_real(obj)
    return obj


def _flatten(obj: Any, prefix: str = "") -> List[Tuple[str, str]]:
    if isinstance(obj, dict) and obj:
        rows = []
        for k, v in obj.items():
            rows.extend(_flatten(v, f"{prefix}.{k}" if prefix else str(k)))
        return rows
    return [(prefix, json.dumps(obj) if isinstance(obj, (list, dict)) else str(obj))]


def emit_report(report: Dict[str, Any], fmt: OutputFormat, manifest: Optional[RunManifest] = None) -> str:
    """
    Serialize a report with its schema version and manifest.

    :param report: Report dictionary.
    :param fmt: json (indented, strict) or text (aligned key/value lines).
    :param manifest: Run manifest to embed.
    :return : String.
    :return: Deterministic serialized report.
    """
    payload: Dict[str, Any] = {"schema_version": SCHEMA_VERSION}
    if manifest is not None:
        payload["manifest"] = manifest.to_dict()
    payload.update(report)
    payload = to_jsonable(payload)
    if fmt == "json":
        return json.dumps(payload, indent=2, allow_nan=False)
    rows = _flatten(payload)
    width = max(len(key) for key, _ in rows)
    return "\n".join(f"{key:<{width}}  {value}" for key, value in rows)


def write_output(text: str, out: Optional[str] = None) -> None:
    """Write text to a file, or to stdout when out is None."""
    if out is None:
        sys.stdout.write(text + "\n")
        return
    with open(out, "w", encoding="utf-8") as f:
        f.write(text + "\n")
    logger.info(f"Report written to {out}")


def write_frame_csv(frame: pd.DataFrame, path: str) -> None:
    """Write a DataFrame as CSV without the index."""
    frame.to_csv(path, index=False)
    logger.info(f"Table written to {path}")
