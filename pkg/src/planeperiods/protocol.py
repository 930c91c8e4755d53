"""Column payload: extract, serialize, and verify period columns.

The sender, who knows her matrix comes from a smooth plane curve,
ships the four distinguished columns (at most 4g complex entries
instead of g(g+1)/2) together with their monomial labels and her
integration tolerance.  The receiver checks his own matrix against the
payload entry by entry; agreement within tolerance on those columns is
what the protocol certifies.  Comparison is per-component absolute
deviation: period entries legitimately approach zero, so a relative
test would be meaningless there.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cover import ColumnSet, compression_ratio, cover_check
from .monomials import Monomial, adjoint_basis, format_monomial, genus, parse_monomial

FORMAT_VERSION = 1


class ProtocolError(RuntimeError):
    pass


@dataclass(frozen=True)
class CompressedPeriods:
    format_version: int
    d: int
    g: int
    column_labels: tuple[Monomial, ...]
    column_indices: tuple[int, ...]
    columns: tuple[tuple[complex, ...], ...]  # one g-vector per label
    tolerance: float

    @property
    def entry_count(self) -> int:
        return len(self.column_labels) * self.g


@dataclass(frozen=True)
class VerifyOutcome:
    accepted: bool
    max_deviation: float
    worst_entry: tuple[int, str] | None  # (row, column label)
    note: str = ""


def fmt_c(z: complex) -> list[str]:
    return [f"{z.real:.17g}", f"{z.imag:.17g}"]


def compress(
    Omega: np.ndarray,
    d: int,
    cols: ColumnSet,
    tol: float,
) -> CompressedPeriods:
    g = genus(d)
    Omega = np.asarray(Omega, dtype=complex)
    if Omega.shape != (g, g):
        raise ProtocolError(
            f"period matrix is {Omega.shape}, expected {g} x {g} for d={d}"
        )
    if tol <= 0:
        raise ProtocolError("tolerance must be positive")
    if cover_check(d, cols).missing:
        raise ProtocolError(
            "column set does not cover the quadratic products; the payload "
            "would not determine the curve (use min-cover to find one)"
        )
    if len(cols.labels) > 4:
        raise ProtocolError(
            "payload is limited to 4 columns (4g entries)"
        )
    basis = adjoint_basis(d)
    idx = []
    for label in cols.labels:
        j = basis.index_of(label)
        if j is None:
            raise ProtocolError(f"label {label} is not an adjoint monomial")
        idx.append(j)
    columns = tuple(tuple(Omega[:, j]) for j in idx)
    return CompressedPeriods(
        format_version=FORMAT_VERSION,
        d=d,
        g=g,
        column_labels=tuple(cols.labels),
        column_indices=tuple(idx),
        columns=columns,
        tolerance=float(tol),
    )


def payload_ratio(payload: CompressedPeriods) -> Fraction:
    return compression_ratio(payload.d, len(payload.column_labels))


def _payload_body(payload: CompressedPeriods) -> dict:
    return {
        "format_version": payload.format_version,
        "d": payload.d,
        "g": payload.g,
        "column_labels": [format_monomial(m) for m in payload.column_labels],
        "column_indices": list(payload.column_indices),
        "tolerance": f"{payload.tolerance:.17g}",
        "columns": [[fmt_c(z) for z in col] for col in payload.columns],
    }


def serialize(payload: CompressedPeriods) -> bytes:
    """Canonical JSON bytes: fixed key order, 17-significant-digit
    decimal complex pairs, and a checksum over everything else."""
    body = _payload_body(payload)
    core = json.dumps(body, separators=(",", ":"), sort_keys=False)
    checksum = hashlib.sha256(core.encode("ascii")).hexdigest()
    doc = dict(body)
    doc["checksum"] = checksum
    return json.dumps(doc, separators=(",", ":"), sort_keys=False).encode("ascii")


def deserialize(data: bytes) -> CompressedPeriods:
    try:
        doc = json.loads(data.decode("ascii"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ProtocolError(f"payload is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "checksum" not in doc:
        raise ProtocolError("payload document malformed")
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise ProtocolError(f"unknown format_version {version!r}")
    stated = doc.pop("checksum", None)
    core = json.dumps(doc, separators=(",", ":"), sort_keys=False)
    actual = hashlib.sha256(core.encode("ascii")).hexdigest()
    if stated != actual:
        raise ProtocolError("checksum mismatch: payload corrupted in transit")
    try:
        labels = tuple(parse_monomial(s) for s in doc["column_labels"])
        columns = tuple(
            tuple(complex(float(re), float(im)) for re, im in col)
            for col in doc["columns"]
        )
        payload = CompressedPeriods(
            format_version=version,
            d=int(doc["d"]),
            g=int(doc["g"]),
            column_labels=labels,
            column_indices=tuple(int(i) for i in doc["column_indices"]),
            columns=columns,
            tolerance=float(doc["tolerance"]),
        )
    except (KeyError, ValueError, TypeError) as exc:
        raise ProtocolError(f"payload fields malformed: {exc}") from exc
    if any(len(col) != payload.g for col in payload.columns):
        raise ProtocolError("column length does not match g")
    return payload


def verify(payload: CompressedPeriods, candidate: np.ndarray) -> VerifyOutcome:
    """Entrywise comparison of the payload columns against the matching
    columns of the candidate matrix.

    Metadata mismatches raise ProtocolError (they are not a Reject).
    The candidate's columns are located by monomial label, so a
    receiver with the same basis order compares directly.
    """
    candidate = np.asarray(candidate, dtype=complex)
    g = payload.g
    if genus(payload.d) != g:
        raise ProtocolError("payload g does not match its degree")
    if candidate.shape != (g, g):
        raise ProtocolError(
            f"candidate matrix is {candidate.shape}, payload needs {g} x {g}"
        )
    basis = adjoint_basis(payload.d)
    worst = 0.0
    worst_entry = None
    for label, stated_idx, col in zip(
        payload.column_labels, payload.column_indices, payload.columns
    ):
        j = basis.index_of(label)
        if j is None:
            raise ProtocolError(f"payload label {label} is not a basis monomial")
        if j != stated_idx:
            raise ProtocolError(
                f"payload index {stated_idx} for label {label} does not match "
                f"the basis order (expected {j})"
            )
        for i in range(g):
            dev = max(
                abs(col[i].real - candidate[i, j].real),
                abs(col[i].imag - candidate[i, j].imag),
            )
            if dev > worst:
                worst = dev
                worst_entry = (i, format_monomial(label))
    note = (
        "verification assumes the candidate comes from a smooth plane curve; "
        "no plane-curve membership test is performed"
    )
    if worst <= payload.tolerance:
        return VerifyOutcome(True, worst, worst_entry, note)
    return VerifyOutcome(False, worst, worst_entry, note)
