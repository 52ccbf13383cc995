"""Readers for the simulator's CSV artifacts, with column-level errors.

Three file shapes are understood, identified by their headers:

- flux curves:   alpha, rho, flux
- scatter:       sample_id, t, probe_x, rho, flux
- path summary:  sample_id, t, alpha, mass, tv, then rho@<p>, flux@<p>
                 column pairs, one pair per probe position

Every reader validates the header before touching any row and reports
problems by file, row, and column name.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np


class SchemaError(ValueError):
    """An input file does not match the expected CSV schema."""


_CURVES_HEADER = ["alpha", "rho", "flux"]
_SCATTER_HEADER = ["sample_id", "t", "probe_x", "rho", "flux"]
_PATHS_PREFIX = ["sample_id", "t", "alpha", "mass", "tv"]


def _read_rows(path) -> tuple[list[str], list[list[str]]]:
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: file is empty, expected a header row") from None
        rows = list(reader)
    for i, row in enumerate(rows, start=2):
        if len(row) != len(header):
            raise SchemaError(
                f"{path}, row {i}: {len(row)} fields, header has {len(header)}"
            )
    return header, rows


def _require_columns(path, header: list[str], required: list[str]) -> None:
    missing = [c for c in required if c not in header]
    if missing:
        raise SchemaError(
            f"{path}: missing column(s) {', '.join(missing)}; "
            f"found: {', '.join(header) if header else '(none)'}"
        )


def _column(path, header: list[str], rows: list[list[str]], name: str,
            kind: str = "float") -> np.ndarray:
    idx = header.index(name)
    out = np.empty(len(rows), dtype=np.int64 if kind == "int" else np.float64)
    for i, row in enumerate(rows):
        raw = row[idx]
        try:
            out[i] = int(raw) if kind == "int" else float(raw)
        except ValueError:
            raise SchemaError(
                f"{path}, row {i + 2}, column {name!r}: "
                f"cannot parse {raw!r} as {'an integer' if kind == 'int' else 'a number'}"
            ) from None
    return out


def classify(path) -> str:
    """'flux_curves', 'scatter', or 'paths', from the header alone."""
    header, _ = _read_rows(path)
    if header == _CURVES_HEADER:
        return "flux_curves"
    if header == _SCATTER_HEADER:
        return "scatter"
    if header[: len(_PATHS_PREFIX)] == _PATHS_PREFIX:
        return "paths"
    raise SchemaError(
        f"{path}: header {', '.join(header)} matches none of the known "
        f"shapes (flux curves: {', '.join(_CURVES_HEADER)}; scatter: "
        f"{', '.join(_SCATTER_HEADER)}; path summary: "
        f"{', '.join(_PATHS_PREFIX)}, rho@<probe>, flux@<probe>)"
    )


@dataclass(frozen=True)
class CurvesTable:
    """Flux-curve samples grouped by parameter, in file order."""

    alpha: np.ndarray
    rho: np.ndarray
    flux: np.ndarray

    def curves(self) -> list[tuple[float, np.ndarray, np.ndarray]]:
        """(parameter, rho, flux) per parameter, in first-appearance order."""
        out = []
        seen: dict[float, None] = {}
        for a in self.alpha:
            seen.setdefault(float(a), None)
        for a in seen:
            mask = self.alpha == a
            out.append((a, self.rho[mask], self.flux[mask]))
        return out


def read_flux_curves(path) -> CurvesTable:
    header, rows = _read_rows(path)
    _require_columns(path, header, _CURVES_HEADER)
    return CurvesTable(
        alpha=_column(path, header, rows, "alpha"),
        rho=_column(path, header, rows, "rho"),
        flux=_column(path, header, rows, "flux"),
    )


@dataclass(frozen=True)
class ScatterTable:
    """Density-flux pairs read at probe positions and snapshot times."""

    sample_id: np.ndarray
    t: np.ndarray
    probe_x: np.ndarray
    rho: np.ndarray
    flux: np.ndarray

    def __len__(self) -> int:
        return self.rho.size


def read_scatter(path) -> ScatterTable:
    header, rows = _read_rows(path)
    _require_columns(path, header, _SCATTER_HEADER)
    return ScatterTable(
        sample_id=_column(path, header, rows, "sample_id", "int"),
        t=_column(path, header, rows, "t"),
        probe_x=_column(path, header, rows, "probe_x"),
        rho=_column(path, header, rows, "rho"),
        flux=_column(path, header, rows, "flux"),
    )


@dataclass(frozen=True)
class PathsTable:
    """Per-snapshot path summaries plus probe readings keyed by position."""

    sample_id: np.ndarray
    t: np.ndarray
    alpha: np.ndarray
    mass: np.ndarray
    tv: np.ndarray
    probes: dict[float, tuple[np.ndarray, np.ndarray]]  # x -> (rho, flux)

    def probe_positions(self) -> list[float]:
        return list(self.probes)

    def sample_ids(self) -> list[int]:
        seen: dict[int, None] = {}
        for s in self.sample_id:
            seen.setdefault(int(s), None)
        return list(seen)


def read_paths(path) -> PathsTable:
    header, rows = _read_rows(path)
    _require_columns(path, header, _PATHS_PREFIX)

    probes: dict[float, tuple[np.ndarray, np.ndarray]] = {}
    for col in header[len(_PATHS_PREFIX):]:
        if col.startswith("rho@"):
            label = col[len("rho@"):]
            partner = f"flux@{label}"
            if partner not in header:
                raise SchemaError(f"{path}: column {col!r} has no matching {partner!r}")
            try:
                x = float(label)
            except ValueError:
                raise SchemaError(
                    f"{path}: column {col!r} has a non-numeric probe label"
                ) from None
            probes[x] = (
                _column(path, header, rows, col),
                _column(path, header, rows, partner),
            )
        elif not col.startswith("flux@"):
            raise SchemaError(
                f"{path}: unexpected column {col!r}; expected rho@<probe>/"
                f"flux@<probe> pairs after {', '.join(_PATHS_PREFIX)}"
            )
    for col in header[len(_PATHS_PREFIX):]:
        if col.startswith("flux@"):
            label = col[len("flux@"):]
            if f"rho@{label}" not in header:
                raise SchemaError(
                    f"{path}: column {col!r} has no matching {'rho@' + label!r}"
                )

    return PathsTable(
        sample_id=_column(path, header, rows, "sample_id", "int"),
        t=_column(path, header, rows, "t"),
        alpha=_column(path, header, rows, "alpha"),
        mass=_column(path, header, rows, "mass"),
        tv=_column(path, header, rows, "tv"),
        probes=probes,
    )
