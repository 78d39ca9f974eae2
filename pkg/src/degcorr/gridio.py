"""Grid, manifest, and error-table files.

All numbers are written in shortest round-trip decimal form, so files are
diff-able across platforms and read back bit-exactly.  JSON stores the
entries as written (undirected grids keep unordered k1 <= k2 keys); CSV
renders a full rectangular matrix for plotting, mirroring undirected grids
about the diagonal, and folds back to the upper triangle when read.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .errors import GridParseError, IncompatibleInputsError, InvalidParameterError
from .stats import DIRECTED, UNDIRECTED, JointDegreeMatrix, _check_mode
from .theory import EdgeStateDistribution, StationaryGrid

__all__ = [
    "GridData",
    "ErrorTable",
    "RunManifest",
    "to_grid_data",
    "write_grid",
    "read_grid",
    "error_table",
    "write_error_table",
    "write_manifest",
    "read_manifest",
    "write_summary",
    "write_gf_rows",
]

_FORMATS = ("json", "csv")


@dataclass
class GridData:
    """Format-neutral grid record shared by all writers and readers."""

    kind: str
    mode: str
    m: int | None
    entries: dict[tuple[int, int], float]
    tail_mass: float = 0.0
    max_k: int | None = None
    edge_count: float | None = None
    replicas: int | None = None
    t: int | None = None
    L: int | None = None
    N: int | None = None


def to_grid_data(obj) -> GridData:
    if isinstance(obj, GridData):
        return obj
    if isinstance(obj, StationaryGrid):
        return GridData(
            kind="stationary",
            mode=obj.mode,
            m=obj.m,
            entries=obj.entries,
            tail_mass=obj.tail_mass,
            max_k=obj.max_k,
        )
    if isinstance(obj, EdgeStateDistribution):
        return GridData(
            kind="transient",
            mode=obj.mode,
            m=obj.m,
            entries=obj.entries,
            tail_mass=obj.tail_mass,
            max_k=obj.max_k,
            edge_count=obj.edge_count,
            t=obj.t,
            L=obj.L,
            N=obj.N,
        )
    if isinstance(obj, JointDegreeMatrix):
        return GridData(
            kind="empirical",
            mode=obj.mode,
            m=obj.m,
            entries=obj.entries,
            edge_count=obj.edge_count,
            replicas=obj.replicas_merged,
        )
    raise InvalidParameterError(f"cannot serialize {type(obj).__name__} as a grid")


def _degree_window(data: GridData) -> tuple[int, int]:
    if data.entries:
        lo = min(min(k1, k2) for k1, k2 in data.entries)
        hi = max(max(k1, k2) for k1, k2 in data.entries)
    else:
        lo = data.m if data.m is not None else 1
        hi = lo
    if data.m is not None:
        lo = min(lo, data.m)
    if data.max_k is not None:
        hi = max(hi, data.max_k)
    return lo, hi


def _sorted_entries(entries: dict[tuple[int, int], float]) -> list[tuple[tuple[int, int], float]]:
    return sorted(entries.items())


def write_grid(obj, path: str | Path, fmt: str = "json") -> Path:
    """Write a grid file; returns the path written."""
    if fmt not in _FORMATS:
        raise InvalidParameterError(f"format must be one of {_FORMATS}, got {fmt!r}")
    data = to_grid_data(obj)
    path = Path(path)
    if fmt == "json":
        payload = {
            "kind": data.kind,
            "mode": data.mode,
            "m": data.m,
            "max_k": data.max_k,
            "tail_mass": data.tail_mass,
            "edge_count": data.edge_count,
            "replicas": data.replicas,
            "t": data.t,
            "L": data.L,
            "N": data.N,
            "entries": {f"{k1},{k2}": p for (k1, k2), p in _sorted_entries(data.entries)},
        }
        path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
        return path
    lo, hi = _degree_window(data)
    lines = [f"# kind={data.kind}", f"# mode={data.mode}"]
    for field in ("m", "max_k", "edge_count", "replicas", "t", "L", "N"):
        value = getattr(data, field)
        if value is not None:
            lines.append(f"# {field}={value!r}" if isinstance(value, float) else f"# {field}={value}")
    lines.append(f"# tail_mass={data.tail_mass!r}")
    header = ["k1\\k2"] + [str(k) for k in range(lo, hi + 1)]
    lines.append(",".join(header))
    sym = data.mode == UNDIRECTED
    for k1 in range(lo, hi + 1):
        row = [str(k1)]
        for k2 in range(lo, hi + 1):
            key = (min(k1, k2), max(k1, k2)) if sym else (k1, k2)
            row.append(repr(data.entries.get(key, 0.0)))
        lines.append(",".join(row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def _parse_meta_value(field: str, raw: str):
    if field in ("mode", "kind"):
        return raw
    if field in ("m", "max_k", "replicas", "t", "L", "N"):
        return int(raw)
    return float(raw)


def _read_grid_json(path: Path) -> GridData:
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise GridParseError(f"{path}: {exc.msg}", line=exc.lineno, column=exc.colno) from None
    try:
        entries: dict[tuple[int, int], float] = {}
        for key, val in payload["entries"].items():
            k1s, k2s = key.split(",")
            entries[(int(k1s), int(k2s))] = float(val)
        return GridData(
            kind=payload.get("kind", "empirical"),
            mode=_check_mode(payload["mode"]),
            m=payload.get("m"),
            entries=entries,
            tail_mass=float(payload.get("tail_mass") or 0.0),
            max_k=payload.get("max_k"),
            edge_count=payload.get("edge_count"),
            replicas=payload.get("replicas"),
            t=payload.get("t"),
            L=payload.get("L"),
            N=payload.get("N"),
        )
    except (KeyError, ValueError, AttributeError) as exc:
        raise GridParseError(f"{path}: malformed grid payload ({exc})", line=1) from None


def _read_grid_csv(path: Path) -> GridData:
    meta: dict[str, object] = {}
    entries: dict[tuple[int, int], float] = {}
    header: list[int] | None = None
    mode = None
    for ln, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        if not raw.strip():
            continue
        if raw.startswith("#"):
            body = raw[1:].strip()
            if "=" not in body:
                raise GridParseError(f"{path}: metadata line without '='", line=ln)
            field, _, value = body.partition("=")
            field = field.strip()
            try:
                meta[field] = _parse_meta_value(field, value.strip())
            except ValueError:
                raise GridParseError(f"{path}: bad value for {field}", line=ln) from None
            continue
        cells = raw.split(",")
        if header is None:
            if not cells[0].startswith("k1"):
                raise GridParseError(f"{path}: expected 'k1\\k2' header row", line=ln)
            try:
                header = [int(c) for c in cells[1:]]
            except ValueError:
                raise GridParseError(f"{path}: non-integer degree in header", line=ln) from None
            mode = meta.get("mode")
            if mode not in (DIRECTED, UNDIRECTED):
                raise GridParseError(f"{path}: missing or bad '# mode=' line", line=ln)
            continue
        try:
            k1 = int(cells[0])
        except ValueError:
            raise GridParseError(f"{path}: non-integer row label", line=ln, column=1) from None
        if len(cells) != len(header) + 1:
            raise GridParseError(f"{path}: row has {len(cells) - 1} cells, expected {len(header)}", line=ln)
        for col, cell in enumerate(cells[1:], start=2):
            try:
                value = float(cell)
            except ValueError:
                raise GridParseError(f"{path}: bad probability {cell!r}", line=ln, column=col) from None
            if value == 0.0:
                continue
            k2 = header[col - 2]
            if mode == UNDIRECTED and k1 > k2:
                continue  # mirror cell; the upper triangle carries the value
            entries[(k1, k2)] = value
    if header is None:
        raise GridParseError(f"{path}: no matrix header found", line=1)
    return GridData(
        kind=str(meta.get("kind", "empirical")),
        mode=str(mode),
        m=meta.get("m"),  # type: ignore[arg-type]
        entries=entries,
        tail_mass=float(meta.get("tail_mass", 0.0)),  # type: ignore[arg-type]
        max_k=meta.get("max_k"),  # type: ignore[arg-type]
        edge_count=meta.get("edge_count"),  # type: ignore[arg-type]
        replicas=meta.get("replicas"),  # type: ignore[arg-type]
        t=meta.get("t"),  # type: ignore[arg-type]
        L=meta.get("L"),  # type: ignore[arg-type]
        N=meta.get("N"),  # type: ignore[arg-type]
    )


def read_grid(path: str | Path, fmt: str | None = None) -> GridData:
    """Read a grid file; format inferred from the suffix unless given."""
    path = Path(path)
    if fmt is None:
        fmt = path.suffix.lstrip(".").lower() or "json"
    if fmt not in _FORMATS:
        raise InvalidParameterError(f"format must be one of {_FORMATS}, got {fmt!r}")
    if fmt == "json":
        return _read_grid_json(path)
    return _read_grid_csv(path)


@dataclass
class ErrorTable:
    """Cellwise |simulated - theoretical| over a degree window."""

    mode: str
    m: int | None
    k1_range: tuple[int, int]
    k2_range: tuple[int, int]
    cells: np.ndarray
    max_error: float
    mean_error: float


def _window_lookup(entries: dict[tuple[int, int], float], mode: str, k1: int, k2: int) -> float:
    if mode == UNDIRECTED:
        return entries.get((min(k1, k2), max(k1, k2)), 0.0)
    return entries.get((k1, k2), 0.0)


def error_table(sim, theory, window: tuple[int, int] | None = None) -> ErrorTable:
    """Absolute sim-vs-theory differences over a square degree window.

    ``window`` is an inclusive degree range applied to both axes; defaults to
    the six degrees starting at m.
    """
    sim_d = to_grid_data(sim)
    th_d = to_grid_data(theory)
    if sim_d.mode != th_d.mode or sim_d.m != th_d.m:
        raise IncompatibleInputsError(
            f"grids disagree: ({sim_d.mode}, m={sim_d.m}) vs ({th_d.mode}, m={th_d.m})"
        )
    if window is None:
        if sim_d.m is None:
            raise InvalidParameterError("window required when the grids carry no m")
        window = (sim_d.m, sim_d.m + 5)
    lo, hi = window
    if lo < 1 or hi < lo:
        raise InvalidParameterError(f"bad window {window}")
    size = hi - lo + 1
    cells = np.zeros((size, size), dtype=np.float64)
    for i, k1 in enumerate(range(lo, hi + 1)):
        for j, k2 in enumerate(range(lo, hi + 1)):
            cells[i, j] = abs(
                _window_lookup(sim_d.entries, sim_d.mode, k1, k2)
                - _window_lookup(th_d.entries, th_d.mode, k1, k2)
            )
    return ErrorTable(
        mode=sim_d.mode,
        m=sim_d.m,
        k1_range=(lo, hi),
        k2_range=(lo, hi),
        cells=cells,
        max_error=float(cells.max()),
        mean_error=float(cells.mean()),
    )


def write_error_table(table: ErrorTable, path: str | Path) -> Path:
    path = Path(path)
    lines = [
        f"# mode={table.mode}",
        f"# m={table.m}" if table.m is not None else "# m=",
        f"# window={table.k1_range[0]}:{table.k1_range[1]}",
        f"# max_error={table.max_error!r}",
        f"# mean_error={table.mean_error!r}",
    ]
    lo1, hi1 = table.k1_range
    lo2, hi2 = table.k2_range
    lines.append(",".join(["k1\\k2"] + [str(k) for k in range(lo2, hi2 + 1)]))
    for i, k1 in enumerate(range(lo1, hi1 + 1)):
        lines.append(",".join([str(k1)] + [repr(float(v)) for v in table.cells[i]]))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


@dataclass
class RunManifest:
    """Everything needed to replay a run bit-exactly (plus provenance)."""

    command: str
    mode: str
    m: int
    n0: int | None
    steps: int | None
    replicas: int | None
    seed: int | None
    max_k: int | None
    tail_epsilon: float | None
    version: str
    timestamp: str

    @staticmethod
    def create(command: str, mode: str, m: int, **kw) -> "RunManifest":
        from . import __version__

        return RunManifest(
            command=command,
            mode=mode,
            m=m,
            n0=kw.get("n0"),
            steps=kw.get("steps"),
            replicas=kw.get("replicas"),
            seed=kw.get("seed"),
            max_k=kw.get("max_k"),
            tail_epsilon=kw.get("tail_epsilon"),
            version=__version__,
            timestamp=datetime.now(timezone.utc).isoformat(),
        )


def write_manifest(manifest: RunManifest, path: str | Path) -> Path:
    path = Path(path)
    path.write_text(json.dumps(asdict(manifest), indent=2) + "\n", encoding="utf-8")
    return path


def read_manifest(path: str | Path) -> RunManifest:
    path = Path(path)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
        return RunManifest(**payload)
    except json.JSONDecodeError as exc:
        raise GridParseError(f"{path}: {exc.msg}", line=exc.lineno, column=exc.colno) from None
    except TypeError as exc:
        raise GridParseError(f"{path}: malformed manifest ({exc})", line=1) from None


def write_summary(path: str | Path, *, mode: str, m: int, summary, knn, histogram, edge_count, replicas) -> Path:
    """Write the simulate summary: Pearson r, moments, knn, degree histogram."""
    moments = None
    if summary.moments is not None:
        mom = summary.moments
        moments = {
            "e_ki": mom.e_ki,
            "e_kj": mom.e_kj,
            "e_kikj": mom.e_kikj,
            "e_ki2": mom.e_ki2,
            "e_kj2": mom.e_kj2,
        }
    payload = {
        "mode": mode,
        "m": m,
        "replicas": replicas,
        "edge_count": edge_count,
        "pearson_r": summary.pearson_r,
        "moments": moments,
        "knn": {str(k): v for k, v in sorted(knn.items())},
        "degree_histogram": {str(k): v for k, v in sorted(histogram.counts.items())},
        "total_nodes": histogram.total_nodes,
    }
    path = Path(path)
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    return path


def write_gf_rows(rows, path: str | Path, fmt: str = "json", mode: str = DIRECTED) -> Path:
    """Write generating-function rows: coefficient of x^k per row."""
    path = Path(path)
    if fmt == "json":
        payload = {
            "mode": mode,
            "m": rows[0].m if rows else None,
            "rows": [
                {
                    "row": row.row_index,
                    "coefficients": {str(k): c for k, c in sorted(row.coefficients.items())},
                }
                for row in rows
            ],
        }
        path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
        return path
    if fmt != "csv":
        raise InvalidParameterError(f"format must be one of {_FORMATS}, got {fmt!r}")
    if not rows:
        raise InvalidParameterError("no rows to write")
    max_k = max(max(r.coefficients) for r in rows if r.coefficients)
    m = rows[0].m
    lines = [f"# mode={mode}", f"# m={m}"]
    lines.append(",".join(["row\\k"] + [str(k) for k in range(m, max_k + 1)]))
    for row in rows:
        lines.append(
            ",".join([str(row.row_index)] + [repr(row.coefficient(k)) for k in range(m, max_k + 1)])
        )
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
