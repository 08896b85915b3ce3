"""Benchmark harness: manifests of circuit/device pairs, CSV reporting.

Rows carry raw counts plus sum-normalized columns so runs of different
scales stay comparable; the harness also emits the Pearson correlation
matrix of the bound columns and the distribution of winning inverse
temperatures.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .assignment import DEFAULT_CLASS_BUDGET, assign_qubits, max_swap_bound
from .circuits import interaction_graph, parse_circuit_json, parse_circuit_qasm_subset, parse_device
from .errors import ParseError, SwapBoundError, SweepError, ValidationError
from .oracle import ORACLE_MAX_VERTICES, brute_force_min_swaps
from .uncomplexity import EPS_IMP, EPS_ISO, beta_sweep, standard_beta_grid, validate_beta_grid

HIGH_TEMP_MAX = 1e-3  # upper edge of the high-temperature band reported on


@dataclass(frozen=True)
class RunConfig:
    """Validated knobs shared by the CLI commands."""

    grid: tuple[float, ...] = field(default_factory=standard_beta_grid)
    eps_iso: float = EPS_ISO
    eps_imp: float = EPS_IMP
    stall_budget: int | None = None
    class_budget: int = DEFAULT_CLASS_BUDGET
    oracle_guard: int = ORACLE_MAX_VERTICES
    output_format: str = "json"
    seed: int = 0  # reserved for randomized suites; never steers the algorithms

    def __post_init__(self):
        validate_beta_grid(self.grid)
        if not (0.0 < self.eps_iso <= 1e-3):
            raise ValidationError(f"eps_iso out of range (0, 1e-3]: {self.eps_iso}")
        if not (0.0 < self.eps_imp <= 1e-3):
            raise ValidationError(f"eps_imp out of range (0, 1e-3]: {self.eps_imp}")
        if self.stall_budget is not None and self.stall_budget < 0:
            raise ValidationError("stall_budget must be >= 0")
        if self.class_budget < 1:
            raise ValidationError("class_budget must be >= 1")
        if not (1 <= self.oracle_guard <= ORACLE_MAX_VERTICES):
            raise ValidationError(
                f"oracle_guard must be within [1, {ORACLE_MAX_VERTICES}]"
            )
        if self.output_format not in ("json", "csv"):
            raise ValidationError(f"unknown output format {self.output_format!r}")


@dataclass
class BenchRow:
    benchmark: str
    device: str
    ig_nodes: int = 0
    ig_edges: int = 0
    gate_count: int = 0
    ged: int | None = None
    u_swap: int | None = None
    beta_star: float | None = None
    m_swap_max: int | None = None
    oracle: int | None = None
    assign_ms: float = 0.0
    sweep_ms: float = 0.0
    oracle_ms: float = 0.0
    stalled: bool = False
    method: str = ""
    error: str = ""


BENCH_COLUMNS = [
    "benchmark",
    "device",
    "ig_nodes",
    "ig_edges",
    "gate_count",
    "ged",
    "u_swap",
    "beta_star",
    "m_swap_max",
    "oracle",
    "assign_ms",
    "sweep_ms",
    "oracle_ms",
    "stalled",
    "method",
    "error",
    "u_swap_norm",
    "m_swap_max_norm",
    "oracle_norm",
]


def fmt_float(x: float) -> str:
    return f"{x:.15g}"


def format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return fmt_float(value)
    return str(value)


def read_circuit_file(path: Path):
    data = path.read_bytes()
    if path.suffix.lower() == ".qasm":
        return parse_circuit_qasm_subset(data, name=path.stem)
    circuit = parse_circuit_json(data)
    if not circuit.name:
        circuit = type(circuit)(circuit.num_qubits, circuit.two_qubit_gates, path.stem)
    return circuit


def read_device_file(path: Path):
    return parse_device(path.read_bytes())


def load_manifest(path: Path) -> list[tuple[Path, Path]]:
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed manifest: {exc.msg}", exc.lineno, exc.colno) from exc
    if not isinstance(doc, dict) or not isinstance(doc.get("pairs"), list):
        raise ParseError("manifest must be an object with a 'pairs' list")
    base = path.parent
    pairs = []
    for entry in doc["pairs"]:
        if not isinstance(entry, dict) or "circuit" not in entry or "device" not in entry:
            raise ParseError(f"manifest entry {entry!r} needs 'circuit' and 'device'")
        pairs.append((base / entry["circuit"], base / entry["device"]))
    return pairs


def run_pair(circuit_path: Path, device_path: Path, config: RunConfig) -> BenchRow:
    row = BenchRow(benchmark=circuit_path.stem, device=device_path.stem)
    try:
        circuit = read_circuit_file(circuit_path)
        device = read_device_file(device_path)
        row.benchmark = circuit.name or circuit_path.stem
        row.device = device.name or device_path.stem
        ig = interaction_graph(circuit)
        row.ig_nodes = ig.graph.n
        row.ig_edges = ig.graph.num_edges()
        row.gate_count = ig.gate_count()

        t0 = time.perf_counter()
        placed = assign_qubits(ig, device.coupling, class_budget=config.class_budget)
        row.assign_ms = (time.perf_counter() - t0) * 1000
        row.ged = placed.ged
        row.method = placed.method
        a = placed.assignment
        row.m_swap_max = max_swap_bound(ig, a)

        t0 = time.perf_counter()
        sweep = beta_sweep(
            ig,
            a,
            config.grid,
            eps_iso=config.eps_iso,
            eps_imp=config.eps_imp,
            stall_budget=config.stall_budget,
        )
        row.sweep_ms = (time.perf_counter() - t0) * 1000
        row.u_swap = sweep.m_star
        row.beta_star = sweep.beta_star

        if ig.graph.n <= config.oracle_guard:
            t0 = time.perf_counter()
            row.oracle = brute_force_min_swaps(ig.graph, a)
            row.oracle_ms = (time.perf_counter() - t0) * 1000
    except (SwapBoundError, OSError) as exc:
        row.error = str(exc)
        row.stalled = isinstance(exc, SweepError)
    return row


def run_manifest(pairs: list[tuple[Path, Path]], config: RunConfig, jobs: int = 1) -> list[BenchRow]:
    if jobs <= 1:
        return [run_pair(c, d, config) for c, d in pairs]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(run_pair, c, d, config) for c, d in pairs]
    return [f.result() for f in futures]  # manifest order preserved


def _normalize(values: list[float | None]) -> list[float | None]:
    total = sum(v for v in values if v is not None)
    out: list[float | None] = []
    for v in values:
        if v is None:
            out.append(None)
        elif total > 0:
            out.append(v / total)
        else:
            out.append(0.0)
    return out


def rows_to_csv(rows: list[BenchRow]) -> str:
    u_norm = _normalize([r.u_swap for r in rows])
    m_norm = _normalize([r.m_swap_max for r in rows])
    o_norm = _normalize([r.oracle for r in rows])
    lines = [",".join(BENCH_COLUMNS)]
    for r, un, mn, on in zip(rows, u_norm, m_norm, o_norm):
        cells = [
            r.benchmark,
            r.device,
            r.ig_nodes,
            r.ig_edges,
            r.gate_count,
            r.ged,
            r.u_swap,
            r.beta_star,
            r.m_swap_max,
            r.oracle,
            r.assign_ms,
            r.sweep_ms,
            r.oracle_ms,
            r.stalled,
            r.method,
            r.error,
            un,
            mn,
            on,
        ]
        lines.append(",".join(format_cell(c) for c in cells))
    return "\n".join(lines) + "\n"


def pearson(xs: list[float], ys: list[float]) -> float:
    n = len(xs)
    if n == 0 or n != len(ys):
        raise ValidationError("pearson needs two equal-length non-empty columns")
    mx = sum(xs) / n
    my = sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    syy = sum((y - my) ** 2 for y in ys)
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    if sxx == 0.0 or syy == 0.0:
        return math.nan
    return sxy / math.sqrt(sxx * syy)


def correlation_csv(rows: list[BenchRow]) -> str:
    """Pearson matrix over the bound columns, oracle included when present."""
    columns: dict[str, list[float]] = {"u_swap": [], "m_swap_max": []}
    with_oracle = [r for r in rows if r.oracle is not None and r.u_swap is not None]
    complete = [r for r in rows if r.u_swap is not None]
    for r in complete:
        columns["u_swap"].append(float(r.u_swap))
        columns["m_swap_max"].append(float(r.m_swap_max))
    names = ["u_swap", "m_swap_max"]
    if with_oracle:
        names.append("oracle")
    lines = ["metric," + ",".join(names)]
    for a in names:
        cells = [a]
        for b in names:
            if "oracle" in (a, b):
                xs = [_col(r, a) for r in with_oracle]
                ys = [_col(r, b) for r in with_oracle]
            else:
                xs = columns[a]
                ys = columns[b]
            cells.append(fmt_float(pearson(xs, ys)) if xs else "")
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _col(row: BenchRow, name: str) -> float:
    return float(getattr(row, name))


def beta_histogram(rows: list[BenchRow], grid: tuple[float, ...]) -> list[tuple[float, int]]:
    counts = {b: 0 for b in grid}
    for r in rows:
        if r.beta_star is not None and r.beta_star in counts:
            counts[r.beta_star] += 1
    return [(b, counts[b]) for b in grid]


def histogram_csv(hist: list[tuple[float, int]]) -> str:
    lines = ["beta,count"]
    lines += [f"{fmt_float(b)},{c}" for b, c in hist]
    return "\n".join(lines) + "\n"


def bench_summary(rows: list[BenchRow], grid: tuple[float, ...]) -> dict:
    ok = [r for r in rows if not r.error and r.u_swap is not None]
    non_iso = [r for r in ok if (r.ged or 0) > 0]
    high_temp = [r for r in non_iso if r.beta_star is not None and r.beta_star <= HIGH_TEMP_MAX]
    violations = [
        (r.benchmark, r.device)
        for r in ok
        if r.oracle is not None and not (r.u_swap <= r.oracle <= r.m_swap_max)
    ]
    return {
        "rows": len(rows),
        "failed_rows": sum(1 for r in rows if r.error),
        "isomorphic_rows": sum(1 for r in ok if r.ged == 0),
        "non_isomorphic_rows": len(non_iso),
        "high_temperature_count": len(high_temp),
        "high_temperature_fraction": (len(high_temp) / len(non_iso)) if non_iso else None,
        "beta_star_within_grid": all(
            grid[0] <= r.beta_star <= grid[-1] for r in ok if r.beta_star is not None
        ),
        "sandwich_violations": violations,
    }
