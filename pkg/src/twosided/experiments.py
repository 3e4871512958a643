"""Figure-data experiments and the CSV schemas they emit.

Every experiment returns a header plus rows of already-formatted fields so
the CLI and the HTTP service serialize identically: floats carry 17
significant digits, infinite condition numbers appear as the literal token
`inf`, and output order is deterministic for a fixed seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import specmon
from .basis import BasisFamily, eval_matrix, hermite_family, sinc_family
from .linalg import condition_number, numerically_rank_deficient
from .sampling import (
    GridMode,
    SamplingScheme,
    SystemClass,
    assemble,
    classify,
    gen_equispaced,
    gen_uniform_random,
    recover,
    synthesize,
    synthesize_fourier,
)
from .uniqueness import heatmap_scan

CONDNUM_VARIANTS = ("hermite", "shared-interval", "dft-post", "sinc")
SINC_SEED_AVERAGES = 5


def fmt(value) -> str:
    """Serialize one numeric field: 17 significant digits, `inf` for infinity."""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    v = float(value)
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return f"{v:.17g}"


def render_csv(header, rows) -> str:
    """One header row plus formatted data rows, LF-terminated."""
    lines = [",".join(header)]
    lines.extend(",".join(fmt(field) if not isinstance(field, str) else field for field in row) for row in rows)
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class CsvTable:
    header: tuple
    rows: list

    def render(self) -> str:
        return render_csv(self.header, self.rows)


def reported_cond(matrix) -> float:
    """Condition number for reporting: rank-deficient systems read as inf.

    A system whose smallest singular value falls below the default
    pseudoinverse cutoff has no meaningful finite condition number; marking
    it infinite is what distinguishes exact singular configurations from
    merely ill-conditioned ones in the experiment tables.
    """
    if numerically_rank_deficient(matrix):
        return math.inf
    return condition_number(matrix)


# ---------------------------------------------------------------------------
# Heatmap over frequency pairs (3x3 Hermite system, one time node)

def heatmap_table(t0: float = 0.0, grid_min: float = -3.0, grid_max: float = 3.0,
                  resolution: int = 201, ratio_tol: float = 1.85e-5) -> CsvTable:
    if resolution < 2:
        raise ValueError(f"resolution must be >= 2, got {resolution}")
    grid = gen_equispaced(grid_min, grid_max, resolution, GridMode.INCLUSIVE_ENDPOINTS)
    log_ratio, mask = heatmap_scan(t0, grid, ratio_tol)
    rows = []
    for i in range(resolution):
        for j in range(resolution):
            rows.append((grid[i], grid[j], log_ratio[i, j], int(mask[i, j])))
    return CsvTable(header=("omega0", "omega1", "log_ratio", "singular_flag"), rows=rows)


# ---------------------------------------------------------------------------
# Condition-number sweeps under a fixed sample budget D = K + L

def _split_budget(d: int) -> tuple[int, int]:
    k = (d + 1) // 2
    return k, d - k


def _hermite_systems(d: int, grid_mode: GridMode):
    one = eval_matrix(hermite_family(d), gen_equispaced(1.0, 2.0, d, grid_mode))
    k, l = _split_budget(d)
    t = gen_equispaced(1.0, 2.0, k, grid_mode)
    w = gen_equispaced(-1.0, 0.0, l, grid_mode) if l else None
    two = assemble(hermite_family(d), SamplingScheme(t, w)).matrix
    return one, two


def condnum_table(variant: str, d_values, seed: int = 0, grid_mode: GridMode | None = None) -> CsvTable:
    """Condition numbers of one- and two-sided systems per budget D.

    Variants pin the figure geometry: `hermite` samples time on [1, 2] and
    frequency on [-1, 0]; `shared-interval` puts both domains on [-1, 1] and
    adds a random-nodes column; `dft-post` postprocesses half the time rows
    by a unitary DFT; `sinc` uses the shifted-sinc family with random nodes,
    a growing time window, frequency window [-3, 3], and a 5-seed average.
    """
    if variant not in CONDNUM_VARIANTS:
        raise ValueError(f"unknown condnum variant {variant!r}; expected one of {CONDNUM_VARIANTS}")
    d_list = [int(d) for d in d_values]
    if not d_list:
        raise ValueError("empty D range")
    if min(d_list) < 2:
        raise ValueError("budget D must be >= 2")

    if variant == "hermite":
        mode = GridMode.SPACING_OVER_COUNT if grid_mode is None else GridMode(grid_mode)
        header = ("D", "cond_one_sided", "cond_two_sided")
        rows = []
        for d in d_list:
            one, two = _hermite_systems(d, mode)
            rows.append((d, reported_cond(one), reported_cond(two)))
        return CsvTable(header, rows)

    if variant == "shared-interval":
        mode = GridMode.INCLUSIVE_ENDPOINTS if grid_mode is None else GridMode(grid_mode)
        header = ("D", "cond_one_sided", "cond_two_sided", "cond_random_two_sided")
        rows = []
        for d in d_list:
            fam = hermite_family(d)
            k, l = _split_budget(d)
            one = eval_matrix(fam, gen_equispaced(-1.0, 1.0, d, mode))
            two = assemble(fam, SamplingScheme(
                gen_equispaced(-1.0, 1.0, k, mode),
                gen_equispaced(-1.0, 1.0, l, mode) if l else None,
            )).matrix
            rand = assemble(fam, SamplingScheme(
                gen_uniform_random(-1.0, 1.0, k, seed=[seed, d, 0]),
                gen_uniform_random(-1.0, 1.0, l, seed=[seed, d, 1]),
            )).matrix
            rows.append((d, reported_cond(one), reported_cond(two), reported_cond(rand)))
        return CsvTable(header, rows)

    if variant == "dft-post":
        mode = GridMode.SPACING_OVER_COUNT if grid_mode is None else GridMode(grid_mode)
        header = ("D", "cond_one_sided", "cond_two_sided", "cond_after_dft")
        rows = []
        for d in d_list:
            one, two = _hermite_systems(d, mode)
            l = d // 2
            post = one.astype(np.complex128).copy()
            if l:
                dft = np.exp(-2j * math.pi * np.outer(np.arange(l), np.arange(l)) / l) / math.sqrt(l)
                post[d - l:] = dft @ post[d - l:]
            rows.append((d, reported_cond(one), reported_cond(two), reported_cond(post)))
        return CsvTable(header, rows)

    # sinc: time window [ceil(-D/2 + 1), floor(D/2)] grows with D.  The family
    # shifts sit at 0..D-1, so sampled nodes are translated onto that range;
    # the translation is a unitary row rescaling of the frequency block and
    # leaves every singular value unchanged.
    header = ("D", "cond_one_sided", "cond_two_sided")
    rows = []
    for d in d_list:
        w0 = math.ceil(-d / 2 + 1)
        w1 = math.floor(d / 2)
        fam = sinc_family(d)
        k, l = _split_budget(d)
        ones, twos = [], []
        for s in range(SINC_SEED_AVERAGES):
            t_one = gen_uniform_random(w0, w1, d, seed=[seed, d, s, 0]) - w0
            ones.append(reported_cond(eval_matrix(fam, t_one)))
            t_two = gen_uniform_random(w0, w1, k, seed=[seed, d, s, 1]) - w0
            w_two = gen_uniform_random(-3.0, 3.0, l, seed=[seed, d, s, 2])
            twos.append(reported_cond(assemble(fam, SamplingScheme(t_two, w_two)).matrix))
        rows.append((d, float(np.mean(ones)), float(np.mean(twos))))
    return CsvTable(header, rows)


# ---------------------------------------------------------------------------
# Spectrum-monitoring scenario

@dataclass(frozen=True)
class SpecmonResult:
    per_sample: CsvTable
    summary: CsvTable
    report: specmon.ScenarioReport

    def report_lines(self) -> list[str]:
        ref = specmon.REFERENCE_NMSE
        r = self.report
        return [
            f"mean NMSE over {r.trials} trials (seed {r.seed}):",
            f"  time-only {r.nmse_time_only:.4f}   +2 bins {r.nmse_plus2:.4f}   +4 bins {r.nmse_plus4:.4f}",
            f"  reference triple: {ref[0]:.2f} / {ref[1]:.2f} / {ref[2]:.2f}",
        ]


def specmon_tables(window_len: int = 1024, snr: float = 16.0, snr_is_db: bool = False,
                   trials: int = 10, seed: int = 0) -> SpecmonResult:
    """Per-sample traces for the first trial plus trial-mean NMSE summary."""
    results = specmon.run_trials(window_len, snr=snr, snr_is_db=snr_is_db, trials=trials, seed=seed)
    report = specmon.aggregate_trials(results, trials=trials, seed=seed)
    first = results[0]
    per_rows = [
        (m, first.truth[m], first.reconstructions[0][m], first.reconstructions[2][m], first.reconstructions[4][m])
        for m in range(window_len)
    ]
    per = CsvTable(header=("index", "truth", "recon_time_only", "recon_plus2", "recon_plus4"), rows=per_rows)
    summary = CsvTable(
        header=("nmse_time_only", "nmse_plus2", "nmse_plus4", "trials", "seed"),
        rows=[(report.nmse_time_only, report.nmse_plus2, report.nmse_plus4, report.trials, report.seed)],
    )
    return SpecmonResult(per_sample=per, summary=summary, report=report)


# ---------------------------------------------------------------------------
# General-purpose recovery from node/measurement files

def parse_nodes_csv(text: str) -> tuple[list[float], list[float]]:
    """Parse the two-column node file: `domain(T|F),value` per line."""
    time_nodes, freq_nodes = [], []
    for lineno, parts in _csv_lines(text, n_fields=2, header=("domain", "value")):
        domain = parts[0].strip().upper()
        if domain not in ("T", "F"):
            raise ValueError(f"line {lineno}: domain must be T or F, got {parts[0]!r}")
        value = _parse_float(parts[1], lineno, "value")
        (time_nodes if domain == "T" else freq_nodes).append(value)
    return time_nodes, freq_nodes


def parse_measurements_csv(text: str) -> tuple[list[tuple[float, complex]], list[tuple[float, complex]]]:
    """Parse the four-column measurement file: `domain,node,re,im` per line."""
    time_meas, freq_meas = [], []
    for lineno, parts in _csv_lines(text, n_fields=4, header=("domain", "node", "re", "im")):
        domain = parts[0].strip().upper()
        if domain not in ("T", "F"):
            raise ValueError(f"line {lineno}: domain must be T or F, got {parts[0]!r}")
        node = _parse_float(parts[1], lineno, "node")
        re = _parse_float(parts[2], lineno, "re")
        im = _parse_float(parts[3], lineno, "im")
        (time_meas if domain == "T" else freq_meas).append((node, complex(re, im)))
    return time_meas, freq_meas


def _csv_lines(text: str, n_fields: int, header: tuple):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split(",")
        if lineno == 1 and tuple(p.strip().lower() for p in parts) == header:
            continue
        if len(parts) != n_fields:
            raise ValueError(f"line {lineno}: expected {n_fields} comma-separated fields, got {len(parts)}")
        yield lineno, parts


def _parse_float(token: str, lineno: int, name: str) -> float:
    try:
        return float(token)
    except ValueError:
        raise ValueError(f"line {lineno}: could not parse {name} {token.strip()!r}") from None


@dataclass(frozen=True)
class RecoverResult:
    table: CsvTable
    classification: SystemClass
    warning: str | None

    def rows_of(self, kind: str) -> list:
        return [row for row in self.table.rows if row[0] == kind]


def make_family(kind: str, order: int, step: float = 1.0) -> BasisFamily:
    kind = kind.strip().lower()
    if kind == "hermite":
        return hermite_family(order)
    if kind == "sinc":
        return sinc_family(order, step)
    raise ValueError(f"unknown family {kind!r}; expected hermite or sinc")


def recover_table(family: BasisFamily, time_nodes, freq_nodes, time_meas, freq_meas,
                  rtol: float | None = None) -> RecoverResult:
    """Recover expansion coefficients from file-shaped node/measurement data.

    Measurement nodes must match the scheme nodes (within the duplicate
    tolerance); the output table carries the coefficients plus the recovered
    signal re-synthesized at the scheme's own nodes.
    """
    scheme = SamplingScheme(time_nodes, freq_nodes)
    c = _match_measurements(scheme.time_nodes, time_meas, "time")
    c_hat = _match_measurements(scheme.freq_nodes, freq_meas, "frequency")
    system = assemble(family, scheme)
    cls = classify(system)
    warning = None
    if cls is SystemClass.NUMERICALLY_SINGULAR:
        warning = "system is numerically singular; coefficients are the minimum-norm choice"
    coeffs = recover(system, c, c_hat, rtol)
    rows = [("coeff", fmt(n), fmt(z.real), fmt(z.imag)) for n, z in enumerate(coeffs)]
    f_vals = synthesize(family, coeffs, scheme.time_nodes) if scheme.k else []
    fhat_vals = synthesize_fourier(family, coeffs, scheme.freq_nodes) if scheme.l else []
    rows.extend(("time", fmt(t), fmt(z.real), fmt(z.imag)) for t, z in zip(scheme.time_nodes, f_vals))
    rows.extend(("freq", fmt(w), fmt(z.real), fmt(z.imag)) for w, z in zip(scheme.freq_nodes, fhat_vals))
    return RecoverResult(
        table=CsvTable(header=("kind", "key", "re", "im"), rows=rows),
        classification=cls,
        warning=warning,
    )


def _match_measurements(nodes: np.ndarray, measurements, label: str) -> np.ndarray:
    if len(measurements) != nodes.size:
        raise ValueError(f"{label} measurements count {len(measurements)} != node count {nodes.size}")
    ordered = sorted(measurements, key=lambda nv: nv[0])
    values = np.zeros(nodes.size, dtype=np.complex128)
    for i, (node, value) in enumerate(ordered):
        if abs(node - nodes[i]) > 1e-9:
            raise ValueError(f"{label} measurement node {node!r} does not match scheme node {nodes[i]!r}")
        values[i] = value
    return values
