"""Command-line surface: benchmark tables, figure data, single-point runs.

Subcommands
-----------
table FIG    regenerate one published benchmark table (I..VI, S1..S4,
             SST1, SST2) side by side with the reference values and
             absolute differences; exits nonzero if any cell misses its
             tolerance.
figure FIG   emit plot-ready columns for the qualitative figures
             (params-vs-g, params-vs-D, y0y1-profile, a3-vs-g-cubic).
single       one (family, D, g, state) cell as a full JSON report:
             optimized parameters, correction ladder, mesh cross-check.
lmm          low-lying mesh spectrum of one channel.
strong       strong-coupling expansion coefficients for one (family, D).

Exit codes: 0 success, 2 usage error, 3 tolerance failure, 4 numeric
failure.  CSV cells are rendered with 15 significant digits; all
comparisons happen on binary values.  ANHARMONIC_THREADS caps the number
of worker threads used for table/figure grids (default 1); row order in
the output is fixed regardless of the thread count.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .approximant import free_parameter_names, trial_wavefunction
from .core import Family, PotentialSpec, StateLabel
from .errors import AccuracyError
from .lmm import MeshConfig, lmm_node, lmm_solve
from .nonlin import corrected_energy, dominant_window
from .quadopt import optimize
from . import reference_data as ref
from .strong import strong_dominant, strong_series

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_TOLERANCE = 3
EXIT_NUMERIC = 4

_FAMILIES = {
    "quartic": Family.QUARTIC,
    "sextic": Family.SEXTIC,
    "cubic": Family.CUBIC_CONSTRAINED,
}

# default per-table tolerance on the checked column
_TABLE_TOL = {
    "I": 1e-9, "S1": 1e-9,
    "II": 1e-7, "III": 1e-7, "S2": 1e-7, "S3": 1e-7,
    "IV": 2e-5, "S4": 2e-5,
    "V": 1e-9, "SST1": 1e-9,
    "VI": 1e-7, "SST2": 1e-7,
}

_FIGURES = ("params-vs-g", "params-vs-D", "y0y1-profile", "a3-vs-g-cubic")


@dataclass(frozen=True)
class RunConfig:
    """Normalized form of one CLI invocation."""

    command: str
    target: str | None = None
    family: str = "quartic"
    D: tuple[int, ...] = (1, 2, 3, 6)
    gpow: tuple[float, ...] = (0.1, 1.0, 10.0)
    state: tuple[int, int] = (0, 0)
    constrained: bool = True
    fmt: str = "csv"
    out: str | None = None
    tol: float | None = None
    mesh_points: int = 160
    threads: int = 1
    extra: dict = field(default_factory=dict)

    def normalized(self) -> "RunConfig":
        return RunConfig(
            command=self.command,
            target=self.target,
            family=self.family,
            D=tuple(sorted(set(int(d) for d in self.D))),
            gpow=tuple(sorted(set(float(g) for g in self.gpow))),
            state=(int(self.state[0]), int(self.state[1])),
            constrained=bool(self.constrained),
            fmt=self.fmt,
            out=self.out,
            tol=None if self.tol is None else float(self.tol),
            mesh_points=int(self.mesh_points),
            threads=int(self.threads),
            extra=dict(self.extra),
        )


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return f"{x:.15g}"
    return str(x)


def _emit(header: list[str], rows: list[list], cfg: RunConfig) -> None:
    if cfg.fmt == "json":
        doc = [dict(zip(header, row)) for row in rows]
        text = json.dumps(doc, indent=2, default=str) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
        text = buf.getvalue()
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _pmap(fn, items, threads: int):
    """Ordered map over grid cells, optionally threaded."""
    if threads <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, items))


def _spec_for(family: Family, g_power: float) -> PotentialSpec:
    """Potential with the printed coupling g^(m-2) = g_power."""
    return PotentialSpec(family, g=g_power ** (1.0 / (family.m - 2)))


def _optimized_state(family, state, spec, constrained=True, effort="standard"):
    """Optimize one level, solving lower states first when radially excited."""
    lower = None
    if state.n_r:
        lower = []
        for k in range(state.n_r):
            low_state = StateLabel(D=state.D, n_r=k, ell=state.ell,
                                   parity_domain=state.parity_domain)
            rep_low = optimize(low_state, family, spec, constrained=constrained,
                               lower=lower or None, effort=effort)
            lower.append(trial_wavefunction(low_state, family, rep_low.params, spec.g))
    rep = optimize(state, family, spec, constrained=constrained,
                   lower=lower, effort=effort)
    psi = trial_wavefunction(state, family, rep.params, spec.g)
    return rep, psi


# ---------------------------------------------------------------------------
# table
# ---------------------------------------------------------------------------

def _energy_table_rows(table_id: str, cfg: RunConfig):
    family = ref.table_family(table_id)
    data = ref.ENERGY_TABLES[table_id]
    tol = cfg.tol if cfg.tol is not None else _TABLE_TOL[table_id]
    keys = sorted(data)

    def cell(key):
        D, gpow = key
        row_ref = data[key]
        state = ref.table_state(table_id, D)
        spec = _spec_for(family, gpow)
        rep, psi = _optimized_state(family, state, spec)
        mesh = lmm_solve(spec, state, MeshConfig(N=cfg.mesh_points))
        e_mesh = float(mesh.energies[state.n_r])
        conv = float(mesh.convergence[state.n_r])
        if row_ref.E_corrected is None:
            # only the variational energy is tabulated for this cell
            e2 = None
            e_corr = None
            checked, target = rep.E_var, row_ref.E_var
        else:
            cs = corrected_energy(psi, spec, n_max=2)
            e2 = cs.E_n[1]
            e_corr = cs.partial_sums()[1]
            checked, target = e_corr, row_ref.E_corrected
        diff = abs(checked - target)
        return [D, gpow, rep.E_var, e2, e_corr, target, diff,
                e_mesh, abs(checked - e_mesh), conv], diff <= tol, (key, diff, tol)

    results = _pmap(cell, keys, cfg.threads)
    header = ["D", "g_power", "E_var", "E2", "E_corrected", "reference",
              "abs_diff", "lmm", "lmm_diff", "lmm_convergence"]
    return header, results


def _node_table_rows(table_id: str, cfg: RunConfig):
    family = ref.table_family(table_id)
    data = ref.NODE_TABLES[table_id]
    tol = cfg.tol if cfg.tol is not None else _TABLE_TOL[table_id]
    keys = sorted(data)

    def cell(key):
        D, gpow = key
        row_ref = data[key]
        state = StateLabel(D=D, n_r=1, ell=0)
        spec = _spec_for(family, gpow)
        rep, psi = _optimized_state(family, state, spec)
        r0_var = rep.params.poly_roots[0]
        mcfg = MeshConfig(N=cfg.mesh_points)
        mesh = lmm_solve(spec, state, mcfg)
        e_mesh = float(mesh.energies[1])
        r0_mesh = lmm_node(spec, state, mcfg)
        diff = abs(r0_var - row_ref.r0)
        return [D, gpow, rep.E_var, e_mesh, row_ref.E, abs(e_mesh - row_ref.E),
                r0_var, r0_mesh, row_ref.r0, diff,
                float(mesh.convergence[1])], diff <= tol, (key, diff, tol)

    results = _pmap(cell, keys, cfg.threads)
    header = ["D", "g_power", "E_var", "E_lmm", "E_reference", "E_diff",
              "r0_var", "r0_lmm", "r0_reference", "r0_var_diff",
              "lmm_convergence"]
    return header, results


def _strong_table_rows(table_id: str, cfg: RunConfig):
    dominant = table_id in ref.STRONG_DOMINANT
    data = (ref.STRONG_DOMINANT if dominant else ref.STRONG_SUBDOMINANT)[table_id]
    family = ref.table_family(table_id)
    tol = cfg.tol if cfg.tol is not None else _TABLE_TOL[table_id]
    keys = sorted(data)

    def cell(D):
        row_ref = data[D]
        if dominant:
            dom = strong_dominant(family, D)
            first, corr, second = dom.eps0, dom.eps0_correction, dom.eps0_corrected
            bench = dom.eps0_lmm
        else:
            series = strong_series(family, D)
            first, corr, second = series.sub, series.sub_correction, series.sub_corrected
            bench = None
        diff = abs(second - row_ref.second)
        return [D, first, corr, second, row_ref.second, diff,
                bench], diff <= tol, ((D,), diff, tol)

    results = _pmap(cell, keys, cfg.threads)
    header = ["D", "first_order", "correction", "second_order",
              "reference", "abs_diff", "lmm"]
    return header, results


def cmd_table(cfg: RunConfig) -> int:
    table_id = cfg.target
    if table_id in ref.ENERGY_TABLES:
        header, results = _energy_table_rows(table_id, cfg)
    elif table_id in ref.NODE_TABLES:
        header, results = _node_table_rows(table_id, cfg)
    elif table_id in ref.STRONG_DOMINANT or table_id in ref.STRONG_SUBDOMINANT:
        header, results = _strong_table_rows(table_id, cfg)
    else:
        print(f"unknown table id {table_id!r}; choose from "
              f"{', '.join(ref.TABLE_IDS)}", file=sys.stderr)
        return EXIT_USAGE

    rows = [r for r, _ok, _info in results]
    _emit(header, rows, cfg)
    failures = [info for _r, ok, info in results if not ok]
    for key, diff, tol in failures:
        print(f"table {table_id} cell {key}: |diff| = {diff:.3e} > tol {tol:g}",
              file=sys.stderr)
    return EXIT_TOLERANCE if failures else EXIT_OK


# ---------------------------------------------------------------------------
# figure
# ---------------------------------------------------------------------------

def _figure_params_vs_g(cfg: RunConfig):
    family = _FAMILIES[cfg.family]
    D = cfg.D[0]
    import numpy as np
    gpows = cfg.extra.get("grid") or list(np.geomspace(0.01, 10.0, 20))
    names = free_parameter_names(family)
    state = StateLabel(D=D, n_r=0, ell=0)
    rows = []
    init = None
    for gpow in gpows:
        spec = _spec_for(family, gpow)
        rep = optimize(state, family, spec, init=init)
        init = rep.params
        rows.append([gpow, rep.E_var] + [getattr(rep.params, n) for n in names])
    return ["g_power", "E_var"] + list(names), rows


def _figure_params_vs_D(cfg: RunConfig):
    family = _FAMILIES[cfg.family]
    gpow = cfg.gpow[0]
    names = free_parameter_names(family)
    spec = _spec_for(family, gpow)
    rows = []
    for D in cfg.D:
        state = StateLabel(D=D, n_r=0, ell=0)
        rep = optimize(state, family, spec)
        rows.append([D, rep.E_var] + [getattr(rep.params, n) for n in names])
    return ["D", "E_var"] + list(names), rows


def _figure_y0y1(cfg: RunConfig):
    import numpy as np
    family = _FAMILIES[cfg.family]
    D = cfg.D[0]
    gpow = cfg.gpow[0]
    state = StateLabel(D=D, n_r=0, ell=0)
    spec = _spec_for(family, gpow)
    rep, psi = _optimized_state(family, state, spec, effort="high")
    cs = corrected_energy(psi, spec, n_max=1)
    r_hi = dominant_window(psi)
    r = np.linspace(cs.grid[0], r_hi, 400)
    y0 = psi.y(r)
    y1 = np.interp(r, cs.grid, cs.y_n[0])
    rows = [[float(ri), float(a), float(b)] for ri, a, b in zip(r, y0, y1)]
    return ["r", "y0", "y1"], rows


def _figure_a3_vs_g(cfg: RunConfig):
    import numpy as np
    family = Family.CUBIC_CONSTRAINED
    Ds = cfg.D if cfg.D != (1, 2, 3, 6) else (1, 2, 3, 4, 5, 6)
    gs = cfg.extra.get("grid") or list(np.geomspace(0.05, 5.0, 25))
    cols = {}
    for D in Ds:
        state = StateLabel(D=D, n_r=0, ell=0)
        init = None
        vals = []
        for g in gs:
            spec = PotentialSpec(family, g=g)
            rep = optimize(state, family, spec, init=init)
            init = rep.params
            vals.append(rep.params.a3)
        cols[D] = vals
    rows = [[g] + [cols[D][i] for D in Ds] for i, g in enumerate(gs)]
    return ["g"] + [f"a3_D{D}" for D in Ds], rows


def cmd_figure(cfg: RunConfig) -> int:
    builders = {
        "params-vs-g": _figure_params_vs_g,
        "params-vs-D": _figure_params_vs_D,
        "y0y1-profile": _figure_y0y1,
        "a3-vs-g-cubic": _figure_a3_vs_g,
    }
    if cfg.target not in builders:
        print(f"unknown figure id {cfg.target!r}; choose from "
              f"{', '.join(_FIGURES)}", file=sys.stderr)
        return EXIT_USAGE
    header, rows = builders[cfg.target](cfg)
    _emit(header, rows, cfg)
    return EXIT_OK


# ---------------------------------------------------------------------------
# single / lmm / strong
# ---------------------------------------------------------------------------

def cmd_single(cfg: RunConfig) -> int:
    family = _FAMILIES[cfg.family]
    D = cfg.D[0]
    gpow = cfg.gpow[0]
    n_r, ell = cfg.state
    state = StateLabel(D=D, n_r=n_r, ell=ell)
    spec = _spec_for(family, gpow)
    rep, psi = _optimized_state(family, state, spec, constrained=cfg.constrained)
    mesh = lmm_solve(spec, state, MeshConfig(N=cfg.mesh_points))
    e_mesh = float(mesh.energies[n_r])

    doc = {
        "family": cfg.family,
        "D": D,
        "g_power": gpow,
        "g": spec.g,
        "state": {"n_r": n_r, "ell": ell},
        "constrained": cfg.constrained,
        "E_var": rep.E_var,
        "params": json.loads(rep.params.to_json()),
        "lmm": {"E": e_mesh, "convergence": float(mesh.convergence[n_r])},
        "E_var_minus_lmm": rep.E_var - e_mesh,
    }
    if n_r == 0:
        cs = corrected_energy(psi, spec, n_max=2)
        sums = cs.partial_sums()
        doc["corrections"] = {
            "E0": cs.E0,
            "E_n": list(cs.E_n),
            "partial_sums": list(sums),
            "E_corrected": sums[1],
            "E_corrected_minus_lmm": sums[1] - e_mesh,
        }
    else:
        doc["node"] = {
            "r0_var": rep.params.poly_roots[0],
            "r0_lmm": lmm_node(spec, state, MeshConfig(N=cfg.mesh_points)),
        }
    text = json.dumps(doc, indent=2) + "\n"
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_lmm(cfg: RunConfig) -> int:
    family = _FAMILIES[cfg.family]
    n_r, ell = cfg.state
    rows = []
    for D in cfg.D:
        for gpow in cfg.gpow:
            state = StateLabel(D=D, n_r=n_r, ell=ell)
            spec = _spec_for(family, gpow)
            mesh = lmm_solve(spec, state, MeshConfig(N=cfg.mesh_points))
            for j, (e, c) in enumerate(zip(mesh.energies, mesh.convergence)):
                rows.append([D, gpow, j, ell, float(e), float(c)])
    _emit(["D", "g_power", "n_r", "ell", "E", "convergence"], rows, cfg)
    return EXIT_OK


def cmd_strong(cfg: RunConfig) -> int:
    family = _FAMILIES[cfg.family]
    D = cfg.D[0]
    series = strong_series(family, D)
    lead, gap = series.g_exponents
    doc = {
        "family": cfg.family,
        "D": D,
        "eps0": series.eps0,
        "eps0_corrected": series.eps0_corrected,
        "sub": series.sub,
        "sub_corrected": series.sub_corrected,
        "eps0_lmm": series.eps0_lmm,
        "g_exponents": {"leading": lead, "gap": gap},
    }
    text = json.dumps(doc, indent=2) + "\n"
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _parse_state(text: str) -> tuple[int, int]:
    try:
        n_r, ell = (int(t) for t in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(
            "state must be 'n_r,ell', e.g. --state 1,0") from exc
    if n_r < 0 or ell < 0:
        raise argparse.ArgumentTypeError("quantum numbers must be nonnegative")
    return n_r, ell


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", choices=sorted(_FAMILIES), default="quartic")
    p.add_argument("--D", type=int, nargs="+", default=None,
                   help="dimension list (default 1 2 3 6)")
    p.add_argument("--gpow", type=float, nargs="+", default=None,
                   help="printed coupling powers g^(m-2) (default 0.1 1 10)")
    p.add_argument("--state", type=_parse_state, default=(0, 0),
                   help="quantum numbers n_r,ell (default 0,0)")
    p.add_argument("--constrained", dest="constrained", action="store_true",
                   default=True)
    p.add_argument("--unconstrained", dest="constrained", action="store_false")
    p.add_argument("--format", dest="fmt", choices=("csv", "json"),
                   default="csv")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--tol", type=float, default=None,
                   help="override the per-table tolerance")
    p.add_argument("--mesh-points", type=int, default=160,
                   help="mesh size for benchmark cross-checks")
    p.add_argument("--config", default=None,
                   help="key-value text file overriding any flag")


def _apply_config_file(args: argparse.Namespace) -> None:
    """'key = value' lines override parsed flags; keys use flag dest names."""
    if not args.config:
        return
    casts = {
        "D": lambda v: [int(t) for t in v.split()],
        "gpow": lambda v: [float(t) for t in v.split()],
        "state": _parse_state,
        "tol": float,
        "mesh_points": int,
        "constrained": lambda v: v.strip().lower() in ("1", "true", "yes"),
    }
    with open(args.config) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, _, value = line.partition("=")
            key = key.strip().replace("-", "_")
            value = value.strip()
            if not hasattr(args, key):
                raise SystemExit(f"unknown config key {key!r}")
            setattr(args, key, casts.get(key, str)(value))


def _build_config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        target=getattr(args, "target", None),
        family=args.family,
        D=tuple(args.D) if args.D else (1, 2, 3, 6),
        gpow=tuple(args.gpow) if args.gpow else (0.1, 1.0, 10.0),
        state=args.state,
        constrained=args.constrained,
        fmt=args.fmt,
        out=args.out,
        tol=args.tol,
        mesh_points=args.mesh_points,
        threads=max(1, int(os.environ.get("ANHARMONIC_THREADS", "1") or 1)),
    ).normalized()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="anharmonic",
        description="Benchmark-quality spectra of radial anharmonic oscillators.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_table = sub.add_parser("table", help="regenerate a benchmark table")
    p_table.add_argument("target", metavar="TABLE_ID",
                         help=f"one of {', '.join(ref.TABLE_IDS)}")
    _add_common(p_table)

    p_fig = sub.add_parser("figure", help="emit plot data for a figure")
    p_fig.add_argument("target", metavar="FIGURE_ID",
                       help=f"one of {', '.join(_FIGURES)}")
    _add_common(p_fig)

    for name, help_text in (
        ("single", "full report for one (family, D, g, state) cell"),
        ("lmm", "mesh spectrum of one channel"),
        ("strong", "strong-coupling coefficients for one (family, D)"),
    ):
        p = sub.add_parser(name, help=help_text)
        _add_common(p)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config_file(args)
    except OSError as exc:
        print(f"cannot read config file: {exc}", file=sys.stderr)
        return EXIT_USAGE
    cfg = _build_config(args)

    handlers = {
        "table": cmd_table,
        "figure": cmd_figure,
        "single": cmd_single,
        "lmm": cmd_lmm,
        "strong": cmd_strong,
    }
    try:
        return handlers[cfg.command](cfg)
    except AccuracyError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
