"""Command line front end: sample fields, verify claims, propagate, emit figure data.

Commands
--------
sample     write closed-form states/potentials on grids to CSV data files
verify     run the verification suite, write reports, exit nonzero on failure
propagate  Crank-Nicolson run against the closed form, write field + metrics
figures    emit the five standard figure datasets (probability densities at
           t = 1/4, 1/2, 3/4, 1 for each family)
rerun      repeat a command from its manifest file

Every command writes a ``manifest.json`` recording the resolved parameters;
``rerun`` reproduces identical data files from it.  The default output
directory is taken from the MOVINGWELL_OUTDIR environment variable when set.

Exit status: 0 success, 1 verification failure, 2 usage error, 3 runtime or
numerical error.

File format: comma-separated values, one record per (time, grid point), with
a header row.  Columns: t, x, re_psi, im_psi, density, potential, wall.  The
``density`` column is the normalized probability density (states of the
Poschl-Teller and confluent families are divided by their quadrature norm at
each time; moving-box states are already unit norm).  Wall rows are marked
with wall=1; their potential cell holds 0.0 and is not meaningful (the
physical potential is infinite there).  No cell is ever NaN or infinite.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__, checks, families, verify
from .core import ConfluentConfig, SampledField, WellConfig, wall_position
from .errors import MovingWellError
from .propagate import PropagationConfig, l2_distance, l2_norm, propagate, sample_state

FIGURE_TIMES = (0.25, 0.5, 0.75, 1.0)

# parameters behind the five standard figure datasets
FIGURE_SPECS = {
    "fig1": {"family": "box", "states": ["1", "2", "3"]},
    "fig2": {"family": "pt", "states": ["2", "3", "4"]},
    "fig3": {"family": "confluent", "m": 2, "omega": 0.4, "states": ["1", "eps", "3"]},
    "fig4": {"family": "confluent", "m": 2, "omega": -1.0, "states": ["1", "3", "4"]},
    "fig5": {"family": "confluent", "m": 2, "omega": 0.0, "states": ["1", "3", "4"]},
}


def _fmt(value: float) -> str:
    """Shortest decimal string that round-trips to the same float."""
    return repr(float(value))


def _out_dir(params: dict) -> Path:
    out = Path(params.get("out") or os.environ.get("MOVINGWELL_OUTDIR", "."))
    out.mkdir(parents=True, exist_ok=True)
    return out


def _well_config(params: dict) -> WellConfig:
    return WellConfig(L=params.get("L", 1.0), c1=params.get("c1", 1.0),
                      c2=params.get("c2", 0.0))


def _family(params: dict) -> families.Family:
    kind = params["family"]
    if kind == "confluent":
        cc = ConfluentConfig(m=params.get("m", 2), omega=params.get("omega", 0.4))
        return families.Family.confluent_family(cc)
    return families.Family(kind)


def _state_tag(family: families.Family, selector) -> str:
    base = {"box": "box", "pt": "pt", "confluent": "confluent"}[family.kind]
    if family.kind == "confluent":
        cc = family.confluent
        base += f"_m{cc.m}_omega{cc.omega:g}"
    return f"{base}_{'eps' if selector == 'eps' else 'n%d' % int(selector)}"


def write_manifest(out: Path, command: str, params: dict) -> Path:
    payload = {
        "command": command,
        "parameters": params,
        "version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }
    path = out / "manifest.json"
    path.write_text(json.dumps(payload, indent=2, sort_keys=True))
    return path


def write_field_csv(path: Path, rows) -> None:
    with path.open("w") as fh:
        fh.write("t,x,re_psi,im_psi,density,potential,wall\n")
        for t, x, re, im, dens, pot, wall in rows:
            fh.write(f"{_fmt(t)},{_fmt(x)},{_fmt(re)},{_fmt(im)},"
                     f"{_fmt(dens)},{_fmt(pot)},{int(wall)}\n")


def read_field_csv(path, at: float | None = None) -> SampledField:
    """Load one snapshot from a grid CSV written by this tool.

    ``at`` selects the time for multi-time files; a file holding a single
    time needs no selector.
    """
    by_t: dict[float, list] = {}
    with Path(path).open() as fh:
        for row in csv.DictReader(fh):
            by_t.setdefault(float(row["t"]), []).append(
                (float(row["x"]), float(row["re_psi"]), float(row["im_psi"])))
    if at is None:
        if len(by_t) != 1:
            raise ValueError(
                f"{path} holds {len(by_t)} times; pass the time to load")
        at = next(iter(by_t))
    if at not in by_t:
        raise ValueError(f"{path} has no snapshot at t={at}")
    triples = sorted(by_t[at])
    xs = np.array([p[0] for p in triples])
    values = np.array([complex(p[1], p[2]) for p in triples])
    return SampledField(t=at, x_min=float(xs[0]), x_max=float(xs[-1]), values=values)


def _sampled_rows(family: families.Family, selector, times, n_points: int,
                  cfg: WellConfig):
    """Rows of the per-state dataset: normalized density plus potential."""
    state = family.state(selector, cfg)
    potential = family.potential(cfg)
    normalize = not (family.kind == "box")
    for t in times:
        l = wall_position(t, cfg)
        x = np.linspace(0.0, l, n_points)
        vals = np.asarray(state(x, t), dtype=complex)
        dens = np.abs(vals) ** 2
        if normalize:
            dens = dens / verify.norm(state, t, cfg)
        wall = (x == 0.0) | (x == l)
        pot = np.asarray(potential(x, t), dtype=float)
        pot = np.where(wall, 0.0, pot)
        for j in range(n_points):
            yield (t, x[j], vals[j].real, vals[j].imag, dens[j], pot[j], wall[j])


class UsageError(Exception):
    """Bad flag combination at the command level (exit status 2)."""


def _resolve_family(params: dict, selectors=()) -> families.Family:
    try:
        family = _family(params)
        for selector in selectors:
            family.validate_selector(selector)
    except (MovingWellError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    return family


def cmd_sample(params: dict) -> int:
    out = _out_dir(params)
    cfg = _well_config(params)
    family = _resolve_family(params, params["states"])
    times = params["times"]
    n_points = params.get("points", 2001)
    for selector in params["states"]:
        tag = _state_tag(family, selector)
        write_field_csv(out / f"{tag}.csv",
                        _sampled_rows(family, selector, times, n_points, cfg))
    write_manifest(out, "sample", params)
    return 0


def cmd_verify(params: dict) -> int:
    out = _out_dir(params)
    cfg = _well_config(params)
    if params.get("negative_controls"):
        reports = [checks.negative_controls_report(cfg)]
    elif params.get("family"):
        cc = None
        if params["family"] == "confluent":
            cc = ConfluentConfig(m=params.get("m", 2), omega=params.get("omega", 0.4))
        reports = checks.family_reports(params["family"], cfg, cc)
    else:
        cc = ConfluentConfig(m=params.get("m", 2), omega=params.get("omega", 0.4))
        reports = checks.full_suite(cfg, cc)

    combined = []
    ok = True
    for i, rep in enumerate(reports):
        stem = f"report_{i:02d}_{rep.subject.replace(' ', '_').replace('/', '-')}"
        (out / f"{stem}.txt").write_text(rep.to_text())
        combined.append(json.loads(rep.to_json()))
        ok &= rep.all_passed
        for line in rep.to_text().splitlines():
            print(line)
        print()
    (out / "reports.json").write_text(json.dumps(combined, indent=2, sort_keys=True))
    write_manifest(out, "verify", params)
    print(f"overall: {'PASS' if ok else 'FAIL'}")
    return 0 if ok else 1


def _initial_state(family: families.Family, selector: str, cfg: WellConfig):
    """A state callable from a selector like '1', 'eps' or '1+2' (superposition)."""
    parts = selector.split("+")
    if len(parts) == 1:
        return family.state(parts[0], cfg)
    terms = [family.state(p, cfg) for p in parts]
    weight = 1.0 / np.sqrt(len(terms))

    def combined(x, t):
        return weight * sum(np.asarray(term(x, t), dtype=complex) for term in terms)

    return combined


def cmd_propagate(params: dict) -> int:
    out = _out_dir(params)
    cfg = _well_config(params)
    family = _resolve_family(params, str(params["n"]).split("+"))
    state = _initial_state(family, str(params["n"]), cfg)
    t0, t1 = params["t_from"], params["t_to"]
    nx = params.get("nx", 2000)

    if params.get("initial_from"):
        # start from an emitted snapshot instead of resampling the closed
        # form; the error metric still compares against the selector's state
        init = read_field_csv(params["initial_from"], at=t0)
        nx = init.n_points
    else:
        init = sample_state(state, t0, cfg, nx)
    nrm0 = l2_norm(init)
    init = SampledField(t=t0, x_min=init.x_min, x_max=init.x_max,
                        values=init.values / nrm0)
    if t1 == t0:
        final, reference = init, init
    else:
        pc = PropagationConfig(family=family, n_space=nx, dt=params.get("dt", 1e-4),
                               t_start=t0, t_end=t1)
        final = propagate(init, pc, cfg)
        reference = sample_state(state, t1, cfg, nx)
        reference = SampledField(t=t1, x_min=reference.x_min, x_max=reference.x_max,
                                 values=reference.values / l2_norm(reference))
    error = l2_distance(final, reference)
    drift = abs(l2_norm(final) - l2_norm(init))

    rows = ((final.t, x, v.real, v.imag, abs(v) ** 2, 0.0, x in (0.0, final.x_max))
            for x, v in zip(final.x, final.values))
    write_field_csv(out / "final_field.csv", rows)
    metrics = {"l2_error_vs_closed_form": error, "norm_drift": drift,
               "t_start": t0, "t_end": t1, "n_space": nx,
               "dt": params.get("dt", 1e-4)}
    (out / "metrics.json").write_text(json.dumps(metrics, indent=2, sort_keys=True))
    write_manifest(out, "propagate", params)
    print(f"L2 error vs closed form: {error:.6e}")
    print(f"norm drift:              {drift:.6e}")
    return 0


def cmd_figures(params: dict) -> int:
    out = _out_dir(params)
    n_points = params.get("points", 2001)
    cfg = _well_config(params)
    for name, spec in FIGURE_SPECS.items():
        sub = out / name
        sub.mkdir(parents=True, exist_ok=True)
        sub_params = {"family": spec["family"], "states": spec["states"],
                      "times": list(FIGURE_TIMES), "points": n_points,
                      "L": cfg.L, "c1": cfg.c1, "c2": cfg.c2,
                      "out": str(sub)}
        if "m" in spec:
            sub_params["m"] = spec["m"]
            sub_params["omega"] = spec["omega"]
        cmd_sample(sub_params)
    write_manifest(out, "figures", params)
    return 0


def cmd_rerun(params: dict) -> int:
    manifest = json.loads(Path(params["manifest"]).read_text())
    command = manifest["command"]
    if command == "rerun":
        raise ValueError("refusing to rerun a rerun manifest")
    return COMMANDS[command](manifest["parameters"])


COMMANDS = {
    "sample": cmd_sample,
    "verify": cmd_verify,
    "propagate": cmd_propagate,
    "figures": cmd_figures,
    "rerun": cmd_rerun,
}


def _csv_list(text: str) -> list:
    return [item.strip() for item in text.split(",") if item.strip()]


def _add_well_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--L", type=float, default=1.0, help="static box length")
    p.add_argument("--c1", type=float, default=1.0, help="time-shift constant")
    p.add_argument("--c2", type=float, default=0.0, help="space-shift constant")


def _add_family_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", choices=("box", "pt", "confluent"), required=True)
    p.add_argument("--m", type=int, default=2, help="confluent seed index")
    p.add_argument("--omega", type=float, default=0.4, help="confluent constant")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="movingwell",
        description="moving-barrier quantum wells: closed forms, verification, propagation")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="sample states and potentials to CSV")
    _add_family_args(p)
    p.add_argument("--n", required=True,
                   help="comma list of state indices, 'eps' allowed for confluent")
    p.add_argument("--times", required=True, help="comma list of times")
    p.add_argument("--points", type=int, default=2001)
    _add_well_args(p)
    p.add_argument("--out", default=None)

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--all", action="store_true", help="run every report (default)")
    p.add_argument("--family", choices=("box", "pt", "confluent"), default=None)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--omega", type=float, default=0.4)
    p.add_argument("--negative-controls", action="store_true",
                   help="run only the negative controls")
    _add_well_args(p)
    p.add_argument("--out", default=None)

    p = sub.add_parser("propagate", help="Crank-Nicolson run against the closed form")
    _add_family_args(p)
    p.add_argument("--n", required=True,
                   help="initial state: index, 'eps', or 'a+b' superposition")
    p.add_argument("--from", dest="t_from", type=float, required=True)
    p.add_argument("--to", dest="t_to", type=float, required=True)
    p.add_argument("--nx", type=int, default=2000)
    p.add_argument("--dt", type=float, default=1e-4)
    p.add_argument("--initial-from", default=None,
                   help="CSV snapshot to use as the initial field")
    _add_well_args(p)
    p.add_argument("--out", default=None)

    p = sub.add_parser("figures", help="emit the five standard figure datasets")
    p.add_argument("--points", type=int, default=2001)
    _add_well_args(p)
    p.add_argument("--out", default=None)

    p = sub.add_parser("rerun", help="repeat a command from its manifest")
    p.add_argument("manifest")

    return parser


def _params_from_args(args: argparse.Namespace) -> dict:
    params = {k: v for k, v in vars(args).items() if k != "command" and v is not None}
    if args.command == "sample":
        params["states"] = _csv_list(params.pop("n"))
        params["times"] = [float(t) for t in _csv_list(params.pop("times"))]
    if args.command == "verify":
        params.pop("all", None)
    return params


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    params = _params_from_args(args)
    try:
        return COMMANDS[args.command](params)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (MovingWellError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
